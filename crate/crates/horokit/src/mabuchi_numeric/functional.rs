//! Mabuchi and J functionals of toric potentials, and the normalization
//! `û(a) = u(a + b) - u(b)` with `b` central and `du(b) = -2 lambda_0`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::potential::{checked_hessian, legendre, Convex, ToricPotential};
use super::quadrature::{integrate, integrate_many, relative_change, QuadratureSpec, Simplex};
use super::Geometry;
use crate::error::{HoroError, Result};

/// Mabuchi functional split into its linear and nonlinear parts, evaluated at
/// two consecutive refinement levels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MabuchiReport {
    pub linear: f64,
    pub nonlinear: f64,
    pub total: f64,
    /// Total at the coarser level.
    pub coarse_total: f64,
    pub relative_change: f64,
    /// Assumption (R), reported but not required.
    pub wall_multiplicity: bool,
}

struct Dual {
    value: f64,
    a: DVector<f64>,
}

fn dual<C: Convex + ?Sized>(u: &C, geom: &Geometry, m: &DVector<f64>) -> Result<(Dual, DVector<f64>)> {
    let p = geom.covector(m);
    let lp = legendre(u, &p)?;
    Ok((Dual { value: lp.value, a: lp.argmax }, p))
}

fn linear_piece<C: Convex + ?Sized>(u: &C, geom: &Geometry, simplices: &[Simplex], spec: &QuadratureSpec) -> Result<f64> {
    let n = geom.dimension as f64;
    integrate(simplices, spec, |m| {
        let (d, p) = dual(u, geom, m)?;
        let ratio: f64 = geom.all_roots().map(|r| r.chi / r.q(m)).sum();
        Ok((n * d.value - d.value * ratio + d.a.dot(&p)) * geom.density(m))
    })
}

fn level<C: Convex + ?Sized>(u: &C, geom: &Geometry, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let mut linear = 0.0;
    for (y, simplices) in &geom.pieces {
        let lambda = geom.lambda_y[*y];
        if lambda != 0.0 {
            linear += lambda * linear_piece(u, geom, simplices, spec)?;
        }
    }
    let v = integrate_many(&geom.delta, spec, 2, |m| {
        let (d, _) = dual(u, geom, m)?;
        let dens = geom.density(m);
        let ratio: f64 = geom.all_roots().map(|r| r.chi_ac / r.q(m)).sum();
        let four_rho = geom.four_rho_h(&d.a);
        let (i_h, _, _) = geom.i_h(&d.a)?;
        let logdet = checked_hessian(u, &d.a)?.determinant().ln();
        Ok(vec![
            (d.value * (ratio - geom.s_bar) + four_rho) * dens,
            (logdet - i_h - four_rho) * dens,
        ])
    })?;
    Ok((linear + v[0], v[1]))
}

/// Mabuchi functional of `u`, normalized as `L^n/n!` times the functional.
/// Requires assumption (T) and convergence between two refinement levels.
pub fn mabuchi<C: Convex + ?Sized>(u: &C, geom: &Geometry, spec: &QuadratureSpec) -> Result<MabuchiReport> {
    spec.validate()?;
    if !geom.toroidal {
        return Err(HoroError::Assumption("the Mabuchi formula requires assumption (T)".into()));
    }
    let (cl, cn) = level(u, geom, spec)?;
    let (linear, nonlinear) = level(u, geom, &spec.refined())?;
    let total = linear + nonlinear;
    let coarse_total = cl + cn;
    let scale = linear.abs() + nonlinear.abs();
    let change = relative_change(total, coarse_total, scale.max(1.0));
    if change > spec.tolerance {
        return Err(HoroError::Numeric(format!(
            "quadrature did not converge: relative change {change:.3e} exceeds {:.1e}",
            spec.tolerance
        )));
    }
    Ok(MabuchiReport { linear, nonlinear, total, coarse_total, relative_change: change, wall_multiplicity: geom.wall_multiplicity })
}

/// `M(u) - M(reference)`, the quantity fixed independently of the additive
/// constant of the functional.
pub fn mabuchi_relative<C, D>(u: &C, reference: &D, geom: &Geometry, spec: &QuadratureSpec) -> Result<f64>
where
    C: Convex + ?Sized,
    D: Convex + ?Sized,
{
    Ok(mabuchi(u, geom, spec)?.total - mabuchi(reference, geom, spec)?.total)
}

/// `J(u) = u(0) + ∫ u*(-2m) P_DH / ∫ P_DH`.
pub fn j_functional<C: Convex + ?Sized>(u: &C, geom: &Geometry, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    let v = integrate_many(&geom.delta, spec, 2, |m| {
        let (d, _) = dual(u, geom, m)?;
        let dens = geom.density(m);
        Ok(vec![d.value * dens, dens])
    })?;
    Ok(u.value(&DVector::zeros(geom.rank))? + v[0] / v[1])
}

/// Translates `u` along the centre of `a_s` so that `du(b) = -2 lambda_0`,
/// then subtracts `u(b)`.
pub fn normalize(u: &ToricPotential, geom: &Geometry) -> Result<ToricPotential> {
    let r = geom.rank;
    let target = &geom.lambda0 * -2.0;
    let k = geom.central.len();
    let z = DMatrix::from_fn(r, k, |i, j| geom.central[j][i]);
    let mut b = DVector::zeros(r);
    for _ in 0..100 {
        let residual = u.gradient(&b)? - &target;
        let reduced = z.transpose() * &residual;
        if reduced.norm() < 1e-13 {
            break;
        }
        let h = z.transpose() * checked_hessian(u, &b)? * &z;
        let step = h
            .lu()
            .solve(&reduced)
            .ok_or_else(|| HoroError::Numeric("singular central Hessian".into()))?;
        b -= &z * step;
    }
    let residual = (u.gradient(&b)? - &target).norm();
    if residual > 1e-8 {
        return Err(HoroError::Numeric(format!(
            "normalization failed: |du(b) + 2 lambda_0| = {residual:.3e}; the potential is not Weyl-invariant"
        )));
    }
    u.translated(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::log_futaki;
    use crate::fixtures;
    use crate::mabuchi_numeric::smoothed_support;
    use crate::rational::{qr, to_f64};

    /// Converged value at order 16 with four bisection rounds.
    const FS_O22_TOTAL: f64 = 15.044669426;

    #[test]
    fn fubini_study_regression_value() {
        let g = Geometry::new(&fixtures::p1xp1_sl2(2, 2).unwrap()).unwrap();
        let u = ToricPotential::fubini_study_sl2(2.0, 1.0).unwrap();
        let rep = mabuchi(&u, &g, &QuadratureSpec::default()).unwrap();
        assert!((rep.total - FS_O22_TOTAL).abs() < 1e-6 * FS_O22_TOTAL, "{rep:?}");
        assert!(!rep.wall_multiplicity);
        assert!(mabuchi_relative(&u, &u, &g, &QuadratureSpec::default()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn the_constant_scalar_curvature_metric_minimizes() {
        let pv = fixtures::p1xp1_sl2(2, 2).unwrap();
        let g = Geometry::new(&pv).unwrap();
        let spec = QuadratureSpec::default();
        let fs = ToricPotential::fubini_study_sl2(2.0, 1.0).unwrap();
        for other in [
            ToricPotential::fubini_study_sl2(2.0, 3.0).unwrap(),
            ToricPotential::fubini_study_sl2(2.0, 0.2).unwrap(),
            smoothed_support(&pv, 1).unwrap(),
        ] {
            assert!(mabuchi_relative(&other, &fs, &g, &spec).unwrap() > 1e-4);
        }
    }

    #[test]
    fn central_translation_moves_the_functional_by_the_futaki_invariant() {
        let spec = QuadratureSpec::default();
        let pv = fixtures::f1_anticanonical().unwrap();
        let g = Geometry::new(&pv).unwrap();
        let u = smoothed_support(&pv, 1).unwrap();
        let base = mabuchi(&u, &g, &spec).unwrap().total;
        for (num, den) in [(1, 10), (-1, 5)] {
            let b = qr(num, den);
            let shifted = u.translated(&DVector::from_vec(vec![to_f64(&b)])).unwrap();
            let change = mabuchi(&shifted, &g, &spec).unwrap().total - base;
            let fut = to_f64(&log_futaki(&pv, &[b]).unwrap());
            assert!((change + fut).abs() < 1e-8, "{change} vs {fut}");
        }

        let pv = fixtures::toric_p2().unwrap();
        let g = Geometry::new(&pv).unwrap();
        let u = smoothed_support(&pv, 1).unwrap();
        let base = mabuchi(&u, &g, &spec).unwrap().total;
        let shifted = u.translated(&DVector::from_vec(vec![0.3, -0.2])).unwrap();
        assert!((mabuchi(&shifted, &g, &spec).unwrap().total - base).abs() < 1e-9);
    }

    #[test]
    fn normalization_is_idempotent() {
        for pv in [fixtures::f1_anticanonical().unwrap(), fixtures::toric_p2().unwrap()] {
            let g = Geometry::new(&pv).unwrap();
            let u = smoothed_support(&pv, 1).unwrap().translated(&DVector::from_element(g.rank, 0.4)).unwrap();
            let once = normalize(&u, &g).unwrap();
            let twice = normalize(&once, &g).unwrap();
            let target = &g.lambda0 * -2.0;
            assert!((once.gradient(&DVector::zeros(g.rank)).unwrap() - target).norm() < 1e-8);
            for x in [-0.3, 0.0, 0.5] {
                let a = DVector::from_element(g.rank, x);
                assert!((once.value(&a).unwrap() - twice.value(&a).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn j_ignores_constants_and_is_nonnegative() {
        let pv = fixtures::toric_p1xp1().unwrap();
        let g = Geometry::new(&pv).unwrap();
        let spec = QuadratureSpec::default();
        let u = smoothed_support(&pv, 1).unwrap();
        let j = j_functional(&u, &g, &spec).unwrap();
        let j_shifted = j_functional(&u.with_offset(u.offset - 2.5), &g, &spec).unwrap();
        assert!((j - j_shifted).abs() < 1e-9);
        assert!(j >= 0.0);
    }
}
