//! Exact integration of polynomials against products of affine forms over
//! rational polytopes: Duistermaat–Heckman integrals, degrees and moments.
//!
//! Each simplex of a triangulation is handled in barycentric coordinates:
//! every factor becomes a linear form in `λ_0, ..., λ_r`, the product is
//! expanded one factor at a time, and monomials are integrated with
//! `∫ λ^a = vol · r! ∏ a_i! / (r + |a|)!`.

use num::{Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

use crate::error::{HoroError, Result};
use crate::linebundle::PolarizedVariety;
use crate::linalg::mat_vec;
use crate::polytope::{simplex_volume, triangulate, RationalPolytope};
use crate::rational::{dot, factorial, Q, QVec};

/// Affine function `x -> coeffs · x + constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineForm {
    pub coeffs: QVec,
    pub constant: Q,
}

impl AffineForm {
    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.coeffs, x) + &self.constant
    }
}

/// Sparse polynomial with rational coefficients in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyForm {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl PolyForm {
    pub fn zero(nvars: usize) -> Self {
        PolyForm { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = PolyForm::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = PolyForm::zero(nvars);
        p.add_term(e, Q::from_integer(1.into()));
        p
    }

    pub fn affine(form: &AffineForm) -> Self {
        let n = form.coeffs.len();
        let mut p = PolyForm::constant(n, form.constant.clone());
        for (i, c) in form.coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, s: &Q) -> PolyForm {
        let mut p = PolyForm::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * s);
        }
        p
    }

    pub fn mul(&self, other: &PolyForm) -> PolyForm {
        let mut p = PolyForm::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (xi, &k) in x.iter().zip(e) {
                    for _ in 0..k {
                        v *= xi;
                    }
                }
                v
            })
            .sum()
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = crate::rational::to_f64(c);
                for (xi, &k) in x.iter().zip(e) {
                    v *= xi.powi(k as i32);
                }
                v
            })
            .sum()
    }
}

/// `∫` over a simplex of the monomial `x^exps` (exact).
pub fn integrate_monomial_simplex(simplex: &[QVec], exps: &[u32]) -> Q {
    let mut p = PolyForm::zero(exps.len());
    p.add_term(exps.to_vec(), Q::from_integer(1.into()));
    integrate_simplex(simplex, &p, &[])
}

/// `∫` over a full-dimensional simplex of `poly · ∏ forms`.
pub fn integrate_simplex(simplex: &[QVec], poly: &PolyForm, forms: &[AffineForm]) -> Q {
    let r = simplex.len() - 1;
    let nb = r + 1;
    // barycentric linear form of an affine function
    let bary = |f: &AffineForm| -> Vec<Q> { simplex.iter().map(|v| f.eval(v)).collect() };
    let mul_linear = |table: &BTreeMap<Vec<u32>, Q>, lin: &[Q]| -> BTreeMap<Vec<u32>, Q> {
        let mut out: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (e, c) in table {
            for (i, li) in lin.iter().enumerate() {
                if li.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] += 1;
                *out.entry(e2).or_insert_with(Q::zero) += c * li;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let mut prod: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    prod.insert(vec![0; nb], Q::from_integer(1.into()));
    for f in forms {
        prod = mul_linear(&prod, &bary(f));
    }
    // poly in barycentric coordinates, monomial by monomial
    let nv = poly.nvars;
    let coords: Vec<Vec<Q>> = (0..nv).map(|j| simplex.iter().map(|v| v[j].clone()).collect()).collect();
    let mut poly_bary: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    for (e, c) in &poly.terms {
        let mut t: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        t.insert(vec![0; nb], c.clone());
        for (j, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = mul_linear(&t, &coords[j]);
            }
        }
        for (e2, c2) in t {
            *poly_bary.entry(e2).or_insert_with(Q::zero) += c2;
        }
    }
    let vol = simplex_volume(simplex);
    let rf = factorial(r);
    let mut total = Q::zero();
    for (e1, c1) in &poly_bary {
        if c1.is_zero() {
            continue;
        }
        for (e2, c2) in &prod {
            let mut num = num::BigInt::from(1);
            let mut deg = 0usize;
            for (a, b) in e1.iter().zip(e2) {
                let k = (a + b) as usize;
                num *= factorial(k);
                deg += k;
            }
            total += c1 * c2 * Q::new(num * &rf, factorial(r + deg));
        }
    }
    total * vol
}

/// `∫_region poly · ∏ forms` for the Lebesgue measure of the ambient
/// coordinates (zero on lower-dimensional regions).
pub fn integrate_product(region: &RationalPolytope, poly: &PolyForm, forms: &[AffineForm]) -> Q {
    if !region.is_full_dimensional() || poly.is_zero() {
        return Q::zero();
    }
    triangulate(region).par_iter().map(|s| integrate_simplex(s, poly, forms)).reduce(Q::zero, |a, b| a + b)
}

/// Duistermaat–Heckman density `P_DH(q) = ∏ <alpha, q>/<alpha, rho>` pulled
/// back to covector coordinates `m` through `q = chi + E(m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DHMeasure {
    /// Roots `Phi_{Q^u} ∪ Phi_s^+` in this order.
    pub roots: Vec<QVec>,
    /// `<alpha, rho>` per root.
    pub rho_pairings: Vec<Q>,
    pub forms: Vec<AffineForm>,
    /// Covolume of `M`; integrals are divided by it.
    pub covolume: Q,
}

impl DHMeasure {
    pub fn new(pv: &PolarizedVariety) -> Self {
        let d = &pv.datum;
        let roots = d.density_roots();
        let rho_pairings: Vec<Q> = roots.iter().map(|a| dot(a, &d.rho)).collect();
        let forms = roots
            .iter()
            .zip(&rho_pairings)
            .map(|(a, rp)| {
                let coeffs = mat_vec(&d.gram_inv, &d.pi(a)).into_iter().map(|c| c / rp).collect();
                AffineForm { coeffs, constant: dot(a, &pv.chi) / rp }
            })
            .collect();
        DHMeasure { roots, rho_pairings, forms, covolume: d.lattice_covolume.clone() }
    }

    pub fn nvars(&self) -> usize {
        match self.forms.first() {
            Some(f) => f.coeffs.len(),
            None => 0,
        }
    }

    pub fn density(&self, m: &[Q]) -> Q {
        self.forms.iter().map(|f| f.eval(m)).product()
    }

    pub fn density_f64(&self, m: &[f64]) -> f64 {
        self.forms
            .iter()
            .map(|f| {
                f.coeffs.iter().zip(m).map(|(c, x)| crate::rational::to_f64(c) * x).sum::<f64>()
                    + crate::rational::to_f64(&f.constant)
            })
            .product()
    }

    /// Rejects regions where some density factor is negative.
    pub fn check_region(&self, region: &RationalPolytope) -> Result<()> {
        for (i, f) in self.forms.iter().enumerate() {
            if region.vertices.iter().any(|v| f.eval(v).is_negative()) {
                return Err(HoroError::NegativeDensity { form: i });
            }
        }
        Ok(())
    }

    /// `∫_region poly · P_DH dm / covol(M)`.
    pub fn integrate(&self, region: &RationalPolytope, poly: &PolyForm) -> Result<Q> {
        self.check_region(region)?;
        Ok(integrate_product(region, poly, &self.forms) / &self.covolume)
    }

    /// `∫_region poly · d_q P_DH(v) dm / covol(M)` for an ambient covector `v`,
    /// as a sum of products with one factor removed.
    pub fn integrate_gradient(&self, region: &RationalPolytope, poly: &PolyForm, v: &[Q]) -> Result<Q> {
        self.check_region(region)?;
        let mut total = Q::zero();
        for (i, (a, rp)) in self.roots.iter().zip(&self.rho_pairings).enumerate() {
            let c = dot(a, v) / rp;
            if c.is_zero() {
                continue;
            }
            let others: Vec<AffineForm> =
                self.forms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect();
            total += c * integrate_product(region, poly, &others);
        }
        Ok(total / &self.covolume)
    }

    /// `∫_region poly · ∏_{β ≠ i} ℓ_β dm / covol(M)`.
    pub fn integrate_without(&self, region: &RationalPolytope, poly: &PolyForm, i: usize) -> Q {
        let others: Vec<AffineForm> =
            self.forms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect();
        integrate_product(region, poly, &others) / &self.covolume
    }
}

/// `∫_region poly dm / covol(M)` without density (the density is part of `poly`).
pub fn integrate_plain(region: &RationalPolytope, poly: &PolyForm, covolume: &Q) -> Q {
    integrate_product(region, poly, &[]) / covolume
}

/// First moments `Σ_pieces ∫ m_j · piece dm / covol` for each coordinate `j`.
pub fn barycenter_numerator(subregions: &[RationalPolytope], pieces: &[PolyForm], covolume: &Q) -> QVec {
    let r = subregions.first().map(|s| s.dim).unwrap_or(0);
    (0..r)
        .map(|j| {
            subregions
                .iter()
                .zip(pieces)
                .map(|(reg, p)| integrate_plain(reg, &p.mul(&PolyForm::var(r, j)), covolume))
                .sum()
        })
        .collect()
}

/// Degree `L^n = n! ∫_Delta P_DH dm / covol(M)`.
pub fn degree(pv: &PolarizedVariety) -> Result<Q> {
    let delta = pv.special_polytope()?;
    let mu = DHMeasure::new(pv);
    let vol = mu.integrate(&delta, &PolyForm::constant(pv.datum.rank(), Q::from_integer(1.into())))?;
    Ok(vol * Q::from_integer(factorial(pv.dimension())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::from_points;
    use crate::rational::{q, qr, qvec};

    #[test]
    fn monomials_on_simplices() {
        let tri = vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])];
        assert_eq!(integrate_monomial_simplex(&tri, &[0, 0]), qr(1, 2));
        assert_eq!(integrate_monomial_simplex(&tri, &[1, 1]), qr(1, 24));
        let seg = vec![qvec(&[0]), qvec(&[1])];
        assert_eq!(integrate_monomial_simplex(&seg, &[2]), qr(1, 3));
    }

    #[test]
    fn product_of_forms() {
        // ∫_0^1 2t dt = 1 and ∫_0^1 2t · t dt = 2/3
        let seg = from_points(&[qvec(&[0]), qvec(&[1])], 1).unwrap();
        let f = AffineForm { coeffs: qvec(&[2]), constant: q(0) };
        let one = PolyForm::constant(1, q(1));
        assert_eq!(integrate_product(&seg, &one, &[f.clone()]), q(1));
        assert_eq!(barycenter_numerator(&[seg.clone()], &[PolyForm::affine(&f)], &q(1)), vec![qr(2, 3)]);
        assert_eq!(integrate_product(&seg, &PolyForm::zero(1), &[f]), q(0));
    }

    #[test]
    fn square_moments() {
        let sq = from_points(&[qvec(&[0, 0]), qvec(&[2, 0]), qvec(&[0, 2]), qvec(&[2, 2])], 2).unwrap();
        let x = PolyForm::var(2, 0);
        let y = PolyForm::var(2, 1);
        // ∫∫ x y^2 over [0,2]^2 = 2 · 8/3
        assert_eq!(integrate_product(&sq, &x.mul(&y).mul(&y), &[]), qr(16, 3));
        let l = AffineForm { coeffs: qvec(&[1, -1]), constant: q(3) };
        // ∫∫ (x - y + 3)(x + 1) = ∫∫ x^2 - xy + 4x + 3 - y ... checked by expansion
        let p = PolyForm::affine(&AffineForm { coeffs: qvec(&[1, 0]), constant: q(1) });
        let expanded = p.mul(&PolyForm::affine(&l));
        assert_eq!(integrate_product(&sq, &p, &[l]), integrate_product(&sq, &expanded, &[]));
    }

    fn p1xp1(k: i64, m: i64) -> PolarizedVariety {
        use crate::restricted::derive;
        use crate::rootdata::{build_involution, build_root_system, full_parabolic, InvolutionKind, Series};
        let sys = build_root_system(Series::A, 1).unwrap();
        let s = build_involution(InvolutionKind::AIII { r: 1, m: 2 }, &sys).unwrap();
        let d = derive(&sys, &full_parabolic(&sys), &s, None).unwrap();
        PolarizedVariety::new(d, vec![vec![qr(-1, 2)]], vec![qr(k + m, 2)])
            .unwrap()
            .with_color_constant("D1+", qr(k - m, 2))
            .unwrap()
            .with_color_constant("D1-", qr(m - k, 2))
            .unwrap()
    }

    #[test]
    fn degrees() {
        for k in 1..=3 {
            for m in 1..=3 {
                assert_eq!(degree(&p1xp1(k, m)).unwrap(), q(2 * k * m));
            }
        }
        use crate::linebundle::PolarizedVariety as PV;
        use crate::restricted::derive;
        use crate::rootdata::{build_involution, build_parabolic, build_root_system, InvolutionKind, Series};
        let t = build_root_system(Series::T, 2).unwrap();
        let h = build_involution(InvolutionKind::Horospherical { levi: vec![] }, &t).unwrap();
        let d = derive(&t, &build_parabolic(&t, &[]).unwrap(), &h, None).unwrap();
        let p2 = PV::anticanonical(d, vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])], vec![q(0); 3]).unwrap();
        assert_eq!(degree(&p2).unwrap(), q(9));
        let a1 = build_root_system(Series::A, 1).unwrap();
        let h = build_involution(InvolutionKind::Horospherical { levi: vec![] }, &a1).unwrap();
        let d = derive(&a1, &build_parabolic(&a1, &[]).unwrap(), &h, None).unwrap();
        let f1 = PV::anticanonical(d, vec![qvec(&[1]), qvec(&[-1])], vec![q(0); 2]).unwrap();
        assert_eq!(f1.special_polytope().unwrap().vertices, vec![qvec(&[1]), qvec(&[3])]);
        assert_eq!(degree(&f1).unwrap(), q(8));
    }
}
