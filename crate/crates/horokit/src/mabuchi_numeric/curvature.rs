//! Monge–Ampère density and scalar curvature of a toric potential, written
//! in the Legendre-dual variable `p = -2m`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::potential::{checked_hessian, legendre_from, Convex};
use super::quadrature::{integrate_many, simplex_volume, QuadratureSpec};
use super::Geometry;
use crate::error::{HoroError, Result};

/// Finite-difference settings for the derivatives of `u*^{,ij}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSettings {
    /// Coarse step of the central differences; halved once for Richardson
    /// extrapolation and capped at a quarter of the distance to the boundary.
    pub step: f64,
    /// Points closer than this to the boundary of `-2 Delta^t` are rejected.
    pub margin: f64,
}

impl Default for CurvatureSettings {
    fn default() -> Self {
        CurvatureSettings { step: 2e-3, margin: 1e-9 }
    }
}

/// Scalar curvature at one point together with its five contributions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub m: Vec<f64>,
    pub a: Vec<f64>,
    pub value: f64,
    pub density: f64,
    pub terms: [f64; 5],
}

/// `MA(u)` density with respect to `da`: `n!/2^{2r+|Phi_{Q^u}|} · det(u_ij) / J_H(a)
/// · Π_{Q^u}(2chi - du)(alpha^vee) · Π_{Phi_s^+} |du(beta^vee)|`.
pub fn ma_density<C: Convex + ?Sized>(u: &C, geom: &Geometry, a: &DVector<f64>) -> Result<f64> {
    let h = checked_hessian(u, a)?;
    let p = u.gradient(a)?;
    let fact: f64 = (1..=geom.dimension).map(|k| k as f64).product();
    let exponent = 2 * geom.rank + geom.qu.len();
    let mut v = fact / 2f64.powi(exponent as i32) * h.determinant() / geom.j_h(a);
    for q in &geom.qu {
        v *= q.f(&p);
    }
    for b in &geom.s_plus {
        v *= p.dot(&b.coroot_point).abs();
    }
    Ok(v)
}

struct Stencil<'a, C: Convex + ?Sized> {
    u: &'a C,
    p: DVector<f64>,
    start: DVector<f64>,
    half: f64,
    memo: BTreeMap<Vec<i32>, DMatrix<f64>>,
}

impl<C: Convex + ?Sized> Stencil<'_, C> {
    /// `u*^{,ij}` at `p + half · offset`.
    fn g(&mut self, offset: Vec<i32>) -> Result<DMatrix<f64>> {
        if let Some(g) = self.memo.get(&offset) {
            return Ok(g.clone());
        }
        let shift = DVector::from_iterator(offset.len(), offset.iter().map(|&k| k as f64 * self.half));
        let lp = legendre_from(self.u, &(&self.p + shift), &self.start)?;
        let g = checked_hessian(self.u, &lp.argmax)?;
        self.memo.insert(offset, g.clone());
        Ok(g)
    }

    fn unit(&self, i: usize, s: i32) -> Vec<i32> {
        let mut o = vec![0; self.p.len()];
        o[i] = s;
        o
    }

    fn pair(&self, i: usize, si: i32, j: usize, sj: i32) -> Vec<i32> {
        let mut o = vec![0; self.p.len()];
        o[i] += si;
        o[j] += sj;
        o
    }

    /// Central first derivative `d_k G` at step `s · half`.
    fn first(&mut self, k: usize, s: i32) -> Result<DMatrix<f64>> {
        let plus = self.g(self.unit(k, s))?;
        let minus = self.g(self.unit(k, -s))?;
        Ok((plus - minus) / (2.0 * s as f64 * self.half))
    }

    /// Central second derivative `d_k d_l G` at step `s · half`.
    fn second(&mut self, k: usize, l: usize, s: i32) -> Result<DMatrix<f64>> {
        let h = s as f64 * self.half;
        if k == l {
            let plus = self.g(self.unit(k, s))?;
            let minus = self.g(self.unit(k, -s))?;
            let centre = self.g(vec![0; self.p.len()])?;
            return Ok((plus + minus - centre * 2.0) / (h * h));
        }
        let pp = self.g(self.pair(k, s, l, s))?;
        let pm = self.g(self.pair(k, s, l, -s))?;
        let mp = self.g(self.pair(k, -s, l, s))?;
        let mm = self.g(self.pair(k, -s, l, -s))?;
        Ok((pp - pm - mp + mm) / (4.0 * h * h))
    }
}

fn richardson(fine: DMatrix<f64>, coarse: DMatrix<f64>) -> DMatrix<f64> {
    (fine * 4.0 - coarse) / 3.0
}

/// Scalar curvature of the metric with toric potential `u` at the moment
/// coordinate `m` of an interior point of `Delta`.
pub fn scalar_curvature<C: Convex + ?Sized>(
    u: &C,
    geom: &Geometry,
    m: &DVector<f64>,
    settings: &CurvatureSettings,
) -> Result<CurvatureSample> {
    let r = geom.rank;
    let p = geom.covector(m);
    let dist = geom.image_margin(&p);
    if !(dist > settings.margin) {
        return Err(HoroError::Numeric(format!("point {:?} is not interior", m.as_slice())));
    }
    let centre = legendre_from(u, &p, &DVector::zeros(r))?;
    let a = centre.argmax.clone();
    let step = settings.step.min(dist / 4.0);
    let mut st = Stencil { u, p: p.clone(), start: a.clone(), half: step / 2.0, memo: BTreeMap::new() };
    let g = st.g(vec![0; r])?;
    let g_inv = g
        .clone()
        .try_inverse()
        .ok_or_else(|| HoroError::Numeric("singular Hessian of the potential".into()))?;

    let mut d_g = Vec::with_capacity(r);
    for k in 0..r {
        let fine = st.first(k, 1)?;
        let coarse = st.first(k, 2)?;
        d_g.push(richardson(fine, coarse));
    }
    let div = DVector::from_fn(r, |i, _| (0..r).map(|j| d_g[j][(i, j)]).sum::<f64>());
    let mut t1 = 0.0;
    for i in 0..r {
        for j in i..r {
            let fine = st.second(i, j, 1)?;
            let coarse = st.second(i, j, 2)?;
            let dd = richardson(fine, coarse)[(i, j)];
            t1 -= if i == j { dd } else { 2.0 * dd };
        }
    }

    let (_, grad_ih, hess_ih) = geom.i_h(&a)?;
    let mut dvec = DVector::zeros(r);
    let mut sq = DMatrix::zeros(r, r);
    for root in geom.all_roots() {
        let f = root.f(&p);
        if !(f > 0.0) {
            return Err(HoroError::Numeric(format!("density factor vanishes at {:?}", m.as_slice())));
        }
        dvec -= &root.coroot_point / f;
        sq += (&root.coroot_point * root.coroot_point.transpose()) / (f * f);
    }
    let d2 = &dvec * dvec.transpose() - sq;
    let t2 = (-2.0 * &div + &grad_ih).dot(&dvec);
    let t3 = g_inv.component_mul(&hess_ih).sum();
    let t4 = -g.component_mul(&d2).sum();
    let t5: f64 = geom.qu.iter().map(|q| 2.0 * q.chi_ac / q.f(&p)).sum();
    let terms = [t1, t2, t3, t4, t5];
    Ok(CurvatureSample {
        m: m.iter().copied().collect(),
        a: a.iter().copied().collect(),
        value: terms.iter().sum(),
        density: geom.density(m),
        terms,
    })
}

/// Outcome of the check `∫ S P_DH = S̄ ∫ P_DH`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureAverage {
    pub integral_s: f64,
    pub integral_p: f64,
    pub average: f64,
    pub s_bar: f64,
    pub relative_error: f64,
}

pub fn curvature_average<C: Convex + ?Sized>(
    u: &C,
    geom: &Geometry,
    spec: &QuadratureSpec,
    settings: &CurvatureSettings,
) -> Result<CurvatureAverage> {
    spec.validate()?;
    // S·P_DH is smooth up to the boundary, so nodes are not graded toward it
    let spec = QuadratureSpec { grading: 1, ..spec.clone() };
    let v = integrate_many(&geom.delta, &spec, 2, |m| {
        let s = scalar_curvature(u, geom, m, settings)?;
        Ok(vec![s.value * s.density, s.density])
    })?;
    let average = v[0] / v[1];
    Ok(CurvatureAverage {
        integral_s: v[0],
        integral_p: v[1],
        average,
        s_bar: geom.s_bar,
        relative_error: (average - geom.s_bar).abs() / geom.s_bar.abs().max(1.0),
    })
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut x = 0.0;
    while i > 0 {
        f /= base as f64;
        x += f * (i % base) as f64;
        i /= base;
    }
    x
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Deterministic low-discrepancy points in the interior of `Delta`, pulled
/// toward the centroid of their simplex by a factor `0.8`.
pub fn interior_samples(geom: &Geometry, count: usize) -> Vec<DVector<f64>> {
    let vols: Vec<f64> = geom.delta.iter().map(simplex_volume).collect();
    let total: f64 = vols.iter().sum();
    let r = geom.rank;
    (1..=count as u64)
        .map(|i| {
            let mut t = radical_inverse(i, PRIMES[0]) * total;
            let mut k = 0;
            while k + 1 < vols.len() && t > vols[k] {
                t -= vols[k];
                k += 1;
            }
            let s = &geom.delta[k];
            let mut cuts: Vec<f64> = (0..r).map(|j| radical_inverse(i, PRIMES[(j + 1) % PRIMES.len()])).collect();
            cuts.sort_by(f64::total_cmp);
            cuts.insert(0, 0.0);
            cuts.push(1.0);
            let centroid = s.iter().fold(DVector::zeros(r), |acc, v| acc + v) / s.len() as f64;
            let x = s.iter().enumerate().fold(DVector::zeros(r), |acc, (j, v)| acc + v * (cuts[j + 1] - cuts[j]));
            &centroid + (x - &centroid) * 0.8
        })
        .collect()
}

/// CSV table with columns `m_1..m_r, a_1..a_r, S, P_DH`.
pub fn samples_csv(samples: &[CurvatureSample]) -> Result<String> {
    let r = samples.first().map_or(0, |s| s.m.len());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=r).map(|i| format!("m_{i}")).collect();
    header.extend((1..=r).map(|i| format!("a_{i}")));
    header.push("scalar_curvature".into());
    header.push("dh_density".into());
    let csv_err = |e: csv::Error| HoroError::Numeric(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for s in samples {
        let mut row: Vec<String> = s.m.iter().chain(&s.a).map(|x| format!("{x:.12e}")).collect();
        row.push(format!("{:.12e}", s.value));
        row.push(format!("{:.12e}", s.density));
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| HoroError::Numeric(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| HoroError::Numeric(e.to_string()))
}
