//! Tensor Gauss–Legendre rules on simplices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HoroError, Result};

/// Quadrature settings shared by every integral of the numeric module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Gauss–Legendre points per collapsed coordinate.
    pub order: usize,
    /// Relative inset of sample points away from region boundaries.
    pub epsilon: f64,
    /// Longest-edge bisection rounds applied to every simplex.
    pub refinement: usize,
    /// Accepted relative change between consecutive refinement levels.
    pub tolerance: f64,
    /// Exponent `k` of the endpoint grading `s^k / (s^k + (1-s)^k)` applied
    /// to every collapsed coordinate; `1` leaves the nodes unchanged.
    #[serde(default = "default_grading")]
    pub grading: u32,
}

fn default_grading() -> u32 {
    3
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { order: 8, epsilon: 1e-9, refinement: 2, tolerance: 1e-4, grading: default_grading() }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.order < 2 {
            return Err(HoroError::Config { field: "numeric.order".into(), message: "order must be at least 2".into() });
        }
        if !(self.epsilon > 0.0) {
            return Err(HoroError::Config { field: "numeric.epsilon".into(), message: "epsilon must be positive".into() });
        }
        if self.grading == 0 {
            return Err(HoroError::Config { field: "numeric.grading".into(), message: "grading must be at least 1".into() });
        }
        if !(self.tolerance > 0.0) {
            return Err(HoroError::Config {
                field: "numeric.tolerance".into(),
                message: "tolerance must be positive".into(),
            });
        }
        Ok(())
    }

    /// The same rule with one more bisection round.
    pub fn refined(&self) -> Self {
        QuadratureSpec { refinement: self.refinement + 1, ..self.clone() }
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`, from the eigen-decomposition
/// of the Jacobi matrix.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let kf = k as f64;
        let b = kf / (4.0 * kf * kf - 1.0).sqrt();
        jacobi[(k, k - 1)] = b;
        jacobi[(k - 1, k)] = b;
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            ((eig.eigenvalues[i] + 1.0) / 2.0, v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Gauss–Legendre rule on `[0, 1]` composed with the polynomial grading map
/// `s ↦ I_s(k, k)` (regularized incomplete beta), whose derivative is
/// proportional to `s^{k-1}(1-s)^{k-1}`. It clusters nodes at both endpoints.
pub fn graded_rule(n: usize, k: u32) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    if k <= 1 {
        return (x, w);
    }
    let k = k as usize;
    let binom = |n: usize, j: usize| -> f64 { (0..j).map(|i| (n - i) as f64 / (i + 1) as f64).product() };
    let top = 2 * k - 1;
    let beta_inv = k as f64 * binom(top, k);
    x.iter()
        .zip(&w)
        .map(|(&s, &wi)| {
            let phi: f64 = (k..=top).map(|j| binom(top, j) * s.powi(j as i32) * (1.0 - s).powi((top - j) as i32)).sum();
            let dphi = beta_inv * (s * (1.0 - s)).powi(k as i32 - 1);
            (phi, wi * dphi)
        })
        .unzip()
}

/// A simplex given by its `r + 1` vertices in `R^r`.
pub type Simplex = Vec<DVector<f64>>;

pub fn simplex_volume(s: &Simplex) -> f64 {
    let r = s.len() - 1;
    if r == 0 {
        return 1.0;
    }
    let m = DMatrix::from_fn(r, r, |i, j| s[j + 1][i] - s[0][i]);
    let fact: f64 = (1..=r).map(|k| k as f64).product();
    m.determinant().abs() / fact
}

/// Collapsed-coordinate tensor rule built from a one-dimensional rule on
/// `[0, 1]`; the weights sum to the volume of the simplex.
pub fn simplex_rule(s: &Simplex, nodes: &[f64], weights: &[f64]) -> Vec<(DVector<f64>, f64)> {
    let r = s.len() - 1;
    if r == 0 {
        return vec![(s[0].clone(), 1.0)];
    }
    let order = nodes.len();
    let scale = simplex_volume(s) * (1..=r).map(|k| k as f64).product::<f64>();
    let mut out = Vec::with_capacity(order.pow(r as u32));
    let mut idx = vec![0usize; r];
    loop {
        let mut rest = 1.0;
        let mut jac = 1.0;
        let mut w = scale;
        let mut x = DVector::<f64>::zeros(s[0].len());
        let mut lambda0 = 1.0;
        for (i, &k) in idx.iter().enumerate() {
            let t = nodes[k];
            let li = rest * t;
            x += (&s[i + 1]) * li;
            lambda0 -= li;
            jac *= rest;
            rest *= 1.0 - t;
            w *= weights[k];
        }
        x += (&s[0]) * lambda0;
        out.push((x, w * jac));
        let mut d = r;
        loop {
            if d == 0 {
                return out;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < order {
                break;
            }
            idx[d] = 0;
        }
    }
}

/// Splits a simplex along its longest edge.
pub fn bisect(s: &Simplex) -> (Simplex, Simplex) {
    let n = s.len();
    let mut best = (0, 1, -1.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = (&s[i] - &s[j]).norm_squared();
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let mid = (&s[best.0] + &s[best.1]) * 0.5;
    let mut a = s.clone();
    let mut b = s.clone();
    a[best.1] = mid.clone();
    b[best.0] = mid;
    (a, b)
}

pub fn refine(simplices: &[Simplex], rounds: usize) -> Vec<Simplex> {
    let mut cur = simplices.to_vec();
    for _ in 0..rounds {
        cur = cur.iter().flat_map(|s| {
            let (a, b) = bisect(s);
            [a, b]
        }).collect();
    }
    cur
}

/// Shrinks every node toward the simplex centroid by the relative inset.
fn inset(s: &Simplex, eps: f64) -> Simplex {
    let c = s.iter().fold(DVector::zeros(s[0].len()), |acc, v| acc + v) / s.len() as f64;
    s.iter().map(|v| &c + (v - &c) * (1.0 - eps)).collect()
}

/// Nodes and weights over a union of simplices, in a fixed order.
pub fn rule(simplices: &[Simplex], spec: &QuadratureSpec) -> Vec<(DVector<f64>, f64)> {
    let (nodes, weights) = graded_rule(spec.order, spec.grading);
    refine(simplices, spec.refinement)
        .iter()
        .flat_map(|s| {
            let shrunk = inset(s, spec.epsilon);
            let ratio = simplex_volume(s) / simplex_volume(&shrunk).max(f64::MIN_POSITIVE);
            simplex_rule(&shrunk, &nodes, &weights).into_iter().map(move |(x, w)| (x, w * ratio))
        })
        .collect()
}

/// Integrates `f` over the union of simplices. Evaluations run in parallel
/// and are summed sequentially, so the result does not depend on the thread
/// count.
pub fn integrate<F>(simplices: &[Simplex], spec: &QuadratureSpec, f: F) -> Result<f64>
where
    F: Fn(&DVector<f64>) -> Result<f64> + Sync,
{
    let nodes = rule(simplices, spec);
    let values: Vec<f64> = nodes.par_iter().map(|(x, w)| f(x).map(|v| v * w)).collect::<Result<_>>()?;
    Ok(values.iter().sum())
}

/// Integrates several functions at once at the same nodes.
pub fn integrate_many<F>(simplices: &[Simplex], spec: &QuadratureSpec, k: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(&DVector<f64>) -> Result<Vec<f64>> + Sync,
{
    let nodes = rule(simplices, spec);
    let values: Vec<Vec<f64>> = nodes
        .par_iter()
        .map(|(x, w)| f(x).map(|v| v.into_iter().map(|y| y * w).collect()))
        .collect::<Result<_>>()?;
    let mut out = vec![0.0; k];
    for v in &values {
        for (o, y) in out.iter_mut().zip(v) {
            *o += y;
        }
    }
    Ok(out)
}

/// Relative change `|a - b| / max(|a|, |b|, floor)`.
pub fn relative_change(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}
