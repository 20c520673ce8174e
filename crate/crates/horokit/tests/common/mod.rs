//! Shared oracles for the integration tests.
#![allow(dead_code)]

use horokit::linebundle::PolarizedVariety;
use horokit::rational::{dot, to_f64, to_f64_vec, Q};
use num::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Factors `m -> <alpha, chi + m> / <alpha, rho>` of the density, built from
/// the ambient roots independently of the affine forms stored in [`DHMeasure`].
pub fn oracle_factors(pv: &PolarizedVariety) -> Vec<(Vec<f64>, f64)> {
    let d = &pv.datum;
    let r = d.rank();
    let basis: Vec<Vec<Q>> = (0..r)
        .map(|i| {
            let mut e = vec![Q::zero(); r];
            e[i] = Q::one();
            d.embed_covector(&e)
        })
        .collect();
    d.density_roots()
        .iter()
        .map(|a| {
            let rp = dot(a, &d.rho);
            let coeffs = basis.iter().map(|b| to_f64(&(dot(a, b) / &rp))).collect();
            (coeffs, to_f64(&(dot(a, &pv.chi) / &rp)))
        })
        .collect()
}

pub fn oracle_density(factors: &[(Vec<f64>, f64)], m: &[f64]) -> f64 {
    factors.iter().map(|(c, k)| c.iter().zip(m).map(|(x, y)| x * y).sum::<f64>() + k).product()
}

pub struct Estimate {
    pub mean: f64,
    pub standard_error: f64,
}

/// Hit-or-miss estimate of `∫_Delta g(m) P_DH(m) dm / covol` over the bounding box.
pub fn monte_carlo(pv: &PolarizedVariety, samples: usize, seed: u64, g: impl Fn(&[f64]) -> f64) -> Estimate {
    let delta = pv.special_polytope().unwrap();
    let r = delta.dim;
    let verts: Vec<Vec<f64>> = delta.vertices.iter().map(|v| to_f64_vec(v)).collect();
    let lo: Vec<f64> = (0..r).map(|i| verts.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..r).map(|i| verts.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let halfspaces: Vec<(Vec<f64>, f64)> =
        delta.halfspaces.iter().map(|h| (to_f64_vec(&h.normal), to_f64(&h.offset))).collect();
    let covolume = to_f64(&pv.datum.lattice_covolume);
    let factors = oracle_factors(pv);
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    let mut m = vec![0.0; r];
    for _ in 0..samples {
        for i in 0..r {
            m[i] = rng.gen_range(lo[i]..hi[i]);
        }
        let inside = halfspaces.iter().all(|(n, c)| n.iter().zip(&m).map(|(a, b)| a * b).sum::<f64>() <= *c);
        let y = if inside { g(&m) * oracle_density(&factors, &m) * box_volume / covolume } else { 0.0 };
        sum += y;
        sum_sq += y * y;
    }
    let n = samples as f64;
    let mean = sum / n;
    let variance = (sum_sq / n - mean * mean) * n / (n - 1.0);
    Estimate { mean, standard_error: (variance / n).sqrt() }
}

/// Whether an exact integral agrees with a Monte Carlo estimate of
/// `∫_Delta g P_DH / covol` within three standard errors.
pub fn within_three_se(pv: &PolarizedVariety, exact: f64, samples: usize, seed: u64, g: impl Fn(&[f64]) -> f64) -> Result<(), String> {
    let est = monte_carlo(pv, samples, seed, g);
    if (exact - est.mean).abs() <= 3.0 * est.standard_error {
        Ok(())
    } else {
        Err(format!("exact {exact}, estimate {} ± {}", est.mean, est.standard_error))
    }
}
