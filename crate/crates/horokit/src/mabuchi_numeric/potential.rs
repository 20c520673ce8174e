//! Convex toric potentials, their convex conjugates, and Newton-based
//! Legendre transforms.

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{HoroError, Result};

/// A smooth strictly convex function on `R^r` with closed-form derivatives.
pub trait Convex: Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &DVector<f64>) -> Result<f64>;
    fn gradient(&self, x: &DVector<f64>) -> Result<DVector<f64>>;
    fn hessian(&self, x: &DVector<f64>) -> Result<DMatrix<f64>>;
}

/// Closed-form families of toric potentials. A potential `u` lives on the
/// points of `a_s`; its gradient is a covector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PotentialKind {
    /// `u(a) = a^T Q a / 2 + <l, a>`.
    Quadratic { matrix: Vec<Vec<f64>>, linear: Vec<f64> },
    /// `u(a) = eps · ln Σ c_k exp(<w_k, a> / eps)`. The gradient image is the
    /// interior of the convex hull of the weights `w_k`.
    LogSumExp { weights: Vec<Vec<f64>>, coefficients: Vec<f64>, temperature: f64 },
}

/// `a ↦ kind(a + shift) - offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToricPotential {
    pub kind: PotentialKind,
    pub shift: Vec<f64>,
    pub offset: f64,
}

impl ToricPotential {
    pub fn new(kind: PotentialKind) -> Result<Self> {
        let dim = match &kind {
            PotentialKind::Quadratic { matrix, linear } => {
                if matrix.len() != linear.len() || matrix.iter().any(|row| row.len() != linear.len()) {
                    return Err(HoroError::Numeric("quadratic potential has inconsistent dimensions".into()));
                }
                let q = DMatrix::from_fn(linear.len(), linear.len(), |i, j| matrix[i][j]);
                if (&q - q.transpose()).amax() > 1e-12 || Cholesky::new(q).is_none() {
                    return Err(HoroError::Numeric("quadratic potential is not positive definite".into()));
                }
                linear.len()
            }
            PotentialKind::LogSumExp { weights, coefficients, temperature } => {
                if weights.is_empty() || weights.len() != coefficients.len() {
                    return Err(HoroError::Numeric("log-sum-exp needs one positive coefficient per weight".into()));
                }
                if coefficients.iter().any(|c| !(*c > 0.0)) || !(*temperature > 0.0) {
                    return Err(HoroError::Numeric("log-sum-exp coefficients and temperature must be positive".into()));
                }
                let d = weights[0].len();
                if weights.iter().any(|w| w.len() != d) {
                    return Err(HoroError::Numeric("log-sum-exp weights have different lengths".into()));
                }
                d
            }
        };
        Ok(ToricPotential { kind, shift: vec![0.0; dim], offset: 0.0 })
    }

    /// `u(a) = scale · a^T G a / 2`.
    pub fn quadratic(gram: &DMatrix<f64>, scale: f64) -> Result<Self> {
        let r = gram.nrows();
        ToricPotential::new(PotentialKind::Quadratic {
            matrix: (0..r).map(|i| (0..r).map(|j| scale * gram[(i, j)]).collect()).collect(),
            linear: vec![0.0; r],
        })
    }

    pub fn log_sum_exp(weights: Vec<Vec<f64>>, coefficients: Vec<f64>, temperature: f64) -> Result<Self> {
        ToricPotential::new(PotentialKind::LogSumExp { weights, coefficients, temperature })
    }

    /// Rank-one family `k · ln(e^{4t} + 2c + e^{-4t})` on the symmetric space
    /// `SL2/T`, polarized by `O(k, k)`. `c = 1` is the Fubini–Study metric.
    pub fn fubini_study_sl2(k: f64, c: f64) -> Result<Self> {
        let w = 4.0 * k;
        ToricPotential::log_sum_exp(vec![vec![w], vec![0.0], vec![-w]], vec![1.0, 2.0 * c, 1.0], k)
    }

    /// `a ↦ self(a + b) - self(b)`.
    pub fn translated(&self, b: &DVector<f64>) -> Result<Self> {
        let mut out = self.clone();
        out.offset = 0.0;
        let shift: Vec<f64> = self.shift.iter().zip(b.iter()).map(|(s, x)| s + x).collect();
        out.shift = shift;
        let base = self.base_value(&DVector::from_vec(out.shift.clone()))?;
        out.offset = base;
        Ok(out)
    }

    pub fn with_offset(&self, offset: f64) -> Self {
        ToricPotential { offset, ..self.clone() }
    }

    fn shifted(&self, x: &DVector<f64>) -> DVector<f64> {
        x + DVector::from_column_slice(&self.shift)
    }

    fn base_value(&self, y: &DVector<f64>) -> Result<f64> {
        match &self.kind {
            PotentialKind::Quadratic { matrix, linear } => {
                let q = DMatrix::from_fn(linear.len(), linear.len(), |i, j| matrix[i][j]);
                Ok(0.5 * y.dot(&(q * y)) + DVector::from_column_slice(linear).dot(y))
            }
            PotentialKind::LogSumExp { weights, coefficients, temperature } => {
                let s = lse_exponents(weights, coefficients, *temperature, y);
                let m = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                Ok(temperature * (m + s.iter().map(|v| (v - m).exp()).sum::<f64>().ln()))
            }
        }
    }

    /// Samples W-invariance `u(g a) = u(a)` for point matrices `g`; returns
    /// the largest deviation.
    pub fn invariance_defect(&self, group: &[DMatrix<f64>], samples: &[DVector<f64>]) -> Result<f64> {
        let mut worst = 0.0f64;
        for a in samples {
            let base = self.value(a)?;
            for g in group {
                let v = self.value(&(g * a))?;
                worst = worst.max((v - base).abs() / base.abs().max(1.0));
            }
        }
        Ok(worst)
    }
}

fn lse_exponents(weights: &[Vec<f64>], coefficients: &[f64], t: f64, y: &DVector<f64>) -> Vec<f64> {
    weights
        .iter()
        .zip(coefficients)
        .map(|(w, c)| c.ln() + w.iter().zip(y.iter()).map(|(a, b)| a * b).sum::<f64>() / t)
        .collect()
}

fn lse_probabilities(weights: &[Vec<f64>], coefficients: &[f64], t: f64, y: &DVector<f64>) -> Vec<f64> {
    let s = lse_exponents(weights, coefficients, t, y);
    let m = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = s.iter().map(|v| (v - m).exp()).collect();
    let z: f64 = e.iter().sum();
    e.into_iter().map(|v| v / z).collect()
}

impl Convex for ToricPotential {
    fn dim(&self) -> usize {
        self.shift.len()
    }

    fn value(&self, x: &DVector<f64>) -> Result<f64> {
        Ok(self.base_value(&self.shifted(x))? - self.offset)
    }

    fn gradient(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let y = self.shifted(x);
        Ok(match &self.kind {
            PotentialKind::Quadratic { matrix, linear } => {
                let q = DMatrix::from_fn(linear.len(), linear.len(), |i, j| matrix[i][j]);
                q * &y + DVector::from_column_slice(linear)
            }
            PotentialKind::LogSumExp { weights, coefficients, temperature } => {
                let p = lse_probabilities(weights, coefficients, *temperature, &y);
                let mut g = DVector::zeros(y.len());
                for (w, pk) in weights.iter().zip(&p) {
                    g += DVector::from_column_slice(w) * *pk;
                }
                g
            }
        })
    }

    fn hessian(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        let y = self.shifted(x);
        Ok(match &self.kind {
            PotentialKind::Quadratic { matrix, linear } => DMatrix::from_fn(linear.len(), linear.len(), |i, j| matrix[i][j]),
            PotentialKind::LogSumExp { weights, coefficients, temperature } => {
                let p = lse_probabilities(weights, coefficients, *temperature, &y);
                let mut g = DVector::zeros(y.len());
                for (w, pk) in weights.iter().zip(&p) {
                    g += DVector::from_column_slice(w) * *pk;
                }
                let mut h = DMatrix::zeros(y.len(), y.len());
                for (w, pk) in weights.iter().zip(&p) {
                    let d = DVector::from_column_slice(w) - &g;
                    h += (&d * d.transpose()) * *pk;
                }
                h / *temperature
            }
        })
    }
}

/// Hessian with a positive-definiteness check.
pub fn checked_hessian<C: Convex + ?Sized>(f: &C, x: &DVector<f64>) -> Result<DMatrix<f64>> {
    let h = f.hessian(x)?;
    if Cholesky::new(h.clone()).is_none() {
        return Err(HoroError::Numeric(format!("Hessian is not positive definite at {:?}", x.as_slice())));
    }
    Ok(h)
}

/// Result of a Legendre transform at one covector.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendrePoint {
    /// `f*(p) = <p, x> - f(x)`.
    pub value: f64,
    /// The maximizer `x = d_p f*`.
    pub argmax: DVector<f64>,
    /// `|d_x f - p|_inf` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Residual target for [`legendre`].
pub const LEGENDRE_TOLERANCE: f64 = 1e-10;
const MAX_NEWTON_STEPS: usize = 200;
const ESCAPE_RADIUS: f64 = 1e6;

/// `f*(p) = sup_x (<p, x> - f(x))` by damped Newton iteration from `start`.
pub fn legendre_from<C: Convex + ?Sized>(f: &C, p: &DVector<f64>, start: &DVector<f64>) -> Result<LegendrePoint> {
    let mut x = start.clone();
    let objective = |x: &DVector<f64>| -> Result<f64> { Ok(f.value(x)? - p.dot(x)) };
    let mut fx = objective(&x)?;
    let scale = p.amax().max(1.0);
    for it in 0..MAX_NEWTON_STEPS {
        let g = f.gradient(&x)? - p;
        let res = g.amax();
        if res < LEGENDRE_TOLERANCE * scale {
            // one extra Newton step polishes the last digits
            let h = checked_hessian(f, &x)?;
            if let Some(step) = h.clone().cholesky().map(|c| c.solve(&g)) {
                let y = &x - step;
                let gy = (f.gradient(&y)? - p).amax();
                if gy <= res {
                    x = y;
                }
            }
            let resid = (f.gradient(&x)? - p).amax();
            return Ok(LegendrePoint { value: p.dot(&x) - f.value(&x)?, argmax: x, residual: resid, iterations: it });
        }
        let h = checked_hessian(f, &x)?;
        let step = h.cholesky().expect("checked").solve(&g);
        let mut t = 1.0;
        loop {
            let y = &x - &step * t;
            let fy = match objective(&y) {
                Ok(v) => v,
                Err(_) if t >= 1e-12 => {
                    t *= 0.5;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let armijo = fy <= fx - 1e-4 * t * g.dot(&step);
            // near the optimum the decrease drops below rounding of the objective
            let flat = (fy - fx).abs() <= 1e-13 * (1.0 + fx.abs())
                && (f.gradient(&y)? - p).amax() < (1.0 - 1e-4 * t) * res;
            if armijo || flat || t < 1e-12 {
                if t < 1e-12 && fy > fx {
                    return Err(HoroError::Numeric(format!("Legendre line search stalled at p = {:?}", p.as_slice())));
                }
                x = y;
                fx = fy;
                break;
            }
            t *= 0.5;
        }
        if x.amax() > ESCAPE_RADIUS {
            return Err(HoroError::Numeric(format!("covector {:?} lies outside the gradient image", p.as_slice())));
        }
    }
    Err(HoroError::Numeric(format!("Newton iteration did not converge at p = {:?}", p.as_slice())))
}

pub fn legendre<C: Convex + ?Sized>(f: &C, p: &DVector<f64>) -> Result<LegendrePoint> {
    legendre_from(f, p, &DVector::zeros(f.dim()))
}

/// The convex conjugate of a potential, evaluated through [`legendre`].
pub struct Conjugate<'a, C: Convex + ?Sized> {
    pub inner: &'a C,
}

impl<'a, C: Convex + ?Sized> Convex for Conjugate<'a, C> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&self, p: &DVector<f64>) -> Result<f64> {
        Ok(legendre(self.inner, p)?.value)
    }

    fn gradient(&self, p: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(legendre(self.inner, p)?.argmax)
    }

    fn hessian(&self, p: &DVector<f64>) -> Result<DMatrix<f64>> {
        let x = legendre(self.inner, p)?.argmax;
        checked_hessian(self.inner, &x)?
            .try_inverse()
            .ok_or_else(|| HoroError::Numeric("singular Hessian".into()))
    }
}
