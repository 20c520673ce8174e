//! Floating-point evaluation of the analytic formulas on explicit toric
//! potentials: Legendre transforms, the Monge–Ampère density, scalar
//! curvature, and the J and Mabuchi functionals.
//!
//! Points of `a_s` and covectors use the coordinates of the exact engine. A
//! covector `p = d_a u` pairs with a point by the plain dot product, and `p`
//! corresponds to `q = chi + m` in the moment polytope through `p = -2m`.

pub mod curvature;
pub mod functional;
pub mod potential;
pub mod quadrature;

pub use curvature::{
    curvature_average, interior_samples, ma_density, samples_csv, scalar_curvature, CurvatureAverage, CurvatureSample,
    CurvatureSettings,
};
pub use functional::{j_functional, mabuchi, mabuchi_relative, normalize, MabuchiReport};
pub use potential::{legendre, legendre_from, Conjugate, Convex, LegendrePoint, PotentialKind, ToricPotential};
pub use quadrature::QuadratureSpec;

use nalgebra::{DMatrix, DVector};
use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::criteria::{lambda_y, s_bar_theta, Context};
use crate::dhintegrate::DHMeasure;
use crate::error::{HoroError, Result};
use crate::linebundle::PolarizedVariety;
use crate::polytope::triangulate;
use crate::lattice::integer_coordinates;
use crate::linalg::{solve, transpose};
use crate::rational::{dot, fmt_qvec, to_f64, to_f64_vec, Q, QVec};
use crate::rootdata::coroot;
use quadrature::Simplex;

/// Data of one root entering the curvature formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct RootTerm {
    /// Restriction `alpha|a_s` as a covector.
    pub restriction: DVector<f64>,
    /// Projection of the coroot to `a_s`, as a point.
    pub coroot_point: DVector<f64>,
    /// `chi(alpha^vee)`.
    pub chi: f64,
    /// `chi^ac(alpha^vee)`.
    pub chi_ac: f64,
}

impl RootTerm {
    /// `q(alpha^vee)` at the moment point `q = chi + m`.
    pub fn q(&self, m: &DVector<f64>) -> f64 {
        self.chi + m.dot(&self.coroot_point)
    }

    /// `(2chi - p)(alpha^vee)`.
    pub fn f(&self, p: &DVector<f64>) -> f64 {
        2.0 * self.chi - p.dot(&self.coroot_point)
    }
}

/// Floating-point snapshot of a polarized variety.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub rank: usize,
    pub dimension: usize,
    pub qu: Vec<RootTerm>,
    pub s_plus: Vec<RootTerm>,
    pub two_rho_h: DVector<f64>,
    pub gram: DMatrix<f64>,
    /// Restricted Weyl group acting on points.
    pub weyl: Vec<DMatrix<f64>>,
    /// Triangulation of `Delta` in covector coordinates `m`.
    pub delta: Vec<Simplex>,
    /// Triangulated cones `Delta_Y` over ray facets, with their ray index.
    pub pieces: Vec<(usize, Vec<Simplex>)>,
    pub lambda_y: Vec<f64>,
    pub s_bar: f64,
    pub s_bar_exact: Q,
    pub lambda0: DVector<f64>,
    /// Halfspaces `normal · p <= offset` of `-2 Delta^t`, unit normals.
    pub image: Vec<(DVector<f64>, f64)>,
    /// Central directions of `a_s`, as points.
    pub central: Vec<DVector<f64>>,
    /// Assumption (T).
    pub toroidal: bool,
    /// Assumption (R).
    pub wall_multiplicity: bool,
    measure: DHMeasure,
    covolume: f64,
}

fn dvec(v: &[Q]) -> DVector<f64> {
    DVector::from_vec(to_f64_vec(v))
}

fn simplices(region: &crate::polytope::RationalPolytope) -> Vec<Simplex> {
    triangulate(region)
        .into_iter()
        .filter(|s| s.len() == region.dim + 1)
        .map(|s| s.iter().map(|v| dvec(v)).collect())
        .collect()
}

impl Geometry {
    pub fn new(pv: &PolarizedVariety) -> Result<Self> {
        let d = &pv.datum;
        let r = d.rank();
        let ctx = Context::new(pv)?;
        let term = |alpha: &QVec| -> Result<RootTerm> {
            let cor = coroot(alpha, &d.system)?;
            Ok(RootTerm {
                restriction: dvec(&d.pi(alpha)),
                coroot_point: dvec(&d.project_point(&cor)),
                chi: to_f64(&dot(&pv.chi, &cor)),
                chi_ac: to_f64(&dot(&d.chi_ac, &cor)),
            })
        };
        let qu = d.phi_qu.iter().map(term).collect::<Result<Vec<_>>>()?;
        let s_plus = d.phi_s_plus.iter().map(term).collect::<Result<Vec<_>>>()?;
        let (dt, _) = pv.toric_polytope()?;
        if !dt.is_full_dimensional() {
            return Err(HoroError::Numeric("the toric polytope is not full-dimensional".into()));
        }
        let image = dt
            .halfspaces
            .iter()
            .map(|h| {
                let n = -dvec(&h.normal);
                let norm = n.norm();
                (n / norm, 2.0 * to_f64(&h.offset) / norm)
            })
            .collect();
        let s_bar_exact = s_bar_theta(&ctx)?;
        let assumptions = pv.check_assumptions()?;
        Ok(Geometry {
            rank: r,
            dimension: pv.dimension(),
            qu,
            s_plus,
            two_rho_h: dvec(&d.two_rho_h),
            gram: DMatrix::from_fn(r, r, |i, j| to_f64(&d.gram[i][j])),
            weyl: d.weyl_group.iter().map(|g| DMatrix::from_fn(r, r, |i, j| to_f64(&g[i][j]))).collect(),
            delta: simplices(&ctx.delta),
            pieces: ctx.pieces.iter().map(|(y, region)| (*y, simplices(region))).collect(),
            lambda_y: lambda_y(pv)?.iter().map(to_f64).collect(),
            s_bar: to_f64(&s_bar_exact),
            s_bar_exact,
            lambda0: dvec(&ctx.lambda0),
            image,
            central: d.central_points().iter().map(|v| dvec(v)).collect(),
            toroidal: assumptions.toroidal,
            wall_multiplicity: assumptions.wall_multiplicity,
            covolume: to_f64(&d.lattice_covolume),
            measure: ctx.measure,
        })
    }

    /// `P_DH(chi + m)`, normalized like the exact engine.
    pub fn density(&self, m: &DVector<f64>) -> f64 {
        self.measure.density_f64(m.as_slice()) / self.covolume
    }

    /// Roots `Phi_{Q^u} ∪ Phi_s^+` in this order.
    pub fn all_roots(&self) -> impl Iterator<Item = &RootTerm> {
        self.qu.iter().chain(&self.s_plus)
    }

    /// Covector `p = -2m` attached to the moment coordinate `m`.
    pub fn covector(&self, m: &DVector<f64>) -> DVector<f64> {
        m * -2.0
    }

    /// Euclidean distance from `p` to the boundary of `-2 Delta^t`; negative
    /// outside.
    pub fn image_margin(&self, p: &DVector<f64>) -> f64 {
        self.image.iter().map(|(n, c)| c - n.dot(p)).fold(f64::INFINITY, f64::min)
    }

    /// `I_H(a) = Σ_{Phi_s^+} ln sinh(-2 beta(a)) - Σ_{Phi_{Q^u}} 2 alpha(a)`
    /// with its gradient and Hessian.
    pub fn i_h(&self, a: &DVector<f64>) -> Result<(f64, DVector<f64>, DMatrix<f64>)> {
        let r = self.rank;
        let mut v = 0.0;
        let mut g = DVector::zeros(r);
        let mut h = DMatrix::zeros(r, r);
        for b in &self.s_plus {
            let x = -2.0 * b.restriction.dot(a);
            if !(x > 0.0) {
                return Err(HoroError::Numeric(format!("point {:?} is not inside the negative chamber", a.as_slice())));
            }
            v += x.sinh().ln();
            let coth = 1.0 / x.tanh();
            g -= &b.restriction * (2.0 * coth);
            let csch2 = 1.0 / x.sinh().powi(2);
            h -= (&b.restriction * b.restriction.transpose()) * (4.0 * csch2);
        }
        for q in &self.qu {
            v -= 2.0 * q.restriction.dot(a);
            g -= &q.restriction * 2.0;
        }
        Ok((v, g, h))
    }

    /// `J_H(a) = Π_{Phi_s^+} |sinh(2 beta(a))|`.
    pub fn j_h(&self, a: &DVector<f64>) -> f64 {
        self.s_plus.iter().map(|b| (2.0 * b.restriction.dot(a)).sinh().abs()).product()
    }

    /// `4 rho_H(a)`.
    pub fn four_rho_h(&self, a: &DVector<f64>) -> f64 {
        2.0 * self.two_rho_h.dot(a)
    }

    /// `∫_Delta P_DH dm` by the same quadrature as the other integrals.
    pub fn volume(&self, spec: &QuadratureSpec) -> Result<f64> {
        quadrature::integrate(&self.delta, spec, |m| Ok(self.density(m)))
    }
}

/// Points of `k·Delta^t ∩ M`, in covector coordinates.
pub fn lattice_points(pv: &PolarizedVariety, k: u32) -> Result<Vec<QVec>> {
    let (dt, _) = pv.toric_polytope()?;
    let dt = dt.scaled(&Q::from_integer(BigInt::from(k)));
    let basis = &pv.datum.lattice_basis;
    let bt = transpose(basis);
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for j in 0..basis.len() {
        let coords: Vec<Q> = dt
            .vertices
            .iter()
            .map(|v| solve(&bt, v).map(|c| c[j].clone()))
            .collect::<Option<_>>()
            .ok_or_else(|| HoroError::Numeric("the lattice basis does not span a_s^*".into()))?;
        let min = coords.iter().min().cloned().unwrap_or_default();
        let max = coords.iter().max().cloned().unwrap_or_default();
        let to_i = |x: BigInt| x.to_i64().ok_or_else(|| HoroError::Numeric("lattice box too large".into()));
        lo.push(to_i(min.floor().to_integer())?);
        hi.push(to_i(max.ceil().to_integer())?);
    }
    let size: i64 = lo.iter().zip(&hi).map(|(a, b)| b - a + 1).product();
    if size > 2_000_000 {
        return Err(HoroError::Numeric(format!("{size} lattice candidates exceed the enumeration bound")));
    }
    let mut out = Vec::new();
    let mut idx = lo.clone();
    loop {
        let mut m = vec![Q::from_integer(BigInt::from(0)); bt.len()];
        for (c, row) in idx.iter().zip(basis) {
            for (x, y) in m.iter_mut().zip(row) {
                *x += y * Q::from_integer(BigInt::from(*c));
            }
        }
        if dt.contains(&m) {
            out.push(m);
        }
        let mut d = 0;
        loop {
            if d == idx.len() {
                return Ok(out);
            }
            idx[d] += 1;
            if idx[d] <= hi[d] {
                break;
            }
            idx[d] = lo[d];
            d += 1;
        }
    }
}

/// `u(a) = (1/k) ln Σ_{m ∈ k·Delta^t ∩ M} exp(-2<m, a>)`. As `k` grows this
/// converges to the support function of `-2 Delta^t`, and for every `k` it is
/// the potential of a metric in the class of `L` when the lattice points of
/// `k·Delta^t` embed the variety.
pub fn smoothed_support(pv: &PolarizedVariety, k: u32) -> Result<ToricPotential> {
    if k == 0 {
        return Err(HoroError::Config { field: "potential.level".into(), message: "level must be positive".into() });
    }
    let (dt, _) = pv.toric_polytope()?;
    let dt = dt.scaled(&Q::from_integer(BigInt::from(k)));
    if let Some(v) = dt.vertices.iter().find(|v| integer_coordinates(&pv.datum.lattice_basis, v).is_none()) {
        return Err(HoroError::Config {
            field: "potential.level".into(),
            message: format!("level {k} leaves the vertex {} of k·Delta^t off the lattice", fmt_qvec(v)),
        });
    }
    let kf = f64::from(k);
    let points = lattice_points(pv, k)?;
    let weights: Vec<Vec<f64>> = points.iter().map(|m| to_f64_vec(m).iter().map(|x| -2.0 * x / kf).collect()).collect();
    let n = weights.len();
    ToricPotential::log_sum_exp(weights, vec![1.0; n], 1.0 / kf)
}

/// Potentials selectable from a configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Preset {
    /// `scale · a^T G a / 2`, a flat model that is not a metric on a compact variety.
    Quadratic { scale: f64 },
    /// `k · ln(e^{4t} + 2c + e^{-4t})` for `SL2/T`.
    FubiniStudy { k: f64, c: f64 },
    /// Lattice-point smoothing of the support function at level `k`.
    SmoothedSupport { level: u32 },
    /// Explicit closed form.
    Explicit { potential: PotentialKind },
}

impl Preset {
    pub fn build(&self, pv: &PolarizedVariety) -> Result<ToricPotential> {
        let r = pv.datum.rank();
        let u = match self {
            Preset::Quadratic { scale } => {
                let g = DMatrix::from_fn(r, r, |i, j| to_f64(&pv.datum.gram[i][j]));
                ToricPotential::quadratic(&g, *scale)?
            }
            Preset::FubiniStudy { k, c } => ToricPotential::fubini_study_sl2(*k, *c)?,
            Preset::SmoothedSupport { level } => smoothed_support(pv, *level)?,
            Preset::Explicit { potential } => ToricPotential::new(potential.clone())?,
        };
        if u.dim() != r {
            return Err(HoroError::Config {
                field: "potential".into(),
                message: format!("potential has dimension {} but the rank is {r}", u.dim()),
            });
        }
        Ok(u)
    }

    /// Whether the preset defines a metric in the class of `L` on the
    /// compact variety.
    pub fn is_compact_metric(&self) -> bool {
        !matches!(self, Preset::Quadratic { .. })
    }
}
