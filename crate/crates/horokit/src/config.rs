//! JSON run configuration and its translation into library objects.
//!
//! Rationals are accepted as JSON integers or as strings `"p/q"`. Unknown
//! fields are rejected, and every validation error names the offending field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::criteria::DEFAULT_F_DEPTH;
use crate::error::{HoroError, Result};
use crate::linebundle::PolarizedVariety;
use crate::mabuchi_numeric::{CurvatureSettings, Preset, QuadratureSpec};
use crate::rational::{fmt_q, parse_q, Q, QVec};
use crate::restricted::{derive, HorosymmetricDatum, LatticeMode};
use crate::rootdata::{
    build_explicit_involution, build_involution, build_parabolic, build_root_system, full_parabolic, InvolutionKind,
    Series,
};

/// A rational read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Rat(Q::from_integer(n.into()))),
            Raw::Text(s) => parse_q(&s).map(Rat).map_err(serde::de::Error::custom),
        }
    }
}

fn rats(v: &[Rat]) -> QVec {
    v.iter().map(|r| r.0.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    /// `A`, `B`, `C`, `D` or `T`.
    pub series: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionParams {
    pub r: Option<usize>,
    pub m: Option<usize>,
    pub p: Option<usize>,
    pub block: Option<usize>,
    pub levi: Option<Vec<usize>>,
    pub matrix: Option<Vec<Vec<Rat>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionConfig {
    /// `AI`, `AII`, `AIII`, `group-type`, `horospherical` or `explicit`.
    pub kind: String,
    #[serde(default)]
    pub params: InvolutionParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParabolicConfig {
    /// Simple roots of the Levi factor, by index.
    pub levi: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarizationConfig {
    /// Primitive ray generators `mu_Y`, as points of `a_s`.
    pub rays: Vec<Vec<Rat>>,
    /// Special function values `v_L(mu_Y)`; omitted for the anticanonical
    /// polarization.
    #[serde(default)]
    pub v_values: Option<Vec<Rat>>,
    #[serde(default)]
    pub anticanonical: bool,
    /// Isotropy character as an ambient covector.
    #[serde(default)]
    pub chi: Option<Vec<Rat>>,
    /// Color constants `n_D` by label.
    #[serde(default)]
    pub colors: BTreeMap<String, Rat>,
}

/// Which configuration entry a scan parameter `t` replaces, as
/// `offset + scale · t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    /// `v_values[i]`, `boundary[i]`, `chi[i]` or `colors.LABEL`.
    pub target: String,
    pub from: Rat,
    pub to: Rat,
    pub step: Rat,
    #[serde(default = "zero")]
    pub offset: Rat,
    #[serde(default = "one")]
    pub scale: Rat,
}

fn zero() -> Rat {
    Rat(Q::from_integer(0.into()))
}

fn one() -> Rat {
    Rat(Q::from_integer(1.into()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericConfig {
    #[serde(default = "d_order")]
    pub order: usize,
    #[serde(default = "d_epsilon")]
    pub epsilon: f64,
    #[serde(default = "d_refinement")]
    pub refinement: usize,
    #[serde(default = "d_tolerance")]
    pub tolerance: f64,
    #[serde(default = "d_grading")]
    pub grading: u32,
    /// Bisection depth of the positivity check of `F_L`.
    #[serde(default = "d_depth")]
    pub f_depth: usize,
    /// Finite-difference step for curvature.
    #[serde(default = "d_step")]
    pub fd_step: f64,
    #[serde(default = "d_margin")]
    pub margin: f64,
    /// Number of curvature sample points.
    #[serde(default = "d_samples")]
    pub samples: usize,
}

fn d_order() -> usize {
    QuadratureSpec::default().order
}
fn d_epsilon() -> f64 {
    QuadratureSpec::default().epsilon
}
fn d_refinement() -> usize {
    QuadratureSpec::default().refinement
}
fn d_tolerance() -> f64 {
    QuadratureSpec::default().tolerance
}
fn d_grading() -> u32 {
    QuadratureSpec::default().grading
}
fn d_depth() -> usize {
    DEFAULT_F_DEPTH
}
fn d_step() -> f64 {
    CurvatureSettings::default().step
}
fn d_margin() -> f64 {
    CurvatureSettings::default().margin
}
fn d_samples() -> usize {
    50
}

impl Default for NumericConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all numeric fields have defaults")
    }
}

impl NumericConfig {
    pub fn quadrature(&self) -> Result<QuadratureSpec> {
        let spec = QuadratureSpec {
            order: self.order,
            epsilon: self.epsilon,
            refinement: self.refinement,
            tolerance: self.tolerance,
            grading: self.grading,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn curvature(&self) -> Result<CurvatureSettings> {
        if !(self.fd_step > 0.0) {
            return Err(cfg("numeric.fd_step", "must be positive"));
        }
        if !(self.margin > 0.0) {
            return Err(cfg("numeric.margin", "must be positive"));
        }
        Ok(CurvatureSettings { step: self.fd_step, margin: self.margin })
    }
}

/// Complete run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub group: GroupConfig,
    pub involution: InvolutionConfig,
    /// Omitted: the parabolic is the whole group (a symmetric space).
    #[serde(default)]
    pub parabolic: Option<ParabolicConfig>,
    #[serde(default)]
    pub normalizer_mode: Option<LatticeMode>,
    pub polarization: PolarizationConfig,
    /// Boundary coefficients `c_Y` by ray index.
    #[serde(default)]
    pub boundary: BTreeMap<usize, Rat>,
    #[serde(default)]
    pub lambda0: Option<Vec<Rat>>,
    #[serde(default)]
    pub scan: Option<ScanConfig>,
    #[serde(default)]
    pub numeric: NumericConfig,
    #[serde(default)]
    pub potential: Option<Preset>,
    /// Reference potential fixing the additive constant of the Mabuchi functional.
    #[serde(default)]
    pub reference: Option<Preset>,
}

fn cfg(field: &str, message: impl Into<String>) -> HoroError {
    HoroError::Config { field: field.into(), message: message.into() }
}

fn required<T: Clone>(v: &Option<T>, field: &str) -> Result<T> {
    v.clone().ok_or_else(|| cfg(field, "required for this involution kind"))
}

impl RunConfig {
    /// Parses JSON, reporting line and column on syntax or schema errors.
    pub fn from_json(text: &str) -> Result<RunConfig> {
        serde_json::from_str(text).map_err(|e| {
            cfg(&format!("line {} column {}", e.line(), e.column()), e.to_string())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn datum(&self) -> Result<HorosymmetricDatum> {
        let series = Series::parse(&self.group.series).map_err(|e| cfg("group.series", e.to_string()))?;
        let sys = build_root_system(series, self.group.rank).map_err(|e| cfg("group.rank", e.to_string()))?;
        let p = &self.involution.params;
        let kind = match self.involution.kind.to_ascii_lowercase().as_str() {
            "ai" => Some(InvolutionKind::AI),
            "aii" => Some(InvolutionKind::AII { p: required(&p.p, "involution.params.p")? }),
            "aiii" => Some(InvolutionKind::AIII {
                r: required(&p.r, "involution.params.r")?,
                m: required(&p.m, "involution.params.m")?,
            }),
            "group-type" => Some(InvolutionKind::GroupType { block: required(&p.block, "involution.params.block")? }),
            "horospherical" => Some(InvolutionKind::Horospherical { levi: p.levi.clone().unwrap_or_default() }),
            "explicit" => None,
            other => return Err(cfg("involution.kind", format!("unknown involution kind `{other}`"))),
        };
        let sigma = match kind {
            Some(k) => build_involution(k, &sys),
            None => {
                let m = required(&p.matrix, "involution.params.matrix")?;
                build_explicit_involution(m.iter().map(|row| rats(row)).collect(), &sys)
            }
        }
        .map_err(|e| cfg("involution", e.to_string()))?;
        let parabolic = match &self.parabolic {
            None => full_parabolic(&sys),
            Some(pc) => build_parabolic(&sys, &pc.levi).map_err(|e| cfg("parabolic.levi", e.to_string()))?,
        };
        derive(&sys, &parabolic, &sigma, self.normalizer_mode).map_err(|e| cfg("involution", e.to_string()))
    }

    /// Validated polarized variety.
    pub fn variety(&self) -> Result<PolarizedVariety> {
        let datum = self.datum()?;
        let pol = &self.polarization;
        let rays: Vec<QVec> = pol.rays.iter().map(|r| rats(r)).collect();
        let n_rays = rays.len();
        let mut boundary = vec![Q::from_integer(0.into()); n_rays];
        for (i, c) in &self.boundary {
            if *i >= n_rays {
                return Err(cfg(&format!("boundary.{i}"), format!("there are only {n_rays} rays")));
            }
            boundary[*i] = c.0.clone();
        }
        let mut pv = match (&pol.v_values, pol.anticanonical) {
            (Some(_), true) => {
                return Err(cfg("polarization", "give either v_values or anticanonical, not both"));
            }
            (None, false) => return Err(cfg("polarization.v_values", "missing (or set anticanonical: true)")),
            (None, true) => PolarizedVariety::anticanonical(datum, rays, boundary.clone())
                .map_err(|e| cfg("polarization", e.to_string()))?,
            (Some(v), false) => {
                let pv = PolarizedVariety::new(datum, rays, rats(v))
                    .map_err(|e| cfg("polarization.v_values", e.to_string()))?;
                if self.boundary.is_empty() {
                    pv
                } else {
                    pv.with_boundary(boundary).map_err(|e| cfg("boundary", e.to_string()))?
                }
            }
        };
        if let Some(chi) = &pol.chi {
            pv = pv.with_chi(rats(chi)).map_err(|e| cfg("polarization.chi", e.to_string()))?;
        }
        for (label, value) in &pol.colors {
            pv = pv
                .with_color_constant(label, value.0.clone())
                .map_err(|e| cfg(&format!("polarization.colors.{label}"), e.to_string()))?;
        }
        if let Some(l0) = &self.lambda0 {
            pv = pv.with_lambda0(Some(rats(l0)));
        }
        Ok(pv)
    }

    /// Copy of the configuration with the scan target set to `offset + scale · t`.
    pub fn with_parameter(&self, t: &Q) -> Result<RunConfig> {
        let scan = self.scan.as_ref().ok_or_else(|| cfg("scan", "missing scan block"))?;
        let value = Rat(&scan.offset.0 + &scan.scale.0 * t);
        let mut out = self.clone();
        let target = scan.target.trim();
        let index = |prefix: &str| -> Result<Option<usize>> {
            match target.strip_prefix(prefix).and_then(|r| r.strip_prefix('[')).and_then(|r| r.strip_suffix(']')) {
                None => Ok(None),
                Some(i) => i.trim().parse().map(Some).map_err(|_| cfg("scan.target", format!("bad index in `{target}`"))),
            }
        };
        if let Some(i) = index("v_values")? {
            let v = out.polarization.v_values.as_mut().ok_or_else(|| cfg("scan.target", "no v_values to vary"))?;
            *v.get_mut(i).ok_or_else(|| cfg("scan.target", format!("v_values has no entry {i}")))? = value;
        } else if let Some(i) = index("boundary")? {
            out.boundary.insert(i, value);
        } else if let Some(i) = index("chi")? {
            let c = out.polarization.chi.as_mut().ok_or_else(|| cfg("scan.target", "no chi to vary"))?;
            *c.get_mut(i).ok_or_else(|| cfg("scan.target", format!("chi has no entry {i}")))? = value;
        } else if let Some(label) = target.strip_prefix("colors.") {
            out.polarization.colors.insert(label.to_string(), value);
        } else {
            return Err(cfg("scan.target", format!("unsupported target `{target}`")));
        }
        Ok(out)
    }

    pub fn scan_values(&self) -> Result<Vec<Q>> {
        let scan = self.scan.as_ref().ok_or_else(|| cfg("scan", "missing scan block"))?;
        if scan.step.0 <= Q::from_integer(0.into()) {
            return Err(cfg("scan.step", "must be positive"));
        }
        if scan.from.0 > scan.to.0 {
            return Err(cfg("scan.to", "must not be smaller than scan.from"));
        }
        Ok(crate::criteria::grid(&scan.from.0, &scan.to.0, &scan.step.0))
    }
}
