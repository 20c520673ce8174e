//! Polarized toroidal horosymmetric varieties: divisor data, the special,
//! moment and toric polytopes, ampleness, anticanonical coefficients, the base
//! point `lambda_0` and the combinatorial assumptions (T) and (R).
//!
//! Polytopes live in covector coordinates on `a_s` (the coordinates `m` of
//! [`crate::restricted`]). The moment polytope is `chi + E(Delta)` ambiently;
//! since `chi` vanishes on `a_s`, its restriction to `a_s` is `Delta` itself.

use num::{One, Signed, Zero};
use std::sync::OnceLock;

use crate::error::{HoroError, Result};
use crate::lattice::integer_coordinates;
use crate::linalg::{mat_vec, row_space_basis};
use crate::polytope::{
    cone_over_facet, from_halfspaces, from_points, weyl_orbit_hull, FacetTag, Halfspace, RationalPolytope,
};
use crate::rational::{add, dot, fmt_q, fmt_qvec, is_zero_vec, neg, primitive_direction, q, qr, scale, zeros, Q, QVec};
use crate::restricted::{colors, covector_action, Color, ColorOrigin, HorosymmetricDatum};
use crate::rootdata::coroot;

#[derive(Debug, Clone, PartialEq)]
pub struct PolarizedVariety {
    pub datum: HorosymmetricDatum,
    pub colors: Vec<Color>,
    /// Primitive vectors `mu_Y` of the dual lattice `N`, as points of `a_s`.
    pub rays: Vec<QVec>,
    /// Special function values `v_L(mu_Y)`.
    pub v_values: Vec<Q>,
    /// Isotropy character, an ambient covector vanishing on `a_s`.
    pub chi: QVec,
    /// Constants `n_D` per color.
    pub color_constants: Vec<Q>,
    color_overridden: Vec<bool>,
    /// Boundary coefficients `c_Y < 1`.
    pub boundary: Vec<Q>,
    pub lambda0_override: Option<QVec>,
    cache: PvCache,
}

/// Memoized polytope data; reset by every builder method.
#[derive(Debug, Clone, Default)]
struct PvCache {
    delta: OnceLock<Result<RationalPolytope>>,
    lambda0: OnceLock<Result<QVec>>,
    toric: OnceLock<Result<(RationalPolytope, bool)>>,
    subdivision: OnceLock<Result<Vec<(usize, RationalPolytope)>>>,
    assumptions: OnceLock<Result<AssumptionReport>>,
}

impl PartialEq for PvCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl PolarizedVariety {
    /// Polarization with `chi = 0`, default color constants and `c_Y = 0`.
    pub fn new(datum: HorosymmetricDatum, rays: Vec<QVec>, v_values: Vec<Q>) -> Result<Self> {
        if rays.len() != v_values.len() {
            return Err(HoroError::InvalidPolarization(format!(
                "{} rays but {} special function values",
                rays.len(),
                v_values.len()
            )));
        }
        let r = datum.rank();
        let n = datum.system.ambient_dim;
        let dual = datum.dual_lattice_basis();
        for (i, mu) in rays.iter().enumerate() {
            if mu.len() != r {
                return Err(HoroError::DimensionMismatch { expected: r, found: mu.len() });
            }
            if is_zero_vec(mu) {
                return Err(HoroError::InvalidPolarization(format!("ray {i} is zero")));
            }
            if let Some(rr) = datum.restricted_roots.iter().find(|rr| dot(&rr.root, mu).is_positive()) {
                return Err(HoroError::InvalidPolarization(format!(
                    "ray {i} = {} is outside the valuation cone (restricted root {} is positive on it)",
                    fmt_qvec(mu),
                    fmt_qvec(&rr.root)
                )));
            }
            match integer_coordinates(&dual, mu) {
                None => {
                    return Err(HoroError::InvalidPolarization(format!("ray {i} = {} is not in N", fmt_qvec(mu))))
                }
                Some(z) => {
                    let g = z.iter().fold(num::BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
                    if !g.is_one() {
                        return Err(HoroError::InvalidPolarization(format!(
                            "ray {i} = {} is not primitive in N",
                            fmt_qvec(mu)
                        )));
                    }
                }
            }
        }
        let cols = colors(&datum);
        let k = rays.len();
        let mut pv = PolarizedVariety {
            datum,
            color_constants: vec![Q::zero(); cols.len()],
            color_overridden: vec![false; cols.len()],
            colors: cols,
            rays,
            v_values,
            chi: zeros(n),
            boundary: vec![Q::zero(); k],
            lambda0_override: None,
            cache: PvCache::default(),
        };
        pv.refresh_color_defaults();
        Ok(pv)
    }

    /// Log-anticanonical polarization `K^{-1}_{X,Theta}`: `v = n_Y - c_Y`, `chi = chi^ac`.
    pub fn anticanonical(datum: HorosymmetricDatum, rays: Vec<QVec>, boundary: Vec<Q>) -> Result<Self> {
        let pv = PolarizedVariety::new(datum, rays.clone(), vec![Q::zero(); rays.len()])?;
        let chi_ac = pv.datum.chi_ac.clone();
        let mut pv = pv.with_boundary(boundary)?.with_chi(chi_ac)?;
        pv.v_values = pv.anticanonical_coefficients().into_iter().map(|(_, nt)| nt).collect();
        pv.cache = PvCache::default();
        Ok(pv)
    }

    fn refresh_color_defaults(&mut self) {
        for (i, c) in self.colors.iter().enumerate() {
            if self.color_overridden[i] {
                continue;
            }
            self.color_constants[i] = match &c.origin {
                ColorOrigin::Fiber(_) => Q::zero(),
                ColorOrigin::Flag(alpha) => {
                    let cv = coroot(alpha, &self.datum.system).expect("simple root");
                    dot(&self.chi, &cv)
                }
            };
        }
    }

    pub fn with_chi(mut self, chi: QVec) -> Result<Self> {
        let d = &self.datum;
        if chi.len() != d.system.ambient_dim {
            return Err(HoroError::DimensionMismatch { expected: d.system.ambient_dim, found: chi.len() });
        }
        if !is_zero_vec(&d.restrict(&chi)) {
            return Err(HoroError::InvalidPolarization(format!("chi = {} does not vanish on a_s", fmt_qvec(&chi))));
        }
        for b in &d.phi_l_sigma {
            let bc = coroot(b, &d.system)?;
            if !dot(&chi, &bc).is_zero() {
                return Err(HoroError::InvalidPolarization(format!(
                    "chi = {} is not trivial on the coroot of the fixed root {}",
                    fmt_qvec(&chi),
                    fmt_qvec(b)
                )));
            }
        }
        self.chi = chi;
        self.refresh_color_defaults();
        self.cache = PvCache::default();
        Ok(self)
    }

    /// Overrides the constant `n_D` of the color with this label.
    pub fn with_color_constant(mut self, label: &str, value: Q) -> Result<Self> {
        let i = self
            .colors
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| HoroError::InvalidPolarization(format!("unknown color `{label}`")))?;
        self.color_constants[i] = value;
        self.color_overridden[i] = true;
        self.cache = PvCache::default();
        Ok(self)
    }

    pub fn with_boundary(mut self, boundary: Vec<Q>) -> Result<Self> {
        if boundary.len() != self.rays.len() {
            return Err(HoroError::InvalidPolarization(format!(
                "{} boundary coefficients for {} rays",
                boundary.len(),
                self.rays.len()
            )));
        }
        if let Some(c) = boundary.iter().find(|c| **c >= Q::one()) {
            return Err(HoroError::InvalidPolarization(format!("boundary coefficient {} is not < 1", fmt_q(c))));
        }
        self.boundary = boundary;
        self.cache = PvCache::default();
        Ok(self)
    }

    pub fn with_lambda0(mut self, lambda0: Option<QVec>) -> Self {
        self.lambda0_override = lambda0;
        self.cache = PvCache::default();
        self
    }

    /// Replaces the special function values.
    pub fn with_v_values(mut self, v_values: Vec<Q>) -> Result<Self> {
        if v_values.len() != self.rays.len() {
            return Err(HoroError::InvalidPolarization(format!(
                "{} special function values for {} rays",
                v_values.len(),
                self.rays.len()
            )));
        }
        self.v_values = v_values;
        self.cache = PvCache::default();
        Ok(self)
    }

    /// `(v, chi, n_D) -> (s v, s chi, s n_D)`.
    pub fn scaled(&self, s: &Q) -> PolarizedVariety {
        let mut pv = self.clone();
        pv.v_values = pv.v_values.iter().map(|v| v * s).collect();
        pv.chi = scale(s, &pv.chi);
        pv.color_constants = pv.color_constants.iter().map(|v| v * s).collect();
        pv.lambda0_override = pv.lambda0_override.map(|l| scale(s, &l));
        pv.cache = PvCache::default();
        pv
    }

    /// `n = dim X = r + |Phi_{Q^u}| + |Phi_s^+|`.
    pub fn dimension(&self) -> usize {
        self.datum.rank() + self.datum.phi_qu.len() + self.datum.phi_s_plus.len()
    }

    /// Symmetric-fiber triviality: `chi` kills the coroots of `Phi_s^+` and
    /// every fiber color keeps `n_D = 0`.
    pub fn is_fiber_trivial(&self) -> bool {
        let d = &self.datum;
        d.phi_s_plus.iter().all(|b| dot(&self.chi, &coroot(b, &d.system).expect("root")).is_zero())
            && self
                .colors
                .iter()
                .zip(&self.color_constants)
                .all(|(c, n)| !matches!(c.origin, ColorOrigin::Fiber(_)) || n.is_zero())
    }

    fn chamber_halfspaces(&self) -> Vec<Halfspace> {
        self.datum
            .simple_restricted_coroots
            .iter()
            .enumerate()
            .map(|(i, c)| Halfspace::tagged(neg(c), Q::zero(), FacetTag::Wall(i)))
            .collect()
    }

    /// The special polytope `Delta` in covector coordinates on `a_s`.
    pub fn special_polytope(&self) -> Result<RationalPolytope> {
        self.cache.delta.get_or_init(|| self.build_special_polytope()).clone()
    }

    fn build_special_polytope(&self) -> Result<RationalPolytope> {
        let r = self.datum.rank();
        let mut hs = Vec::new();
        for (i, (mu, v)) in self.rays.iter().zip(&self.v_values).enumerate() {
            hs.push(Halfspace::tagged(neg(mu), v.clone(), FacetTag::Ray(i)));
        }
        for (j, (c, n)) in self.colors.iter().zip(&self.color_constants).enumerate() {
            hs.push(Halfspace::tagged(neg(&c.image), n.clone(), FacetTag::Color(j)));
        }
        let base = match from_halfspaces(&hs, r) {
            Err(HoroError::Unbounded(w)) => {
                return Err(HoroError::InvalidPolarization(format!("the fan is not complete: polytope unbounded along {w}")))
            }
            other => other?,
        };
        for v in &base.vertices {
            for c in &self.datum.simple_restricted_coroots {
                if dot(v, c).is_negative() {
                    return Err(HoroError::InvalidPolarization(format!(
                        "vertex {} lies outside the positive restricted chamber",
                        fmt_qvec(v)
                    )));
                }
            }
        }
        // add wall tags to facets lying in chamber walls
        hs.extend(self.chamber_halfspaces());
        from_halfspaces(&hs, r)
    }

    /// Ambient moment polytope `chi + E(Delta)` in the Cartan dual.
    pub fn moment_polytope_ambient(&self) -> Result<RationalPolytope> {
        let delta = self.special_polytope()?;
        let pts: Vec<QVec> = delta.vertices.iter().map(|m| self.to_ambient(m)).collect();
        from_points(&pts, self.datum.system.ambient_dim)
    }

    /// `q = chi + E(m)`.
    pub fn to_ambient(&self, m: &[Q]) -> QVec {
        add(&self.chi, &self.datum.embed_covector(m))
    }

    /// Restricted Weyl group acting on covectors.
    pub fn weyl_covector_action(&self) -> Result<Vec<Vec<QVec>>> {
        Ok(self.datum.weyl_group.iter().map(|g| covector_action(g)).collect())
    }

    /// `Delta^t = Conv(W̄ · Delta)` and whether `Delta^t ∩ C̄^+ = Delta`.
    pub fn toric_polytope(&self) -> Result<(RationalPolytope, bool)> {
        self.cache.toric.get_or_init(|| self.build_toric_polytope()).clone()
    }

    fn build_toric_polytope(&self) -> Result<(RationalPolytope, bool)> {
        let delta = self.special_polytope()?;
        let group = self.weyl_covector_action()?;
        let dt = weyl_orbit_hull(&delta.vertices, &group)?;
        let mut hs = dt.halfspaces.clone();
        for (nrm, c) in &dt.equalities {
            hs.push(Halfspace::new(nrm.clone(), c.clone()));
            hs.push(Halfspace::new(neg(nrm), -c.clone()));
        }
        hs.extend(self.chamber_halfspaces());
        let cut = from_halfspaces(&hs, self.datum.rank())?;
        Ok((dt.clone(), cut.vertices == delta.vertices))
    }

    /// `n_Y = 1 - 2rho_H(mu_Y)` and `n_{Y,Theta} = n_Y - c_Y` per ray.
    pub fn anticanonical_coefficients(&self) -> Vec<(Q, Q)> {
        self.rays
            .iter()
            .zip(&self.boundary)
            .map(|(mu, c)| {
                let n = Q::one() - dot(&self.datum.two_rho_h, mu);
                let nt = &n - c;
                (n, nt)
            })
            .collect()
    }

    /// Whether this is the log-anticanonical polarization.
    pub fn is_log_anticanonical(&self) -> std::result::Result<(), String> {
        for (i, ((_, nt), v)) in self.anticanonical_coefficients().iter().zip(&self.v_values).enumerate() {
            if nt != v {
                return Err(format!("ray {i}: v = {} but n_Y - c_Y = {}", fmt_q(v), fmt_q(nt)));
            }
        }
        for b in &self.datum.system.cartan_basis {
            if dot(&self.chi, b) != dot(&self.datum.chi_ac, b) {
                return Err(format!(
                    "chi = {} differs from chi^ac = {}",
                    fmt_qvec(&self.chi),
                    fmt_qvec(&self.datum.chi_ac)
                ));
            }
        }
        Ok(())
    }

    /// Facet of `Delta` attached to each ray, when the ray defines a facet.
    pub fn ray_facets(&self, delta: &RationalPolytope) -> Vec<Option<usize>> {
        (0..self.rays.len())
            .map(|i| {
                if !delta.is_full_dimensional() {
                    return None;
                }
                delta.facets_with_tag(FacetTag::Ray(i)).first().copied()
            })
            .collect()
    }

    /// Exact check of `w_Delta(-mu_Y) = v_L(mu_Y)` for every ray.
    pub fn special_function_matches_support(&self) -> Result<bool> {
        let delta = self.special_polytope()?;
        Ok(self.rays.iter().zip(&self.v_values).all(|(mu, v)| &delta.support_function(&neg(mu)) == v))
    }

    /// Brion's criterion in polytope form.
    pub fn is_ample(&self) -> Result<AmpleReport> {
        let mut reasons = Vec::new();
        let delta = match self.special_polytope() {
            Ok(d) => d,
            Err(HoroError::EmptyRegion) => {
                return Ok(AmpleReport { ample: false, reasons: vec!["special polytope is empty".into()] })
            }
            Err(e) => return Err(e),
        };
        let (dt, _) = self.toric_polytope()?;
        if !dt.is_full_dimensional() {
            reasons.push(format!("toric polytope has dimension {} < {}", dt.affine_dim(), dt.dim));
            return Ok(AmpleReport { ample: false, reasons });
        }
        let group = &self.datum.weyl_group;
        let mut allowed: Vec<Vec<num::BigInt>> = Vec::new();
        for g in group {
            for mu in &self.rays {
                allowed.push(primitive_direction(&neg(&mat_vec(g, mu))));
            }
        }
        for h in &dt.halfspaces {
            if !allowed.contains(&primitive_direction(&h.normal)) {
                reasons.push(format!("facet with normal {} of the toric polytope comes from no ray", fmt_qvec(&h.normal)));
            }
        }
        for (i, (mu, v)) in self.rays.iter().zip(&self.v_values).enumerate() {
            let dir = neg(mu);
            let w = dt.support_function(&dir);
            let face: Vec<QVec> = dt.vertices.iter().filter(|x| dot(x, &dir) == w).cloned().collect();
            let fdim = from_points(&face, dt.dim)?.affine_dim();
            if &w != v || fdim + 1 != dt.dim {
                reasons.push(format!(
                    "ray {i} does not support a facet (support {} vs v = {}, face dimension {fdim})",
                    fmt_q(&w),
                    fmt_q(v)
                ));
            }
        }
        for x in delta.vertices.iter().filter(|x| dt.vertices.contains(x)) {
            for (c, n) in self.colors.iter().zip(&self.color_constants) {
                if dot(x, &c.image) <= -n.clone() {
                    reasons.push(format!("vertex {} is not strictly inside the color inequality of {}", fmt_qvec(x), c.label));
                }
            }
        }
        Ok(AmpleReport { ample: reasons.is_empty(), reasons })
    }

    /// Central slice `Delta ∩ {q(beta^vee) = 0, beta in Phi_s^+}`.
    pub fn central_slice(&self) -> Result<RationalPolytope> {
        let delta = self.special_polytope()?;
        let mut hs = delta.halfspaces.clone();
        for (nrm, c) in &delta.equalities {
            hs.push(Halfspace::new(nrm.clone(), c.clone()));
            hs.push(Halfspace::new(neg(nrm), -c.clone()));
        }
        let d = &self.datum;
        let mut rows: Vec<QVec> = Vec::new();
        for b in &d.phi_s_plus {
            let bc = coroot(b, &d.system)?;
            let mut row = d.project_point(&bc);
            row.push(-dot(&self.chi, &bc));
            rows.push(row);
        }
        for mut row in row_space_basis(&rows) {
            let c = row.pop().expect("augmented row");
            hs.push(Halfspace::new(neg(&row), -c.clone()));
            hs.push(Halfspace::new(row, c));
        }
        match from_halfspaces(&hs, d.rank()) {
            Err(HoroError::EmptyRegion) => Err(HoroError::NoBasePoint),
            other => other,
        }
    }

    /// Base point `lambda_0` in covector coordinates.
    pub fn lambda0(&self) -> Result<QVec> {
        self.cache.lambda0.get_or_init(|| self.build_lambda0()).clone()
    }

    fn build_lambda0(&self) -> Result<QVec> {
        if let Some(l) = &self.lambda0_override {
            let delta = self.special_polytope()?;
            if !delta.contains(l) {
                return Err(HoroError::InvalidPolarization(format!("lambda0 {} is outside the polytope", fmt_qvec(l))));
            }
            return Ok(l.clone());
        }
        let slice = self.central_slice()?;
        let k = q(slice.vertices.len() as i64);
        let mut c = zeros(self.datum.rank());
        for v in &slice.vertices {
            c = add(&c, v);
        }
        Ok(scale(&(Q::one() / k), &c))
    }

    /// Cones `Delta~_Y` over the ray facets with apex `lambda_0`.
    pub fn subdivision(&self) -> Result<Vec<(usize, RationalPolytope)>> {
        self.cache.subdivision.get_or_init(|| self.build_subdivision()).clone()
    }

    fn build_subdivision(&self) -> Result<Vec<(usize, RationalPolytope)>> {
        let delta = self.special_polytope()?;
        let l0 = self.lambda0()?;
        let mut out = Vec::new();
        for (i, f) in self.ray_facets(&delta).into_iter().enumerate() {
            if let Some(f) = f {
                out.push((i, cone_over_facet(&delta, &l0, f)?));
            }
        }
        Ok(out)
    }

    /// Assumptions (T) and (R) with witnesses.
    pub fn check_assumptions(&self) -> Result<AssumptionReport> {
        self.cache.assumptions.get_or_init(|| self.build_assumptions()).clone()
    }

    fn build_assumptions(&self) -> Result<AssumptionReport> {
        let d = &self.datum;
        let delta = self.special_polytope()?;
        let mut t_witness = Vec::new();
        // facets meeting a wall lie in it or are orthogonal to it
        let walls: Vec<(QVec, QVec)> = d
            .restricted_roots
            .iter()
            .map(|rr| (rr.root.clone(), d.canonical_coroot(&rr.root)))
            .collect();
        for (fi, h) in delta.halfspaces.iter().enumerate() {
            if h.tags.iter().any(|t| matches!(t, FacetTag::Wall(_))) {
                continue;
            }
            let fv = delta.facet_vertices(fi);
            for (root, cor) in &walls {
                let meets = fv.iter().any(|v| dot(v, cor).is_zero());
                if !meets {
                    continue;
                }
                let inside = fv.iter().all(|v| dot(v, cor).is_zero());
                // the facet normal lies in the wall when the root kills it
                let normal_point = mat_vec(&d.gram_inv, &h.normal);
                let orth = dot(root, &normal_point).is_zero() || dot(&h.normal, cor).is_zero();
                if !inside && !orth {
                    t_witness.push(format!(
                        "facet with normal {} meets the wall of {} transversally",
                        fmt_qvec(&h.normal),
                        fmt_qvec(root)
                    ));
                }
            }
        }
        for a in &d.phi_qu {
            let ac = coroot(a, &d.system)?;
            for v in &delta.vertices {
                if !dot(&self.to_ambient(v), &ac).is_positive() {
                    t_witness.push(format!(
                        "vertex {} meets the color wall of {}",
                        fmt_qvec(v),
                        fmt_qvec(a)
                    ));
                }
            }
        }
        let vol = delta.volume();
        let (cone_sum, l0) = match self.lambda0() {
            Ok(l0) => {
                let mut s = Q::zero();
                for (i, f) in self.ray_facets(&delta).into_iter().enumerate() {
                    match f {
                        Some(f) => match cone_over_facet(&delta, &l0, f) {
                            Ok(c) => s += c.volume(),
                            Err(HoroError::DegenerateCone(_)) => {
                                t_witness.push(format!("lambda0 lies on the facet of ray {i}"))
                            }
                            Err(e) => return Err(e),
                        },
                        None => t_witness.push(format!("ray {i} does not define a facet")),
                    }
                }
                (s, Some(l0))
            }
            Err(HoroError::NoBasePoint) => {
                t_witness.push("no base point".into());
                (Q::zero(), None)
            }
            Err(e) => return Err(e),
        };
        if cone_sum != vol {
            t_witness.push(format!("cones over ray facets have volume {} but the polytope has {}", fmt_q(&cone_sum), fmt_q(&vol)));
        }
        // (R): every wall kills at least two roots of Phi_s^+
        let mut r_witness = Vec::new();
        let mut seen: Vec<Vec<num::BigInt>> = Vec::new();
        for rr in &d.restricted_roots {
            let dir = primitive_direction(&rr.root);
            if seen.contains(&dir) {
                continue;
            }
            seen.push(dir.clone());
            let count: usize = d
                .restricted_roots
                .iter()
                .filter(|x| primitive_direction(&x.root) == dir)
                .map(|x| x.multiplicity)
                .sum();
            if count < 2 {
                r_witness.push(format!("the wall of {} kills only {count} root", fmt_qvec(&rr.root)));
            }
        }
        Ok(AssumptionReport {
            toroidal: t_witness.is_empty(),
            toroidal_witness: t_witness,
            volume: vol,
            cone_volume_sum: cone_sum,
            lambda0: l0,
            wall_multiplicity: r_witness.is_empty(),
            wall_multiplicity_witness: r_witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmpleReport {
    pub ample: bool,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionReport {
    /// Assumption (T).
    pub toroidal: bool,
    pub toroidal_witness: Vec<String>,
    pub volume: Q,
    pub cone_volume_sum: Q,
    pub lambda0: Option<QVec>,
    /// Assumption (R).
    pub wall_multiplicity: bool,
    pub wall_multiplicity_witness: Vec<String>,
}

/// Special divisor `b_1 Y_1 + b_2 Y_2 + b^± (D_1^+ + D_1^-)` of the divisor
/// `k_1^+ D_1^+ + k_1^- D_1^- + k_2 D_2` on the wonderful compactification of
/// type AIII(2, m > 4). Returns `(b_1, b_2, b^±)`.
pub fn aiii_wonderful_special_divisor(k1p: &Q, k1m: &Q, k2: &Q) -> (Q, Q, Q) {
    let b1 = k1p + k1m + k2;
    let b2 = (k1p + k1m) * qr(1, 2) + k2;
    let bpm = (k1p - k1m) * qr(1, 2);
    (b1, b2, bpm)
}

/// Rays of the wonderful compactification: primitive vectors of `N` on the
/// edges `-omega_i^vee` of the valuation cone, in simple root order.
pub fn wonderful_rays(datum: &HorosymmetricDatum) -> Result<Vec<QVec>> {
    let cone = crate::polytope::valuation_cone(datum);
    if !cone.lineality.is_empty() {
        return Err(HoroError::InvalidPolarization("valuation cone is not strictly convex".into()));
    }
    let dual = datum.dual_lattice_basis();
    cone.generators
        .iter()
        .map(|g| {
            // express g in the basis of N, then take the primitive integer direction
            let cols = crate::linalg::transpose(&dual);
            let c = crate::linalg::solve(&cols, g).ok_or_else(|| HoroError::Lattice("ray outside span".into()))?;
            let prim = primitive_direction(&c);
            let mut out = zeros(datum.rank());
            for (z, b) in prim.iter().zip(&dual) {
                out = add(&out, &scale(&Q::from_integer(z.clone()), b));
            }
            Ok(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;
    use crate::restricted::derive;
    use crate::rootdata::{build_involution, build_root_system, full_parabolic, InvolutionKind, Series};

    fn aiii25() -> HorosymmetricDatum {
        let sys = build_root_system(Series::A, 4).unwrap();
        let s = build_involution(InvolutionKind::AIII { r: 2, m: 5 }, &sys).unwrap();
        derive(&sys, &full_parabolic(&sys), &s, None).unwrap()
    }

    fn aiii_pv(b: Q) -> PolarizedVariety {
        let rays = vec![vec![qr(-1, 2), qr(-1, 2)], vec![qr(-1, 2), q(0)]];
        PolarizedVariety::new(aiii25(), rays, vec![q(1) + b, q(1)]).unwrap()
    }

    #[test]
    fn aiii_polytope_and_rays() {
        let d = aiii25();
        assert_eq!(wonderful_rays(&d).unwrap(), vec![vec![qr(-1, 2), q(0)], vec![qr(-1, 2), qr(-1, 2)]]);
        let pv = aiii_pv(qr(1, 2));
        let delta = pv.special_polytope().unwrap();
        assert_eq!(delta.vertices, vec![qvec(&[0, 0]), vec![qr(3, 2), qr(3, 2)], qvec(&[2, 0]), qvec(&[2, 1])]);
        assert_eq!(pv.anticanonical_coefficients().iter().map(|x| x.0.clone()).collect::<Vec<_>>(), vec![q(7), q(5)]);
        assert!(pv.special_function_matches_support().unwrap());
        let (dt, cut) = pv.toric_polytope().unwrap();
        assert!(cut);
        assert_eq!(dt.vertices.len(), 8);
        assert_eq!(pv.lambda0().unwrap(), qvec(&[0, 0]));
        let rep = pv.check_assumptions().unwrap();
        assert!(rep.toroidal, "{:?}", rep.toroidal_witness);
        assert!(rep.wall_multiplicity);
        assert_eq!(rep.volume, qr(7, 4));
        let (b1, b2, bpm) = aiii_wonderful_special_divisor(&q(0), &q(0), &q(1));
        assert_eq!((b1, b2, bpm), (q(1), q(1), q(0)));
    }

    #[test]
    fn aiii_ampleness_window() {
        assert!(aiii_pv(qr(2, 5)).is_ample().unwrap().ample);
        assert!(!aiii_pv(q(0)).is_ample().unwrap().ample);
        assert!(!aiii_pv(q(1)).is_ample().unwrap().ample);
    }

    #[test]
    fn p1xp1_polytopes() {
        let sys = build_root_system(Series::A, 1).unwrap();
        let s = build_involution(InvolutionKind::AIII { r: 1, m: 2 }, &sys).unwrap();
        let d = derive(&sys, &full_parabolic(&sys), &s, None).unwrap();
        let (k, m) = (q(3), q(1));
        let pv = PolarizedVariety::new(d, vec![vec![qr(-1, 2)]], vec![(&k + &m) / q(2)])
            .unwrap()
            .with_color_constant("D1+", (&k - &m) / q(2))
            .unwrap()
            .with_color_constant("D1-", (&m - &k) / q(2))
            .unwrap();
        let delta = pv.special_polytope().unwrap();
        // q = t alpha with |k-m|/2 <= t <= (k+m)/2, and m = 2t
        assert_eq!(delta.vertices, vec![vec![q(2)], vec![q(4)]]);
        let (dt, _) = pv.toric_polytope().unwrap();
        assert_eq!(dt.vertices, vec![vec![q(-4)], vec![q(4)]]);
        assert!(pv.is_ample().unwrap().ample);
        assert!(!pv.is_fiber_trivial());
    }

    #[test]
    fn assumption_r_fails_for_ai() {
        let sys = build_root_system(Series::A, 2).unwrap();
        let s = build_involution(InvolutionKind::AI, &sys).unwrap();
        let d = derive(&sys, &full_parabolic(&sys), &s, None).unwrap();
        let rays = wonderful_rays(&d).unwrap();
        let pv = PolarizedVariety::anticanonical(d, rays, vec![q(0), q(0)]).unwrap();
        assert!(!pv.check_assumptions().unwrap().wall_multiplicity);
    }

    #[test]
    fn rejects_bad_rays() {
        let d = aiii25();
        assert!(PolarizedVariety::new(d.clone(), vec![vec![qr(1, 2), q(0)]], vec![q(1)]).is_err());
        assert!(PolarizedVariety::new(d.clone(), vec![vec![q(-1), q(0)]], vec![q(1)]).is_err());
        let pv = PolarizedVariety::new(d, vec![vec![qr(-1, 2), q(0)]], vec![q(1)]).unwrap();
        assert!(pv.with_boundary(vec![q(1)]).is_err());
    }
}
