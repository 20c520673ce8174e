//! Restricted root data of a horosymmetric homogeneous space: the split
//! space `a_s`, restricted roots and coroots, the restricted Weyl group,
//! `2 rho_H`, the anticanonical isotropy character and the spherical lattice.
//!
//! Coordinates. Points of `a_s` are written in the basis `l_1, ..., l_r`
//! stored in [`HorosymmetricDatum::a_s_basis`]; covectors on `a_s` are
//! written by their values on that basis, so pairing is the plain dot product.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{HoroError, Result};
use crate::lattice::{covolume, dual_basis, integer_kernel, lattice_basis};
use crate::linalg::{identity, inverse, mat_mul, mat_vec, nullspace, row_space_basis, solve, transpose, QMat};
use crate::rational::{add, dot, fmt_qvec, is_zero_vec, neg, q, qr, scale, sub, zeros, Q, QVec};
use crate::rootdata::{
    coroot, AmbientRootSystem, Involution, InvolutionKind, ParabolicChoice,
};

/// How the spherical lattice `M` is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeMode {
    /// `H ∩ L` is the fixed-point subgroup: `M = (1 - sigma) X(T)`, which is the
    /// lattice of restricted weights for simply connected symmetric spaces.
    FixedSubgroup,
    /// `H ∩ L` is the normalizer of the fixed-point subgroup: `M` is the
    /// lattice generated by the restricted roots.
    Normalizer,
    /// `M` consists of the characters vanishing on the coroots of the Levi
    /// (horospherical spaces, tori).
    Characters,
}

/// Origin of a color.
#[derive(Debug, Clone, PartialEq)]
pub enum ColorOrigin {
    /// Color of the symmetric fiber attached to the simple restricted root with this index.
    Fiber(usize),
    /// Pull-back of the Schubert divisor of `G/P` attached to this simple root.
    Flag(QVec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColorImage {
    pub origin: ColorOrigin,
    /// Image `rho(D)` as a point of `a_s`.
    pub image: QVec,
    /// Number of colors with this image, when known.
    pub fiber_degree: Option<usize>,
}

/// Individual color, after expanding fiber degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct Color {
    pub label: String,
    pub image: QVec,
    pub origin: ColorOrigin,
}

/// Restricted root with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedRoot {
    /// `alpha - sigma(alpha)` as a covector on `a_s`.
    pub root: QVec,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorosymmetricDatum {
    pub system: AmbientRootSystem,
    pub parabolic: ParabolicChoice,
    pub sigma: Involution,
    pub lattice_mode: LatticeMode,
    /// Positive system of `G` after the Borel adjustment.
    pub positive_roots: Vec<QVec>,
    pub simple_roots: Vec<QVec>,
    pub rho: QVec,
    pub phi_l_plus: Vec<QVec>,
    pub phi_l_sigma: Vec<QVec>,
    pub phi_s_plus: Vec<QVec>,
    pub phi_qu: Vec<QVec>,
    /// Ambient vectors spanning `a_s`.
    pub a_s_basis: Vec<QVec>,
    pub gram: QMat,
    pub gram_inv: QMat,
    /// Distinct positive restricted roots `alpha - sigma(alpha)`, with multiplicities.
    pub restricted_roots: Vec<RestrictedRoot>,
    pub simple_restricted_roots: Vec<QVec>,
    /// Simple spherical roots: the simple restricted roots, doubled when the
    /// double is again a restricted root.
    pub spherical_roots: Vec<QVec>,
    /// Coroots of the spherical roots, as points of `a_s`.
    pub simple_restricted_coroots: Vec<QVec>,
    /// `sum alpha∘P` over `Phi_{Q^u} ∪ Phi_s^+`, as a covector on `a_s`.
    pub two_rho_h: QVec,
    /// `sum alpha∘H` over `Phi_{Q^u}`, an ambient covector.
    pub chi_ac: QVec,
    /// Basis of the spherical lattice `M`, as covectors on `a_s`.
    pub lattice_basis: Vec<QVec>,
    pub lattice_covolume: Q,
    /// Restricted Weyl group acting on points of `a_s`.
    pub weyl_group: Vec<QMat>,
}

/// Bound on the order of the restricted Weyl group computed by [`derive`].
pub const WEYL_BOUND: usize = 100_000;

impl HorosymmetricDatum {
    pub fn rank(&self) -> usize {
        self.a_s_basis.len()
    }

    /// Restriction `alpha∘P` of an ambient covector to `a_s`.
    pub fn restrict(&self, covector: &[Q]) -> QVec {
        self.a_s_basis.iter().map(|l| dot(covector, l)).collect()
    }

    /// Coordinates of the orthogonal projection `P(v)` of an ambient vector.
    pub fn project_point(&self, v: &[Q]) -> QVec {
        mat_vec(&self.gram_inv, &self.restrict(v))
    }

    /// Ambient vector of a point of `a_s` given in coordinates.
    pub fn point_to_ambient(&self, x: &[Q]) -> QVec {
        let mut out = zeros(self.system.ambient_dim);
        for (c, l) in x.iter().zip(&self.a_s_basis) {
            out = add(&out, &scale(c, l));
        }
        out
    }

    /// Ambient covector restricting to `m` on `a_s` and vanishing on its
    /// orthogonal complement.
    pub fn embed_covector(&self, m: &[Q]) -> QVec {
        self.point_to_ambient(&mat_vec(&self.gram_inv, m))
    }

    /// `pi(alpha) = alpha∘P` on `a_s`.
    pub fn pi(&self, alpha: &[Q]) -> QVec {
        self.restrict(alpha)
    }

    /// Inner product of two covectors on `a_s` induced by the ambient dot product.
    pub fn covector_inner(&self, a: &[Q], b: &[Q]) -> Q {
        dot(a, &mat_vec(&self.gram_inv, b))
    }

    /// Coroot of a restricted root computed from the induced inner product.
    pub fn canonical_coroot(&self, rbar: &[Q]) -> QVec {
        let n = self.covector_inner(rbar, rbar);
        scale(&(q(2) / n), &mat_vec(&self.gram_inv, rbar))
    }

    /// All roots of `Phi_s` (both signs).
    pub fn phi_s(&self) -> Vec<QVec> {
        let mut v = self.phi_s_plus.clone();
        v.extend(self.phi_s_plus.iter().map(|a| neg(a)));
        v
    }

    /// Roots entering the Duistermaat–Heckman density.
    pub fn density_roots(&self) -> Vec<QVec> {
        let mut v = self.phi_qu.clone();
        v.extend(self.phi_s_plus.iter().cloned());
        v
    }

    /// Basis of the covectors on `a_s` fixed by the restricted Weyl group
    /// (those vanishing on every restricted coroot).
    pub fn central_covectors(&self) -> Vec<QVec> {
        nullspace(&self.simple_restricted_coroots, self.rank())
    }

    /// Basis of the points of `a_s` fixed by the restricted Weyl group.
    pub fn central_points(&self) -> Vec<QVec> {
        nullspace(&self.simple_restricted_roots, self.rank())
    }

    /// Basis of the dual lattice `N = Hom(M, Z)`, as points of `a_s`.
    pub fn dual_lattice_basis(&self) -> Vec<QVec> {
        dual_basis(&self.lattice_basis).expect("lattice basis has full rank")
    }
}

/// Derives the restricted data. `lattice_mode = None` selects
/// [`LatticeMode::Characters`] when `Phi_s` is empty and
/// [`LatticeMode::FixedSubgroup`] otherwise.
pub fn derive(
    system: &AmbientRootSystem,
    parabolic: &ParabolicChoice,
    sigma: &Involution,
    lattice_mode: Option<LatticeMode>,
) -> Result<HorosymmetricDatum> {
    for a in &parabolic.phi_l {
        let s = sigma.apply(a);
        if !parabolic.phi_l.contains(&s) {
            return Err(HoroError::LeviNotStable(format!(
                "sigma maps {} to {}",
                fmt_qvec(a),
                fmt_qvec(&s)
            )));
        }
    }
    let w = borel_adjustment(system, parabolic, sigma)?;
    let positive_roots: Vec<QVec> = system.positive_roots.iter().map(|r| mat_vec(&w, r)).collect();
    let simple_roots: Vec<QVec> = system.simple_roots.iter().map(|r| mat_vec(&w, r)).collect();
    let rho = mat_vec(&w, &system.rho);
    let phi_l_plus: Vec<QVec> = parabolic.phi_l_plus.iter().map(|r| mat_vec(&w, r)).collect();
    let phi_qu: Vec<QVec> = positive_roots.iter().filter(|r| !phi_l_plus.contains(r)).cloned().collect();
    let phi_l_sigma: Vec<QVec> = phi_l_plus.iter().filter(|a| &sigma.apply(a) == *a).cloned().collect();
    let phi_s_plus: Vec<QVec> = phi_l_plus.iter().filter(|a| &sigma.apply(a) != *a).cloned().collect();

    // split space: (-1)-eigenspace of sigma in the Cartan subspace
    let n = system.ambient_dim;
    let cb = &system.cartan_basis;
    let cols: Vec<QVec> = cb.iter().map(|b| add(&sigma.apply(b), b)).collect();
    let coeffs = nullspace(&transpose(&cols), cb.len());
    let vecs: Vec<QVec> = coeffs
        .iter()
        .map(|c| c.iter().zip(cb).fold(zeros(n), |acc, (ci, bi)| add(&acc, &scale(ci, bi))))
        .collect();
    let a_s_basis = row_space_basis(&vecs);
    let r = a_s_basis.len();
    let gram: QMat = a_s_basis.iter().map(|a| a_s_basis.iter().map(|b| dot(a, b)).collect()).collect();
    let gram_inv = if r == 0 { Vec::new() } else { inverse(&gram).expect("basis is independent") };

    let mut datum = HorosymmetricDatum {
        system: system.clone(),
        parabolic: parabolic.clone(),
        sigma: sigma.clone(),
        lattice_mode: LatticeMode::FixedSubgroup,
        positive_roots,
        simple_roots,
        rho,
        phi_l_plus,
        phi_l_sigma,
        phi_s_plus,
        phi_qu,
        a_s_basis,
        gram,
        gram_inv,
        restricted_roots: Vec::new(),
        simple_restricted_roots: Vec::new(),
        spherical_roots: Vec::new(),
        simple_restricted_coroots: Vec::new(),
        two_rho_h: zeros(r),
        chi_ac: zeros(n),
        lattice_basis: Vec::new(),
        lattice_covolume: Q::one(),
        weyl_group: Vec::new(),
    };

    // every root of Phi_s must be moved by the involution's restriction
    for a in &datum.phi_s_plus {
        if is_zero_vec(&datum.pi(a)) {
            return Err(HoroError::Internal(format!(
                "root {} is not fixed by sigma but vanishes on a_s",
                fmt_qvec(a)
            )));
        }
    }

    // restricted roots with multiplicities, in order of first appearance
    let mut order: Vec<QVec> = Vec::new();
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for a in &datum.phi_s_plus {
        let rb = scale(&q(2), &datum.pi(a));
        let idx = match order.iter().position(|x| x == &rb) {
            Some(i) => i,
            None => {
                order.push(rb);
                order.len() - 1
            }
        };
        *mult.entry(idx).or_default() += 1;
    }
    for rb in &order {
        if order.contains(&neg(rb)) {
            return Err(HoroError::NoCompatibleBorel);
        }
    }
    datum.restricted_roots = order
        .iter()
        .enumerate()
        .map(|(i, rb)| RestrictedRoot { root: rb.clone(), multiplicity: mult[&i] })
        .collect();

    // simple restricted roots: positive roots that are not sums of two positive roots
    let simple: Vec<QVec> = order
        .iter()
        .filter(|x| {
            !order.iter().any(|a| order.iter().any(|b| &add(a, b) == *x))
        })
        .cloned()
        .collect();
    let mut simple_coroots = Vec::new();
    let mut spherical = Vec::new();
    for s0 in &simple {
        let double = scale(&q(2), s0);
        let s = if order.contains(&double) { double } else { s0.clone() };
        let alpha = datum
            .phi_s_plus
            .iter()
            .find(|a| scale(&q(2), &datum.pi(a)) == s)
            .expect("simple root comes from a root")
            .clone();
        simple_coroots.push(restricted_coroot(&alpha, &datum)?);
        spherical.push(s);
    }
    datum.simple_restricted_roots = simple;
    datum.spherical_roots = spherical;
    datum.simple_restricted_coroots = simple_coroots;

    let mut two_rho_h = zeros(r);
    for a in datum.density_roots() {
        two_rho_h = add(&two_rho_h, &datum.pi(&a));
    }
    datum.two_rho_h = two_rho_h;
    let mut chi_ac = zeros(n);
    for a in &datum.phi_qu {
        chi_ac = add(&chi_ac, &scale(&qr(1, 2), &add(a, &sigma.apply(a))));
    }
    datum.chi_ac = chi_ac;

    let mode = lattice_mode.unwrap_or(if datum.phi_s_plus.is_empty() {
        LatticeMode::Characters
    } else {
        LatticeMode::FixedSubgroup
    });
    datum.lattice_mode = mode;
    let gens: Vec<QVec> = match mode {
        LatticeMode::FixedSubgroup => system
            .weight_generators
            .iter()
            .map(|w| scale(&q(2), &datum.restrict(w)))
            .collect(),
        LatticeMode::Normalizer => datum.restricted_roots.iter().map(|x| x.root.clone()).collect(),
        LatticeMode::Characters => {
            let levi_coroots: Vec<QVec> = datum
                .phi_l_plus
                .iter()
                .map(|b| coroot(b, system))
                .collect::<Result<_>>()?;
            let wg = &system.weight_generators;
            if levi_coroots.is_empty() {
                wg.iter().map(|w| datum.restrict(w)).collect()
            } else {
                let cols: Vec<QVec> = wg.iter().map(|w| levi_coroots.iter().map(|c| dot(w, c)).collect()).collect();
                integer_kernel(&cols)
                    .iter()
                    .map(|z| {
                        let lam = z.iter().zip(wg).fold(zeros(n), |acc, (zi, wi)| {
                            add(&acc, &scale(&Q::from_integer(zi.clone()), wi))
                        });
                        datum.restrict(&lam)
                    })
                    .collect()
            }
        }
    };
    let basis = if r == 0 { Vec::new() } else { lattice_basis(&gens) };
    if basis.len() != r {
        return Err(HoroError::Lattice(format!(
            "generators span a lattice of rank {} in a split space of dimension {r}",
            basis.len()
        )));
    }
    datum.lattice_covolume = covolume(&basis)?;
    datum.lattice_basis = basis;
    datum.weyl_group = restricted_weyl_group(&datum, WEYL_BOUND)?;
    Ok(datum)
}

/// Searches the Weyl group of the Levi, breadth first, for a positive system
/// compatible with the involution. Returns the ambient matrix `w`.
fn borel_adjustment(system: &AmbientRootSystem, parabolic: &ParabolicChoice, sigma: &Involution) -> Result<QMat> {
    let n = system.ambient_dim;
    let refl: Vec<QMat> = parabolic
        .levi_simple_roots
        .iter()
        .map(|&i| {
            let a = &system.simple_roots[i];
            let c = coroot(a, system).expect("simple root");
            let mut m = identity(n);
            for r in 0..n {
                for s in 0..n {
                    m[r][s] -= &a[r] * &c[s];
                }
            }
            m
        })
        .collect();
    let compatible = |pos: &[QVec]| {
        pos.iter().all(|a| {
            let s = sigma.apply(a);
            &s == a || pos.contains(&neg(&s))
        })
    };
    let key = |pos: &[QVec]| -> BTreeSet<Vec<String>> {
        pos.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()
    };
    let start = identity(n);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key(&parabolic.phi_l_plus));
    queue.push_back(start);
    let bound = 100_000;
    while let Some(w) = queue.pop_front() {
        let pos: Vec<QVec> = parabolic.phi_l_plus.iter().map(|r| mat_vec(&w, r)).collect();
        if compatible(&pos) {
            return Ok(w);
        }
        for s in &refl {
            let w2 = mat_mul(s, &w);
            let pos2: Vec<QVec> = parabolic.phi_l_plus.iter().map(|r| mat_vec(&w2, r)).collect();
            if seen.insert(key(&pos2)) {
                queue.push_back(w2);
            }
        }
        if seen.len() > bound {
            break;
        }
    }
    Err(HoroError::NoCompatibleBorel)
}

/// Restricted coroot of a root `alpha` of `Phi_s`, as a point of `a_s`.
pub fn restricted_coroot(alpha: &[Q], datum: &HorosymmetricDatum) -> Result<QVec> {
    let sigma = &datum.sigma;
    let sa = sigma.apply(alpha);
    if sa == alpha {
        return Err(HoroError::RootFixed(fmt_qvec(alpha)));
    }
    if !datum.phi_s().iter().any(|b| b.as_slice() == alpha) {
        return Err(HoroError::NotARoot(fmt_qvec(alpha)));
    }
    let ac = coroot(alpha, &datum.system)?;
    let pairing = dot(&sa, &ac);
    let v = if sa == neg(alpha) || pairing == q(-2) {
        scale(&qr(1, 2), &ac)
    } else if pairing.is_zero() {
        scale(&qr(1, 2), &sub(&ac, &sigma.apply(&ac)))
    } else if pairing == q(1) {
        let d = sub(alpha, &sa);
        scale(&(q(2) / dot(&d, &d)), &d)
    } else {
        return Err(HoroError::UnexpectedPairing { root: fmt_qvec(alpha), value: pairing.to_string() });
    };
    Ok(datum.project_point(&v))
}

/// Elements of the restricted Weyl group acting on points of `a_s`
/// (matrices in the basis `l_i`). The identity comes first.
pub fn restricted_weyl_group(datum: &HorosymmetricDatum, bound: usize) -> Result<Vec<QMat>> {
    let r = datum.rank();
    let gens: Vec<QMat> = datum
        .spherical_roots
        .iter()
        .zip(&datum.simple_restricted_coroots)
        .map(|(a, c)| {
            let mut m = identity(r);
            for i in 0..r {
                for j in 0..r {
                    m[i][j] -= &c[i] * &a[j];
                }
            }
            m
        })
        .collect();
    let mut elems = vec![identity(r)];
    let mut idx = 0;
    while idx < elems.len() {
        let g = elems[idx].clone();
        for s in &gens {
            let h = mat_mul(s, &g);
            if !elems.contains(&h) {
                elems.push(h);
                if elems.len() > bound {
                    return Err(HoroError::WeylGroupTooLarge(bound));
                }
            }
        }
        idx += 1;
    }
    Ok(elems)
}

/// Contragredient action of a point matrix on covectors: `m -> m ∘ g^{-1}`.
pub fn covector_action(g: &[QVec]) -> QMat {
    transpose(&inverse(g).expect("Weyl group elements are invertible"))
}

/// Cartan type of the restricted root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedType {
    /// Irreducible components such as `"BC2"`, `"C3"`, `"A1"`.
    pub components: Vec<String>,
    /// Every restricted root is twice a root (split case).
    pub doubled: bool,
    /// Raw description when some component could not be classified.
    pub unclassified: Option<String>,
}

impl RestrictedType {
    pub fn label(&self) -> String {
        if let Some(raw) = &self.unclassified {
            return format!("unclassified ({raw})");
        }
        if self.components.is_empty() {
            return "empty".into();
        }
        let body = self.components.join("×");
        if self.doubled {
            format!("2Φ({body})")
        } else {
            body
        }
    }
}

impl fmt::Display for RestrictedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Classifies the restricted root system by its Dynkin diagram, detecting
/// non-reduced components (`BC_n`) and the doubled split case.
pub fn classify_restricted_type(datum: &HorosymmetricDatum) -> RestrictedType {
    let simple = &datum.simple_restricted_roots;
    let roots: Vec<QVec> = datum.restricted_roots.iter().map(|x| x.root.clone()).collect();
    let doubled = !datum.phi_s_plus.is_empty()
        && datum.phi_s_plus.iter().all(|a| datum.sigma.apply(a) == neg(a));
    let k = simple.len();
    let coroots: Vec<QVec> = simple.iter().map(|s| datum.canonical_coroot(s)).collect();
    let cartan: Vec<Vec<Q>> = (0..k).map(|i| (0..k).map(|j| dot(&simple[i], &coroots[j])).collect()).collect();
    let len2: Vec<Q> = simple.iter().map(|s| datum.covector_inner(s, s)).collect();
    // connected components
    let mut comp = vec![usize::MAX; k];
    let mut ncomp = 0;
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = ncomp;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if comp[j] == usize::MAX && !cartan[i][j].is_zero() {
                    comp[j] = ncomp;
                    stack.push(j);
                }
            }
        }
        ncomp += 1;
    }
    let mut components = Vec::new();
    for c in 0..ncomp {
        let nodes: Vec<usize> = (0..k).filter(|&i| comp[i] == c).collect();
        let nonreduced = nodes.iter().any(|&i| roots.contains(&scale(&q(2), &simple[i])));
        match dynkin_label(&nodes, &cartan, &len2, nonreduced) {
            Some(l) => components.push(l),
            None => {
                return RestrictedType {
                    components,
                    doubled,
                    unclassified: Some(format!(
                        "Cartan matrix {:?}",
                        cartan.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
                    )),
                }
            }
        }
    }
    components.sort();
    RestrictedType { components, doubled, unclassified: None }
}

fn dynkin_label(nodes: &[usize], cartan: &[Vec<Q>], len2: &[Q], nonreduced: bool) -> Option<String> {
    let n = nodes.len();
    let bond = |i: usize, j: usize| -> i64 {
        let p = &cartan[i][j] * &cartan[j][i];
        p.to_integer().try_into().unwrap_or(99)
    };
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let m = bond(nodes[a], nodes[b]);
            if m > 0 {
                degree[a] += 1;
                degree[b] += 1;
                edges.push((a, b, m));
            }
        }
    }
    if edges.len() + 1 != n {
        return None; // not a tree
    }
    if n == 1 {
        return Some(if nonreduced { "BC1".into() } else { "A1".into() });
    }
    if edges.iter().any(|e| e.2 > 3) {
        return None;
    }
    if edges.iter().any(|e| e.2 == 3) {
        return (n == 2).then(|| "G2".to_string());
    }
    let doubles: Vec<_> = edges.iter().filter(|e| e.2 == 2).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    if doubles.len() > 1 || (doubles.len() == 1 && max_deg > 2) {
        return None;
    }
    if doubles.len() == 1 {
        let (a, b, _) = *doubles[0];
        let end_edge = degree[a] == 1 || degree[b] == 1;
        if !end_edge {
            return (n == 4).then(|| "F4".to_string());
        }
        let maxlen = nodes.iter().map(|&i| len2[i].clone()).max().unwrap();
        let long = nodes.iter().filter(|&&i| len2[i] == maxlen).count();
        if nonreduced {
            return Some(format!("BC{n}"));
        }
        return Some(if long == 1 { format!("C{n}") } else { format!("B{n}") });
    }
    if nonreduced {
        return None;
    }
    if max_deg <= 2 {
        return Some(format!("A{n}"));
    }
    // one branch node: D or E
    let center = (0..n).find(|&i| degree[i] == 3)?;
    if degree.iter().filter(|&&d| d == 3).count() > 1 {
        return None;
    }
    let mut arms = Vec::new();
    for &(a, b, _) in &edges {
        let start = if a == center { b } else if b == center { a } else { continue };
        let mut len = 1;
        let mut prev = center;
        let mut cur = start;
        loop {
            let next = edges.iter().find_map(|&(x, y, _)| {
                if x == cur && y != prev { Some(y) } else if y == cur && x != prev { Some(x) } else { None }
            });
            match next {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                    len += 1;
                }
                None => break,
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Some(format!("D{n}")),
        [1, 2, 2] => Some("E6".into()),
        [1, 2, 3] => Some("E7".into()),
        [1, 2, 4] => Some("E8".into()),
        _ => None,
    }
}

/// Images of colors: simple restricted coroots (colors of the symmetric
/// fiber) followed by restrictions of simple coroots of `Phi_{Q^u}` (colors
/// pulled back from `G/P`).
pub fn color_images(datum: &HorosymmetricDatum) -> Vec<ColorImage> {
    let mut out = Vec::new();
    let aiii_last = match datum.sigma.kind {
        InvolutionKind::AIII { .. } => datum
            .simple_restricted_coroots
            .iter()
            .position(|c| c.iter().filter(|x| !x.is_zero()).count() == 1),
        _ => None,
    };
    for (i, c) in datum.simple_restricted_coroots.iter().enumerate() {
        let fiber_degree = match &datum.sigma.kind {
            InvolutionKind::AI if datum.rank() >= 2 => Some(1),
            InvolutionKind::AII { .. } | InvolutionKind::GroupType { .. } => Some(1),
            InvolutionKind::AIII { .. } => Some(if Some(i) == aiii_last { 2 } else { 1 }),
            _ => None,
        };
        out.push(ColorImage { origin: ColorOrigin::Fiber(i), image: c.clone(), fiber_degree });
    }
    for s in &datum.simple_roots {
        if datum.phi_qu.contains(s) {
            let cv = coroot(s, &datum.system).expect("simple root");
            out.push(ColorImage {
                origin: ColorOrigin::Flag(s.clone()),
                image: datum.project_point(&cv),
                fiber_degree: Some(1),
            });
        }
    }
    out
}

/// Individual colors, one entry per color (fiber degrees expanded; unknown
/// degrees count as one color).
pub fn colors(datum: &HorosymmetricDatum) -> Vec<Color> {
    let mut out = Vec::new();
    for ci in color_images(datum) {
        let deg = ci.fiber_degree.unwrap_or(1);
        let base = match &ci.origin {
            ColorOrigin::Fiber(i) => format!("D{}", i + 1),
            ColorOrigin::Flag(a) => format!("D[{}]", fmt_qvec(a)),
        };
        for k in 0..deg {
            let label = if deg == 2 { format!("{base}{}", if k == 0 { "+" } else { "-" }) } else { base.clone() };
            out.push(Color { label, image: ci.image.clone(), origin: ci.origin.clone() });
        }
    }
    out
}

/// Solves `v = sum_i c_i * simple_restricted_root_i`. Returns the
/// coefficients when `v` lies in their span.
pub fn simple_root_coefficients(datum: &HorosymmetricDatum, v: &[Q]) -> Option<QVec> {
    let cols = transpose(&datum.simple_restricted_roots);
    if datum.simple_restricted_roots.is_empty() {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let c = solve(&cols, v)?;
    (mat_vec(&cols, &c) == v).then_some(c)
}

/// Whether a point of `a_s` lies in the closed positive restricted chamber.
pub fn in_closed_chamber(datum: &HorosymmetricDatum, x: &[Q]) -> bool {
    datum.restricted_roots.iter().all(|r| !dot(&r.root, x).is_negative())
}
