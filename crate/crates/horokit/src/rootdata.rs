//! Classical root systems, involutions of their Cartan subspaces, and
//! parabolic choices.
//!
//! Vectors live in an ambient coordinate space `Q^d` with the standard dot
//! product. For type `A_{n-1}` the ambient space is `Q^n` and the Cartan
//! subspace is the trace-zero hyperplane; the all-ones direction is simply
//! never touched by roots or coroots.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{HoroError, Result};
use crate::linalg::{identity, mat_mul, mat_vec, rank, row_space_basis, solve, transpose, QMat};
use crate::rational::{add, dot, fmt_qvec, neg, q, qr, scale, unit, zeros, Q, QVec};

/// Cartan series of a classical root system. `T` denotes a torus (no roots),
/// used for toric and horospherical torus factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    T,
}

impl Series {
    pub fn parse(s: &str) -> Result<Series> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "T" | "TORUS" => Ok(Series::T),
            other => Err(HoroError::UnsupportedSeries(other.to_string())),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::T => "T",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmbientRootSystem {
    pub series: Series,
    pub rank: usize,
    pub ambient_dim: usize,
    pub positive_roots: Vec<QVec>,
    pub simple_roots: Vec<QVec>,
    pub rho: QVec,
    /// Basis of the Cartan subspace (span of coroots, or everything for a torus).
    pub cartan_basis: Vec<QVec>,
    /// Generators of the weight lattice of the simply connected group.
    pub weight_generators: Vec<QVec>,
}

impl AmbientRootSystem {
    /// All roots, positive ones first, then their negatives.
    pub fn roots(&self) -> Vec<QVec> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| neg(r)));
        all
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        self.positive_roots.iter().any(|r| r.as_slice() == v || neg(r) == v)
    }

    /// Coordinates of `v` in the basis of simple roots.
    pub fn simple_coordinates(&self, v: &[Q]) -> Option<QVec> {
        let m = transpose(&self.simple_roots);
        let c = solve(&m, v)?;
        (mat_vec(&m, &c) == v).then_some(c)
    }

    /// Simple reflection `s_i` applied to a covector.
    pub fn reflect(&self, i: usize, v: &[Q]) -> QVec {
        let a = &self.simple_roots[i];
        let c = coroot_vector(a);
        let k = dot(v, &c);
        v.iter().zip(a).map(|(x, y)| x - &k * y).collect()
    }
}

fn coroot_vector(a: &[Q]) -> QVec {
    let n = dot(a, a);
    scale(&(q(2) / n), a)
}

/// Builds the root system of the given series and rank.
pub fn build_root_system(series: Series, rank: usize) -> Result<AmbientRootSystem> {
    if rank == 0 {
        return Err(HoroError::InvalidRank { series: series.to_string(), rank });
    }
    let e = |n: usize, i: usize| unit(n, i);
    let diff = |n: usize, i: usize, j: usize| add(&e(n, i), &neg(&e(n, j)));
    let sum = |n: usize, i: usize, j: usize| add(&e(n, i), &e(n, j));
    let (ambient_dim, positive_roots, simple_roots, weight_generators): (usize, Vec<QVec>, Vec<QVec>, Vec<QVec>) =
        match series {
            Series::A => {
                let n = rank + 1;
                let pos = (0..n).flat_map(|j| ((j + 1)..n).map(move |k| (j, k))).map(|(j, k)| diff(n, j, k)).collect();
                let simple = (0..rank).map(|i| diff(n, i, i + 1)).collect();
                (n, pos, simple, (0..n).map(|i| e(n, i)).collect())
            }
            Series::B | Series::C | Series::D => {
                let n = rank;
                if series == Series::D && n < 2 {
                    return Err(HoroError::InvalidRank { series: series.to_string(), rank });
                }
                let mut pos = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        pos.push(diff(n, i, j));
                        pos.push(sum(n, i, j));
                    }
                }
                let mut simple: Vec<QVec> = (0..n.saturating_sub(1)).map(|i| diff(n, i, i + 1)).collect();
                let mut weights: Vec<QVec> = (0..n).map(|i| e(n, i)).collect();
                match series {
                    Series::B => {
                        pos.extend((0..n).map(|i| e(n, i)));
                        simple.push(e(n, n - 1));
                        weights.push(vec![qr(1, 2); n]);
                    }
                    Series::C => {
                        pos.extend((0..n).map(|i| scale(&q(2), &e(n, i))));
                        simple.push(scale(&q(2), &e(n, n - 1)));
                    }
                    _ => {
                        simple.push(sum(n, n - 2, n - 1));
                        weights.push(vec![qr(1, 2); n]);
                    }
                }
                (n, pos, simple, weights)
            }
            Series::T => (rank, Vec::new(), Vec::new(), (0..rank).map(|i| e(rank, i)).collect()),
        };
    let mut rho = zeros(ambient_dim);
    for r in &positive_roots {
        rho = add(&rho, r);
    }
    rho = scale(&qr(1, 2), &rho);
    let cartan_basis = if series == Series::T {
        identity(ambient_dim)
    } else {
        row_space_basis(&positive_roots.iter().map(|r| coroot_vector(r)).collect::<Vec<_>>())
    };
    let sys = AmbientRootSystem {
        series,
        rank,
        ambient_dim,
        positive_roots,
        simple_roots,
        rho,
        cartan_basis,
        weight_generators,
    };
    validate_root_system(&sys)?;
    Ok(sys)
}

fn validate_root_system(sys: &AmbientRootSystem) -> Result<()> {
    for r in &sys.positive_roots {
        let c = sys
            .simple_coordinates(r)
            .ok_or_else(|| HoroError::Internal(format!("root {} outside simple span", fmt_qvec(r))))?;
        if !c.iter().all(|x| x.is_integer() && !x.is_negative()) {
            return Err(HoroError::Internal(format!("root {} not a positive combination", fmt_qvec(r))));
        }
    }
    for i in 0..sys.simple_roots.len() {
        for r in sys.roots() {
            if !sys.is_root(&sys.reflect(i, &r)) {
                return Err(HoroError::Internal("root system not closed under reflections".into()));
            }
        }
    }
    Ok(())
}

/// Coroot `2 alpha / <alpha, alpha>` of a root of `system`.
pub fn coroot(alpha: &[Q], system: &AmbientRootSystem) -> Result<QVec> {
    if !system.is_root(alpha) {
        return Err(HoroError::NotARoot(fmt_qvec(alpha)));
    }
    Ok(coroot_vector(alpha))
}

/// Family of an involution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InvolutionKind {
    /// `alpha -> -alpha` on the whole root lattice.
    AI,
    /// Quaternionic type on `A_{2p-1}`.
    AII { p: usize },
    /// Permutation `i -> m+1-i` on the first and last `r` coordinates.
    AIII { r: usize, m: usize },
    /// Swap of two identical coordinate blocks of size `block`.
    GroupType { block: usize },
    /// Identity on the derived part of the Levi given by `levi`, minus the
    /// identity on the complementary central directions.
    Horospherical { levi: Vec<usize> },
    /// User-supplied matrix.
    ExplicitMatrix,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionKind::AI => write!(f, "AI"),
            InvolutionKind::AII { p } => write!(f, "AII({p})"),
            InvolutionKind::AIII { r, m } => write!(f, "AIII({r},{m})"),
            InvolutionKind::GroupType { block } => write!(f, "group type (block {block})"),
            InvolutionKind::Horospherical { .. } => write!(f, "horospherical"),
            InvolutionKind::ExplicitMatrix => write!(f, "explicit matrix"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Involution {
    pub kind: InvolutionKind,
    /// Square matrix acting on ambient (co)vectors by `v -> matrix * v`.
    pub matrix: QMat,
}

impl Involution {
    pub fn apply(&self, v: &[Q]) -> QVec {
        mat_vec(&self.matrix, v)
    }
}

/// Builds the involution matrix of the given kind and validates it.
pub fn build_involution(kind: InvolutionKind, system: &AmbientRootSystem) -> Result<Involution> {
    let n = system.ambient_dim;
    let bad = |msg: String| HoroError::InvalidInvolution(msg);
    let perm_matrix = |perm: &dyn Fn(usize) -> usize| -> QMat {
        (0..n).map(|i| (0..n).map(|j| if perm(j) == i { Q::one() } else { Q::zero() }).collect()).collect()
    };
    let matrix = match &kind {
        InvolutionKind::AI => {
            if system.series != Series::A {
                return Err(bad("AI requires series A".into()));
            }
            let mut m = identity(n);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = -Q::one();
            }
            m
        }
        InvolutionKind::AII { p } => {
            if system.series != Series::A || n != 2 * p || *p < 1 {
                return Err(bad(format!("AII({p}) needs series A with ambient dimension {}", 2 * p)));
            }
            let mut m = vec![zeros(n); n];
            for j in 0..*p {
                m[2 * j][2 * j + 1] = -Q::one();
                m[2 * j + 1][2 * j] = -Q::one();
            }
            m
        }
        InvolutionKind::AIII { r, m } => {
            if system.series != Series::A || n != *m || *r == 0 || 2 * r > *m {
                return Err(bad(format!("AIII({r},{m}) needs series A in ambient dimension {m} and 0 < r <= m/2")));
            }
            let (r, m) = (*r, *m);
            let ups = move |i: usize| if i < r || i >= m - r { m - 1 - i } else { i };
            perm_matrix(&ups)
        }
        InvolutionKind::GroupType { block } => {
            if *block == 0 || n != 2 * block {
                return Err(bad(format!("group type with block {block} needs ambient dimension {}", 2 * block)));
            }
            let b = *block;
            perm_matrix(&move |i: usize| if i < b { i + b } else { i - b })
        }
        InvolutionKind::Horospherical { levi } => {
            if levi.iter().any(|&i| i >= system.simple_roots.len()) {
                return Err(bad("Levi index out of range".into()));
            }
            horospherical_matrix(system, levi)
        }
        InvolutionKind::ExplicitMatrix => return Err(bad("use build_explicit_involution for explicit matrices".into())),
    };
    let inv = Involution { kind, matrix };
    validate_involution(&inv, system)?;
    Ok(inv)
}

/// Validates and wraps a user-supplied involution matrix.
pub fn build_explicit_involution(matrix: QMat, system: &AmbientRootSystem) -> Result<Involution> {
    let n = system.ambient_dim;
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(HoroError::InvalidInvolution(format!("matrix must be {n}x{n}")));
    }
    let inv = Involution { kind: InvolutionKind::ExplicitMatrix, matrix };
    validate_involution(&inv, system)?;
    Ok(inv)
}

fn horospherical_matrix(system: &AmbientRootSystem, levi: &[usize]) -> QMat {
    let n = system.ambient_dim;
    let levi_coroots: Vec<QVec> = levi.iter().map(|&i| coroot_vector(&system.simple_roots[i])).collect();
    // fixed space: Levi coroots plus the orthogonal complement of the Cartan subspace
    let mut fixed = levi_coroots;
    fixed.extend(crate::linalg::orthogonal_complement(&system.cartan_basis, n));
    let fixed = row_space_basis(&fixed);
    let anti = crate::linalg::orthogonal_complement(&fixed, n);
    // reflection through the fixed space: v -> v - 2 * proj_anti(v)
    let proj = projection_matrix(&anti, n);
    let mut m = identity(n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] -= q(2) * &proj[i][j];
        }
    }
    m
}

/// Orthogonal projection onto the span of `basis` (standard dot product).
pub fn projection_matrix(basis: &[QVec], n: usize) -> QMat {
    if basis.is_empty() {
        return vec![zeros(n); n];
    }
    let gram: QMat = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let ginv = crate::linalg::inverse(&gram).expect("independent basis");
    let bt = transpose(basis);
    mat_mul(&mat_mul(&bt, &ginv), basis)
}

fn validate_involution(inv: &Involution, system: &AmbientRootSystem) -> Result<()> {
    let n = system.ambient_dim;
    let m = &inv.matrix;
    if mat_mul(m, m) != identity(n) {
        return Err(HoroError::InvalidInvolution("matrix does not square to the identity".into()));
    }
    if mat_mul(&transpose(m), m) != identity(n) {
        return Err(HoroError::InvalidInvolution("matrix does not preserve the dot product".into()));
    }
    for b in &system.cartan_basis {
        let img = mat_vec(m, b);
        let mut with = system.cartan_basis.clone();
        with.push(img);
        if rank(&with) != system.cartan_basis.len() {
            return Err(HoroError::InvalidInvolution("matrix does not preserve the Cartan subspace".into()));
        }
    }
    Ok(())
}

/// Parabolic subgroup containing the standard Borel, given by the simple
/// roots of its Levi factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicChoice {
    pub levi_simple_roots: Vec<usize>,
    /// All roots of the Levi (both signs).
    pub phi_l: Vec<QVec>,
    pub phi_l_plus: Vec<QVec>,
    /// Roots of the unipotent radical of the opposite parabolic `Q`.
    pub phi_qu: Vec<QVec>,
}

pub fn build_parabolic(system: &AmbientRootSystem, levi_simple_roots: &[usize]) -> Result<ParabolicChoice> {
    let mut idx: Vec<usize> = levi_simple_roots.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.iter().any(|&i| i >= system.simple_roots.len()) {
        return Err(HoroError::InvalidParabolic(format!("simple root index out of range in {idx:?}")));
    }
    let mut phi_l_plus = Vec::new();
    let mut phi_qu = Vec::new();
    for r in &system.positive_roots {
        let c = system.simple_coordinates(r).expect("validated root system");
        let inside = c.iter().enumerate().all(|(i, x)| x.is_zero() || idx.contains(&i));
        if inside {
            phi_l_plus.push(r.clone());
        } else {
            phi_qu.push(r.clone());
        }
    }
    let mut phi_l = phi_l_plus.clone();
    phi_l.extend(phi_l_plus.iter().map(|r| neg(r)));
    Ok(ParabolicChoice { levi_simple_roots: idx, phi_l, phi_l_plus, phi_qu })
}

/// The full parabolic `P = G`.
pub fn full_parabolic(system: &AmbientRootSystem) -> ParabolicChoice {
    build_parabolic(system, &(0..system.simple_roots.len()).collect::<Vec<_>>()).expect("all indices valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn type_a_counts_and_rho() {
        let a4 = build_root_system(Series::A, 4).unwrap();
        assert_eq!(a4.positive_roots.len(), 10);
        let a2 = build_root_system(Series::A, 2).unwrap();
        assert_eq!(a2.rho, qvec(&[1, 0, -1]));
        let a1 = build_root_system(Series::A, 1).unwrap();
        assert_eq!(a1.positive_roots, vec![qvec(&[1, -1])]);
    }

    #[test]
    fn classical_series_sizes() {
        assert_eq!(build_root_system(Series::B, 3).unwrap().positive_roots.len(), 9);
        assert_eq!(build_root_system(Series::C, 3).unwrap().positive_roots.len(), 9);
        assert_eq!(build_root_system(Series::D, 4).unwrap().positive_roots.len(), 12);
        assert!(build_root_system(Series::A, 0).is_err());
        assert!(Series::parse("E").is_err());
    }

    #[test]
    fn coroots_in_type_a() {
        let a4 = build_root_system(Series::A, 4).unwrap();
        let a25 = qvec(&[0, 1, 0, 0, -1]);
        assert_eq!(coroot(&a25, &a4).unwrap(), a25);
        assert!(coroot(&qvec(&[1, 1, 0, 0, 0]), &a4).is_err());
        let c2 = build_root_system(Series::C, 2).unwrap();
        assert_eq!(coroot(&qvec(&[2, 0]), &c2).unwrap(), qvec(&[1, 0]));
    }

    #[test]
    fn involutions() {
        let a4 = build_root_system(Series::A, 4).unwrap();
        let s = build_involution(InvolutionKind::AIII { r: 2, m: 5 }, &a4).unwrap();
        assert_eq!(s.apply(&qvec(&[1, 2, 3, 4, 5])), qvec(&[5, 4, 3, 2, 1]));
        assert!(build_involution(InvolutionKind::AIII { r: 3, m: 5 }, &a4).is_err());
        let a3 = build_root_system(Series::A, 3).unwrap();
        let g = build_involution(InvolutionKind::GroupType { block: 2 }, &a3).unwrap();
        assert_eq!(g.apply(&qvec(&[1, 2, 3, 4])), qvec(&[3, 4, 1, 2]));
        let aii = build_involution(InvolutionKind::AII { p: 2 }, &a3).unwrap();
        assert_eq!(aii.apply(&qvec(&[1, 2, 3, 4])), qvec(&[-2, -1, -4, -3]));
        let a2 = build_root_system(Series::A, 2).unwrap();
        let ai = build_involution(InvolutionKind::AI, &a2).unwrap();
        assert_eq!(ai.apply(&qvec(&[1, -1, 0])), qvec(&[-1, 1, 0]));
        let bad = vec![qvec(&[1, 1, 0]), qvec(&[0, 1, 0]), qvec(&[0, 0, 1])];
        assert!(build_explicit_involution(bad, &a2).is_err());
    }

    #[test]
    fn horospherical_fixes_levi_coroots() {
        let a2 = build_root_system(Series::A, 2).unwrap();
        let h = build_involution(InvolutionKind::Horospherical { levi: vec![0] }, &a2).unwrap();
        assert_eq!(h.apply(&qvec(&[1, -1, 0])), qvec(&[1, -1, 0]));
        assert_eq!(h.apply(&qvec(&[1, 1, -2])), qvec(&[-1, -1, 2]));
        assert_eq!(h.apply(&qvec(&[1, 1, 1])), qvec(&[1, 1, 1]));
    }

    #[test]
    fn parabolic_split() {
        let a2 = build_root_system(Series::A, 2).unwrap();
        let p = build_parabolic(&a2, &[0]).unwrap();
        assert_eq!(p.phi_l_plus, vec![qvec(&[1, -1, 0])]);
        assert_eq!(p.phi_qu.len(), 2);
        assert_eq!(full_parabolic(&a2).phi_qu.len(), 0);
    }
}
