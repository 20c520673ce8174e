//! Exact rational convex geometry at desk scale (dimension at most about 6).
//!
//! Polytopes keep both representations. Halfspaces read `normal · x <= offset`
//! and carry tags recording where they came from (a divisor ray, a color, a
//! chamber wall); equalities describe the affine hull of lower-dimensional
//! polytopes.

use num::bigint::BigInt;
use num::{Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

use crate::error::{HoroError, Result};
use crate::linalg::{abs_det, identity, inverse, mat_mul, mat_vec, nullspace, rank, row_space_basis, rref, solve, transpose, QMat};
use crate::rational::{add, common_denominator, dot, factorial, is_zero_vec, fmt_qvec, neg, primitive_direction, q, scale, sub, zeros, Q, QVec};
use crate::restricted::HorosymmetricDatum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetTag {
    /// Boundary divisor `Y` (index into the list of rays).
    Ray(usize),
    /// Color inequality (index into the list of colors).
    Color(usize),
    /// Restricted Weyl chamber wall (index of a simple restricted root).
    Wall(usize),
    /// Unlabelled input halfspace.
    Input(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: QVec,
    pub offset: Q,
    pub tags: Vec<FacetTag>,
}

impl Halfspace {
    pub fn new(normal: QVec, offset: Q) -> Self {
        Halfspace { normal, offset, tags: Vec::new() }
    }

    pub fn tagged(normal: QVec, offset: Q, tag: FacetTag) -> Self {
        Halfspace { normal, offset, tags: vec![tag] }
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        dot(&self.normal, x) <= self.offset
    }

    pub fn is_tight(&self, x: &[Q]) -> bool {
        dot(&self.normal, x) == self.offset
    }

    /// Rescales so that the normal is a primitive integer vector.
    pub fn normalized(&self) -> Halfspace {
        let prim = primitive_direction(&self.normal);
        let i = self.normal.iter().position(|x| !x.is_zero()).expect("nonzero normal");
        let f = Q::from_integer(prim[i].clone()) / &self.normal[i];
        Halfspace {
            normal: prim.into_iter().map(Q::from_integer).collect(),
            offset: &self.offset * f,
            tags: self.tags.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalPolytope {
    pub dim: usize,
    /// Irredundant facet inequalities (relative to the affine hull).
    pub halfspaces: Vec<Halfspace>,
    /// Affine hull equations `normal · x = offset` (empty when full-dimensional).
    pub equalities: Vec<(QVec, Q)>,
    /// Vertices in lexicographic order.
    pub vertices: Vec<QVec>,
}

impl RationalPolytope {
    pub fn affine_dim(&self) -> usize {
        self.dim - self.equalities.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
            && self.equalities.iter().all(|(n, c)| &dot(n, x) == c)
    }

    /// Vertices on the given facet.
    pub fn facet_vertices(&self, facet: usize) -> Vec<QVec> {
        let h = &self.halfspaces[facet];
        self.vertices.iter().filter(|v| h.is_tight(v)).cloned().collect()
    }

    pub fn facets_with_tag(&self, tag: FacetTag) -> Vec<usize> {
        (0..self.halfspaces.len()).filter(|&i| self.halfspaces[i].tags.contains(&tag)).collect()
    }

    /// `sup { <x, direction> : x in polytope }`.
    pub fn support_function(&self, direction: &[Q]) -> Q {
        self.vertices.iter().map(|v| dot(v, direction)).max().expect("nonempty polytope")
    }

    pub fn translate(&self, t: &[Q]) -> RationalPolytope {
        RationalPolytope {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace { normal: h.normal.clone(), offset: &h.offset + dot(&h.normal, t), tags: h.tags.clone() })
                .collect(),
            equalities: self.equalities.iter().map(|(n, c)| (n.clone(), c + dot(n, t))).collect(),
            vertices: self.vertices.iter().map(|v| add(v, t)).collect(),
        }
    }

    pub fn scaled(&self, s: &Q) -> RationalPolytope {
        assert!(s.is_positive());
        RationalPolytope {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace { normal: h.normal.clone(), offset: &h.offset * s, tags: h.tags.clone() })
                .collect(),
            equalities: self.equalities.iter().map(|(n, c)| (n.clone(), c * s)).collect(),
            vertices: self.vertices.iter().map(|v| scale(s, v)).collect(),
        }
    }

    /// Lebesgue volume in the ambient coordinates (zero unless full-dimensional).
    pub fn volume(&self) -> Q {
        if !self.is_full_dimensional() {
            return Q::zero();
        }
        triangulate(self).iter().map(|s| simplex_volume(s)).sum()
    }

    /// Same set, compared through vertex lists.
    pub fn same_set(&self, other: &RationalPolytope) -> bool {
        self.vertices == other.vertices
    }
}

/// Volume of a full-dimensional simplex given by `d + 1` vertices.
pub fn simplex_volume(s: &[QVec]) -> Q {
    let d = s.len() - 1;
    if d == 0 {
        return Q::from_integer(1.into());
    }
    let m: QMat = s[1..].iter().map(|v| sub(v, &s[0])).collect();
    abs_det(&m) / Q::from_integer(factorial(d))
}

/// Iterates over `k`-element subsets of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        if c[i] == i + n - k {
            return;
        }
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Vertices of `{x : h.normal · x <= h.offset}` by subset solving.
fn raw_vertices(hs: &[Halfspace], dim: usize) -> Vec<QVec> {
    let mut out = BTreeSet::new();
    if dim == 0 {
        if hs.iter().all(|h| !h.offset.is_negative()) {
            out.insert(Vec::new());
        }
        return out.into_iter().collect();
    }
    for_each_combination(hs.len(), dim, |idx| {
        let aug: QMat = idx
            .iter()
            .map(|&i| {
                let mut row = hs[i].normal.clone();
                row.push(hs[i].offset.clone());
                row
            })
            .collect();
        let (r, pivots) = rref(&aug);
        if pivots.len() < dim || pivots[dim - 1] != dim - 1 {
            return;
        }
        let x: QVec = r.into_iter().map(|mut row| row.pop().expect("augmented row")).collect();
        if hs.iter().all(|h| h.contains(&x)) {
            out.insert(x);
        }
    });
    out.into_iter().collect()
}

/// Exact vertex enumeration of `{x : normal · x <= offset}`.
pub fn vertices_from_halfspaces(hs: &[Halfspace], dim: usize) -> Result<Vec<QVec>> {
    for h in hs {
        if h.normal.len() != dim {
            return Err(HoroError::DimensionMismatch { expected: dim, found: h.normal.len() });
        }
    }
    let normals: QMat = hs.iter().map(|h| h.normal.clone()).collect();
    let lineality = if hs.is_empty() { identity(dim) } else { nullspace(&normals, dim) };
    if !lineality.is_empty() {
        let mut hs2 = hs.to_vec();
        for l in &lineality {
            hs2.push(Halfspace::new(l.clone(), Q::zero()));
            hs2.push(Halfspace::new(neg(l), Q::zero()));
        }
        if raw_vertices(&hs2, dim).is_empty() {
            return Err(HoroError::EmptyRegion);
        }
        return Err(HoroError::Unbounded(format!("lineality direction {}", fmt_qvec(&lineality[0]))));
    }
    let verts = raw_vertices(hs, dim);
    if verts.is_empty() {
        return Err(HoroError::EmptyRegion);
    }
    // recession cone intersected with a box: any nonzero vertex is a witness ray
    let mut rec: Vec<Halfspace> = hs.iter().map(|h| Halfspace::new(h.normal.clone(), Q::zero())).collect();
    for i in 0..dim {
        let mut e = zeros(dim);
        e[i] = q(1);
        rec.push(Halfspace::new(e.clone(), q(1)));
        rec.push(Halfspace::new(neg(&e), q(1)));
    }
    if let Some(w) = raw_vertices(&rec, dim).into_iter().find(|v| v.iter().any(|x| !x.is_zero())) {
        return Err(HoroError::Unbounded(format!("recession direction {}", fmt_qvec(&w))));
    }
    Ok(verts)
}

/// Polytope from halfspaces. Redundant inequalities are dropped and every
/// surviving facet inherits the tags of all inputs supporting it.
pub fn from_halfspaces(hs: &[Halfspace], dim: usize) -> Result<RationalPolytope> {
    let mut keys = BTreeSet::new();
    let mut distinct = Vec::new();
    for h in hs {
        let plain = Halfspace::new(h.normal.clone(), h.offset.clone());
        let plain = if is_zero_vec(&plain.normal) { plain } else { plain.normalized() };
        if keys.insert((plain.normal.clone(), plain.offset.clone())) {
            distinct.push(plain);
        }
    }
    let verts = vertices_from_halfspaces(&distinct, dim)?;
    let mut p = from_points(&verts, dim)?;
    for f in p.halfspaces.iter_mut() {
        let tight: Vec<&QVec> = verts.iter().filter(|v| f.is_tight(v)).collect();
        let mut tags = BTreeSet::new();
        for h in hs {
            let ht: Vec<&QVec> = verts.iter().filter(|v| h.is_tight(v)).collect();
            if ht == tight {
                tags.extend(h.tags.iter().copied());
            }
        }
        f.tags = tags.into_iter().collect();
    }
    Ok(p)
}

/// Facets of a full-dimensional point set in `Q^k` and the indices of its vertices.
fn hull_full(points: &[QVec], k: usize) -> (Vec<(QVec, Q)>, Vec<usize>) {
    if let Some(facets) = int_facets(points, k) {
        return (facets.clone(), hull_vertices(points, &facets, k));
    }
    let n = points.len();
    let mut facets: Vec<(QVec, Q)> = Vec::new();
    for_each_combination(n, k, |idx| {
        let diffs: QMat = idx[1..].iter().map(|&i| sub(&points[i], &points[idx[0]])).collect();
        let ns = nullspace(&diffs, k);
        if ns.len() != 1 {
            return;
        }
        let normal: QVec = primitive_direction(&ns[0]).into_iter().map(Q::from_integer).collect();
        let c = dot(&normal, &points[idx[0]]);
        let (mut above, mut below) = (false, false);
        for p in points {
            let v = dot(&normal, p);
            if v > c {
                above = true;
            } else if v < c {
                below = true;
            }
            if above && below {
                return;
            }
        }
        let cand = match (above, below) {
            (false, true) => (normal, c),
            (true, false) => (neg(&normal), -c),
            _ => return,
        };
        if !facets.contains(&cand) {
            facets.push(cand);
        }
    });
    facets.sort();
    let verts = hull_vertices(points, &facets, k);
    (facets, verts)
}

fn hull_vertices(points: &[QVec], facets: &[(QVec, Q)], k: usize) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let tight: QMat = facets.iter().filter(|(a, c)| &dot(a, &points[i]) == c).map(|(a, _)| a.clone()).collect();
            !tight.is_empty() && rank(&tight) == k
        })
        .collect()
}

/// Facet enumeration in machine integers after clearing denominators.
/// Returns `None` when any intermediate value would overflow.
fn int_facets(points: &[QVec], k: usize) -> Option<Vec<(QVec, Q)>> {
    let den = points.iter().fold(BigInt::from(1), |acc, p| num::integer::lcm(acc, common_denominator(p)));
    den.to_i128()?;
    let limit = 1i128 << 40;
    let mut pts: Vec<Vec<i128>> = Vec::with_capacity(points.len());
    for p in points {
        let mut row = Vec::with_capacity(k);
        for x in p {
            let v = (x * Q::from_integer(den.clone())).to_integer().to_i128()?;
            if v.abs() > limit {
                return None;
            }
            row.push(v);
        }
        pts.push(row);
    }
    let n = pts.len();
    let mut facets: Vec<(Vec<i128>, i128)> = Vec::new();
    let mut overflow = false;
    for_each_combination(n, k, |idx| {
        if overflow {
            return;
        }
        let diffs: Vec<Vec<i128>> =
            idx[1..].iter().map(|&i| pts[i].iter().zip(&pts[idx[0]]).map(|(a, b)| a - b).collect()).collect();
        let Some(normal) = int_normal(&diffs, k) else {
            overflow = true;
            return;
        };
        if normal.iter().all(|&x| x == 0) {
            return;
        }
        let Some(c) = int_dot(&normal, &pts[idx[0]]) else {
            overflow = true;
            return;
        };
        let (mut above, mut below) = (false, false);
        for p in &pts {
            let Some(v) = int_dot(&normal, p) else {
                overflow = true;
                return;
            };
            above |= v > c;
            below |= v < c;
            if above && below {
                return;
            }
        }
        let cand = match (above, below) {
            (false, true) => (normal, c),
            (true, false) => (normal.iter().map(|x| -x).collect(), -c),
            _ => return,
        };
        if !facets.contains(&cand) {
            facets.push(cand);
        }
    });
    if overflow {
        return None;
    }
    let mut out: Vec<(QVec, Q)> = facets
        .into_iter()
        .map(|(nrm, c)| {
            let nq: QVec = nrm.into_iter().map(|x| Q::from_integer(BigInt::from(x))).collect();
            (nq, Q::new(BigInt::from(c), den.clone()))
        })
        .collect();
    out.sort();
    Some(out)
}

fn int_dot(a: &[i128], b: &[i128]) -> Option<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| acc.checked_add(x.checked_mul(*y)?))
}

/// Primitive normal of the hyperplane spanned by `k - 1` difference vectors,
/// from signed maximal minors.
fn int_normal(diffs: &[Vec<i128>], k: usize) -> Option<Vec<i128>> {
    let mut normal = Vec::with_capacity(k);
    for j in 0..k {
        let minor: Vec<Vec<i128>> =
            diffs.iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
        let d = bareiss_det(minor)?;
        normal.push(if j % 2 == 0 { d } else { -d });
    }
    let g = normal.iter().fold(0i128, |acc, &x| num::integer::gcd(acc, x));
    if g > 1 {
        for x in normal.iter_mut() {
            *x /= g;
        }
    }
    Some(normal)
}

fn bareiss_det(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..n {
        if a[c][c] == 0 {
            let Some(p) = (c + 1..n).find(|&i| a[i][c] != 0) else { return Some(0) };
            a.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = a[i][j].checked_mul(a[c][c])?.checked_sub(a[i][c].checked_mul(a[c][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[c][c];
    }
    Some(sign * a[n - 1][n - 1])
}

/// Convex hull of finitely many points, with facets relative to the affine hull.
pub fn from_points(points: &[QVec], dim: usize) -> Result<RationalPolytope> {
    let pts: Vec<QVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if pts.is_empty() {
        return Err(HoroError::EmptyRegion);
    }
    for p in &pts {
        if p.len() != dim {
            return Err(HoroError::DimensionMismatch { expected: dim, found: p.len() });
        }
    }
    let x0 = pts[0].clone();
    let diffs: QMat = pts[1..].iter().map(|p| sub(p, &x0)).collect();
    let basis = row_space_basis(&diffs);
    let k = basis.len();
    if k == dim {
        let (facets, vidx) = hull_full(&pts, dim);
        return Ok(RationalPolytope {
            dim,
            halfspaces: facets.into_iter().map(|(n, c)| Halfspace::new(n, c)).collect(),
            equalities: Vec::new(),
            vertices: vidx.into_iter().map(|i| pts[i].clone()).collect(),
        });
    }
    let eq_normals = nullspace(&basis, dim);
    let equalities: Vec<(QVec, Q)> = eq_normals
        .into_iter()
        .map(|n| {
            let c = dot(&n, &x0);
            (n, c)
        })
        .collect();
    if k == 0 {
        return Ok(RationalPolytope { dim, halfspaces: Vec::new(), equalities, vertices: vec![x0] });
    }
    let bt = transpose(&basis);
    let local: Vec<QVec> = pts.iter().map(|p| solve(&bt, &sub(p, &x0)).expect("point in affine hull")).collect();
    let (facets, vidx) = hull_full(&local, k);
    // ambient normal n with B n = n', chosen in the span of the basis
    let gram = mat_mul(&basis, &bt);
    let ginv = inverse(&gram).expect("independent basis");
    let halfspaces = facets
        .into_iter()
        .map(|(nl, cl)| {
            let coeff = mat_vec(&ginv, &nl);
            let n = mat_vec(&bt, &coeff);
            let c = cl + dot(&n, &x0);
            Halfspace::new(n, c).normalized()
        })
        .collect();
    Ok(RationalPolytope { dim, halfspaces, equalities, vertices: vidx.into_iter().map(|i| pts[i].clone()).collect() })
}

/// Convex hull of the orbit of `points` under a finite matrix group.
pub fn weyl_orbit_hull(points: &[QVec], group: &[QMat]) -> Result<RationalPolytope> {
    let dim = points.first().map(|p| p.len()).ok_or(HoroError::EmptyRegion)?;
    let orbit: Vec<QVec> = points.iter().flat_map(|p| group.iter().map(move |g| mat_vec(g, p))).collect();
    from_points(&orbit, dim)
}

/// Convex hull of `apex` and the given facet.
pub fn cone_over_facet(polytope: &RationalPolytope, apex: &[Q], facet: usize) -> Result<RationalPolytope> {
    let h = polytope.halfspaces.get(facet).ok_or(HoroError::NoSuchFacet(facet))?;
    if h.is_tight(apex) {
        return Err(HoroError::DegenerateCone(facet));
    }
    let mut pts = polytope.facet_vertices(facet);
    pts.push(apex.to_vec());
    from_points(&pts, polytope.dim)
}

/// Pulling triangulation from the lexicographically smallest vertex. Each
/// simplex has `affine_dim + 1` vertices.
pub fn triangulate(polytope: &RationalPolytope) -> Vec<Vec<QVec>> {
    let verts = &polytope.vertices;
    let idx: Vec<usize> = (0..verts.len()).collect();
    pull(verts, &idx, polytope.dim).into_iter().map(|s| s.into_iter().map(|i| verts[i].clone()).collect()).collect()
}

fn pull(points: &[QVec], idx: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if idx.len() <= dim + 1 {
        let diffs: QMat = idx[1..].iter().map(|&i| sub(&points[i], &points[idx[0]])).collect();
        if rank(&diffs) + 1 == idx.len() {
            return vec![idx.to_vec()];
        }
    }
    let sub_pts: Vec<QVec> = idx.iter().map(|&i| points[i].clone()).collect();
    let hull = from_points(&sub_pts, dim).expect("nonempty");
    let k = hull.affine_dim();
    let vidx: Vec<usize> = idx.iter().copied().filter(|&i| hull.vertices.contains(&points[i])).collect();
    if vidx.len() == k + 1 {
        return vec![vidx];
    }
    let v0 = *vidx.iter().min_by(|&&a, &&b| points[a].cmp(&points[b])).unwrap();
    let mut out = Vec::new();
    for h in &hull.halfspaces {
        if h.is_tight(&points[v0]) {
            continue;
        }
        let face: Vec<usize> = vidx.iter().copied().filter(|&i| h.is_tight(&points[i])).collect();
        for s in pull(points, &face, dim) {
            let mut simplex = vec![v0];
            simplex.extend(s);
            out.push(simplex);
        }
    }
    out
}

/// Polyhedral cone `cone(generators) + span(lineality)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cone {
    pub generators: Vec<QVec>,
    pub lineality: Vec<QVec>,
}

impl Cone {
    /// Membership test for cones whose generators are independent modulo the
    /// lineality space (simplicial cones such as Weyl chambers).
    pub fn contains(&self, v: &[Q]) -> Result<bool> {
        let mut cols = self.generators.clone();
        cols.extend(self.lineality.iter().cloned());
        if cols.is_empty() {
            return Ok(v.iter().all(|x| x.is_zero()));
        }
        if rank(&cols) != cols.len() {
            return Err(HoroError::Internal("cone generators are not independent".into()));
        }
        match solve(&transpose(&cols), v) {
            Some(c) => Ok(c[..self.generators.len()].iter().all(|x| !x.is_negative())),
            None => Ok(false),
        }
    }
}

/// Valuation cone `-a_s^+` as a cone in `a_s`.
pub fn valuation_cone(datum: &HorosymmetricDatum) -> Cone {
    let r = datum.rank();
    let simple = &datum.simple_restricted_roots;
    let lineality = datum.central_points();
    let generators = if simple.is_empty() {
        Vec::new()
    } else {
        // fundamental coweights: dual to the simple roots inside their span
        let span: QMat = transpose(&row_space_basis(&datum.simple_restricted_coroots));
        let m: QMat = simple.iter().map(|s| transpose(&span).iter().map(|b| dot(s, b)).collect::<QVec>()).collect();
        let minv = inverse(&m).expect("simple roots independent");
        (0..simple.len())
            .map(|j| {
                let coeff: QVec = (0..simple.len()).map(|i| minv[i][j].clone()).collect();
                neg(&mat_vec(&span, &coeff))
            })
            .collect()
    };
    let _ = r;
    Cone { generators, lineality }
}

/// Outcome of the dual chamber test.
#[derive(Debug, Clone, PartialEq)]
pub struct DualChamberVerdict {
    pub inside: bool,
    /// Coefficients on the simple restricted roots, when the vector lies in their span.
    pub coefficients: Option<QVec>,
    /// Values of the vector on a basis of the central directions.
    pub residual: QVec,
}

/// Whether a covector lies in the relative interior of the dual cone of the
/// positive restricted chamber.
pub fn rel_interior_dual_chamber(v: &[Q], datum: &HorosymmetricDatum) -> DualChamberVerdict {
    let residual: QVec = datum.central_points().iter().map(|z| dot(v, z)).collect();
    let coefficients = crate::restricted::simple_root_coefficients(datum, v);
    let inside = residual.iter().all(|x| x.is_zero())
        && coefficients.as_ref().is_some_and(|c| c.iter().all(|x| x.is_positive()));
    DualChamberVerdict { inside, coefficients, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qr, qvec};

    fn hs(rows: &[(&[i64], i64)]) -> Vec<Halfspace> {
        rows.iter().map(|(n, c)| Halfspace::new(qvec(n), q(*c))).collect()
    }

    #[test]
    fn unit_simplex() {
        let h = hs(&[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]);
        let v = vertices_from_halfspaces(&h, 2).unwrap();
        assert_eq!(v, vec![qvec(&[0, 0]), qvec(&[0, 1]), qvec(&[1, 0])]);
        let p = from_halfspaces(&h, 2).unwrap();
        assert_eq!(p.support_function(&qvec(&[1, 1])), q(1));
        assert_eq!(p.support_function(&qvec(&[0, 0])), q(0));
        assert_eq!(p.volume(), qr(1, 2));
        assert_eq!(triangulate(&p).len(), 1);
    }

    #[test]
    fn empty_and_unbounded() {
        let h = hs(&[(&[1], 0), (&[-1], -1)]);
        assert!(matches!(vertices_from_halfspaces(&h, 1), Err(HoroError::EmptyRegion)));
        let h = hs(&[(&[-1, 0], 0), (&[0, -1], 0)]);
        assert!(matches!(vertices_from_halfspaces(&h, 2), Err(HoroError::Unbounded(_))));
        let h = hs(&[(&[1, 0], 1)]);
        assert!(matches!(vertices_from_halfspaces(&h, 2), Err(HoroError::Unbounded(_))));
    }

    #[test]
    fn redundant_halfspaces_are_dropped_and_tags_merged() {
        let mut h = hs(&[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 5)]);
        h.push(Halfspace::tagged(qvec(&[2, 0]), q(2), FacetTag::Ray(7)));
        let p = from_halfspaces(&h, 2).unwrap();
        assert_eq!(p.halfspaces.len(), 4);
        assert_eq!(p.facets_with_tag(FacetTag::Ray(7)).len(), 1);
        assert_eq!(p.volume(), q(1));
        assert_eq!(triangulate(&p).len(), 2);
    }

    #[test]
    fn square_cone_over_facet() {
        let sq = from_points(&[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])], 2).unwrap();
        let f = sq.halfspaces.iter().position(|h| h.normal == qvec(&[1, 0])).unwrap();
        let c = cone_over_facet(&sq, &qvec(&[0, 0]), f).unwrap();
        assert_eq!(c.vertices, vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1])]);
        let g = sq.halfspaces.iter().position(|h| h.normal == qvec(&[-1, 0])).unwrap();
        assert!(matches!(cone_over_facet(&sq, &qvec(&[0, 0]), g), Err(HoroError::DegenerateCone(_))));
    }

    #[test]
    fn lower_dimensional_hull() {
        let seg = from_points(&[qvec(&[0, 0]), qvec(&[1, 1]), qvec(&[2, 2])], 2).unwrap();
        assert_eq!(seg.affine_dim(), 1);
        assert_eq!(seg.vertices, vec![qvec(&[0, 0]), qvec(&[2, 2])]);
        assert_eq!(seg.halfspaces.len(), 2);
        assert!(seg.contains(&qvec(&[1, 1])));
        assert!(!seg.contains(&qvec(&[1, 0])));
        assert_eq!(seg.volume(), q(0));
        assert_eq!(triangulate(&seg).len(), 1);
        let pt = from_points(&[qvec(&[3, 4])], 2).unwrap();
        assert_eq!(pt.affine_dim(), 0);
    }

    #[test]
    fn cross_polytope_orbit() {
        // hyperoctahedral group of order 8 on the plane
        let mut group = Vec::new();
        for &swap in &[false, true] {
            for &sx in &[1, -1] {
                for &sy in &[1, -1] {
                    let m = if swap {
                        vec![qvec(&[0, sx]), qvec(&[sy, 0])]
                    } else {
                        vec![qvec(&[sx, 0]), qvec(&[0, sy])]
                    };
                    group.push(m);
                }
            }
        }
        let p = weyl_orbit_hull(&[qvec(&[1, 0])], &group).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.volume(), q(2));
        let oct = weyl_orbit_hull(&[vec![q(2), qr(1, 2)]], &group).unwrap();
        assert_eq!(oct.vertices.len(), 8);
        let fixed = weyl_orbit_hull(&[qvec(&[0, 0])], &group).unwrap();
        assert_eq!(fixed.vertices.len(), 1);
    }

    fn shoelace(v: &[QVec]) -> Q {
        // order the vertices counterclockwise around their mean
        let n = q(v.len() as i64);
        let c: QVec = (0..2).map(|i| v.iter().map(|p| p[i].clone()).sum::<Q>() / &n).collect();
        let mut vs = v.to_vec();
        let ang = |p: &QVec| (crate::rational::to_f64(&(&p[1] - &c[1]))).atan2(crate::rational::to_f64(&(&p[0] - &c[0])));
        vs.sort_by(|a, b| ang(a).partial_cmp(&ang(b)).unwrap());
        let mut s = Q::zero();
        for i in 0..vs.len() {
            let (a, b) = (&vs[i], &vs[(i + 1) % vs.len()]);
            s += &a[0] * &b[1] - &a[1] * &b[0];
        }
        s.abs() / q(2)
    }

    #[test]
    fn half_scale_aiii_polygon() {
        let b = qr(1, 2);
        let pts = vec![
            qvec(&[0, 0]),
            qvec(&[1, 0]),
            vec![q(1), b.clone()],
            vec![(q(1) + &b) / q(2), (q(1) + &b) / q(2)],
        ];
        let p = from_points(&pts, 2).unwrap();
        assert_eq!(p.support_function(&[qr(1, 2), qr(1, 2)]), qr(3, 4));
        assert_eq!(p.volume(), qr(7, 16));
        let tri: Q = triangulate(&p).iter().map(|s| simplex_volume(s)).sum();
        assert_eq!(tri, shoelace(&p.vertices));
        let f2 = p.halfspaces.iter().position(|h| h.normal == qvec(&[1, 0])).unwrap();
        let y2 = cone_over_facet(&p, &qvec(&[0, 0]), f2).unwrap();
        assert_eq!(y2.vertices, vec![qvec(&[0, 0]), qvec(&[1, 0]), vec![q(1), b.clone()]]);
        let f1 = p.halfspaces.iter().position(|h| h.normal == qvec(&[1, 1])).unwrap();
        let y1 = cone_over_facet(&p, &qvec(&[0, 0]), f1).unwrap();
        assert_eq!(y1.vertices.len(), 3);
        assert_eq!(y1.volume() + y2.volume(), p.volume());
    }

    #[test]
    fn three_dimensional_volume() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(qvec(&[x, y, z]));
                }
            }
        }
        let cube = from_points(&pts, 3).unwrap();
        assert_eq!(cube.halfspaces.len(), 6);
        assert_eq!(cube.volume(), q(1));
        let oct = from_points(
            &[qvec(&[1, 0, 0]), qvec(&[-1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[0, -1, 0]), qvec(&[0, 0, 1]), qvec(&[0, 0, -1])],
            3,
        )
        .unwrap();
        assert_eq!(oct.halfspaces.len(), 8);
        assert_eq!(oct.volume(), qr(4, 3));
    }
}
