//! Decision procedures for coercivity of the Mabuchi functional: the
//! constants `Λ_Y`, the average scalar curvature `S̄_Θ`, the piecewise
//! function `F_L`, the test vector, the log-Kähler–Einstein criterion, the
//! log-Futaki invariant and one-parameter scans.
//!
//! All quantities are exact. Integrals are taken in covector coordinates
//! `m` on `a_s`, where the moment polytope restricts to `Delta` and
//! `q - chi` restricts to `m`.

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::dhintegrate::{AffineForm, DHMeasure, PolyForm};
use crate::error::{HoroError, Result};
use crate::linebundle::{AssumptionReport, PolarizedVariety};
use crate::polytope::{rel_interior_dual_chamber, simplex_volume, triangulate, DualChamberVerdict, RationalPolytope};
use crate::rational::{add, dot, fmt_q, fmt_qvec, q, scale, sub, zeros, Q, QVec};

/// Default bisection depth for the positivity certificate of `F_L`.
pub const DEFAULT_F_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct FPiece {
    pub ray: usize,
    /// `(n+1) Λ_Y - S̄_Θ`.
    pub constant: Q,
    /// `<alpha, chi^ac - Λ_Y chi> / <alpha, rho>` per density root.
    pub residues: Vec<Q>,
}

impl FPiece {
    /// `F_L` at a point where no density form vanishes.
    pub fn eval(&self, measure: &DHMeasure, m: &[Q]) -> Option<Q> {
        let mut v = self.constant.clone();
        for (r, f) in self.residues.iter().zip(&measure.forms) {
            if r.is_zero() {
                continue;
            }
            let l = f.eval(m);
            if l.is_zero() {
                return None;
            }
            v += r / l;
        }
        Some(v)
    }

    pub fn has_residues(&self) -> bool {
        self.residues.iter().any(|r| !r.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Positivity {
    Positive,
    /// Point with `F_L <= 0` and the value there.
    NotPositive { ray: usize, point: QVec, value: Q },
    Inconclusive { ray: usize, cell: Vec<QVec> },
}

impl Positivity {
    pub fn is_positive(&self) -> bool {
        matches!(self, Positivity::Positive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
    /// Criterion does not apply (for instance the polarization is not ample).
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "not-applicable",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::True => 0,
            Verdict::False => 1,
            Verdict::Inconclusive | Verdict::NotApplicable => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoercivityReport {
    pub lambda0: QVec,
    pub n: usize,
    pub n_y: Vec<Q>,
    pub lambda_y: Vec<Q>,
    /// `Λ_Y` from the support function of `chi - Delta^+`.
    pub lambda_y_support: Vec<Q>,
    pub s_bar_theta: Q,
    pub pieces: Vec<FPiece>,
    /// `Σ_Y ∫ F_L P_DH`.
    pub a: Q,
    /// `∫ P_DH`.
    pub b: Q,
    /// `Σ_Y ∫ m F_L P_DH`.
    pub moment: QVec,
    /// `moment / a`.
    pub f_barycenter: QVec,
    pub mu_min: Q,
    pub test_vector: QVec,
    pub dual_chamber: DualChamberVerdict,
    pub f_positive: Positivity,
    pub assumptions: AssumptionReport,
    pub verdict: Verdict,
}

/// Precomputed polytope data shared by the criteria.
pub struct Context<'a> {
    pub pv: &'a PolarizedVariety,
    pub delta: RationalPolytope,
    pub measure: DHMeasure,
    pub lambda0: QVec,
    pub pieces: Vec<(usize, RationalPolytope)>,
    pub n: usize,
}

impl<'a> Context<'a> {
    pub fn new(pv: &'a PolarizedVariety) -> Result<Self> {
        let delta = pv.special_polytope()?;
        let measure = DHMeasure::new(pv);
        measure.check_region(&delta)?;
        let lambda0 = pv.lambda0()?;
        let pieces = pv.subdivision()?;
        Ok(Context { pv, delta, measure, lambda0, pieces, n: pv.dimension() })
    }

    fn one(&self) -> PolyForm {
        PolyForm::constant(self.pv.datum.rank(), Q::one())
    }

    pub fn volume(&self) -> Result<Q> {
        self.measure.integrate(&self.delta, &self.one())
    }
}

/// `Λ_Y = (n_Y - c_Y) / v_L(mu_Y)` for every ray.
pub fn lambda_y(pv: &PolarizedVariety) -> Result<Vec<Q>> {
    pv.anticanonical_coefficients()
        .iter()
        .zip(&pv.v_values)
        .enumerate()
        .map(|(i, ((_, nt), v))| if v.is_zero() { Err(HoroError::ZeroDenominator(i)) } else { Ok(nt / v) })
        .collect()
}

/// `Λ_Y = (n_Y - c_Y) / sup{ p(mu_Y) : p in chi - Delta^+ }`.
pub fn lambda_y_support(pv: &PolarizedVariety) -> Result<Vec<Q>> {
    let delta = pv.special_polytope()?;
    let neg_delta = delta.scaled(&Q::one()).vertices.iter().map(|v| crate::rational::neg(v)).collect::<Vec<_>>();
    pv.anticanonical_coefficients()
        .iter()
        .zip(&pv.rays)
        .enumerate()
        .map(|(i, ((_, nt), mu))| {
            let sup = neg_delta.iter().map(|p| dot(p, mu)).max().expect("nonempty");
            if sup.is_zero() {
                Err(HoroError::ZeroDenominator(i))
            } else {
                Ok(nt / sup)
            }
        })
        .collect()
}

/// `S̄_Θ = Σ_Y ∫_{Δ~_Y} (n Λ_Y P_DH + d_q P_DH(chi^ac - Λ_Y chi)) / ∫_Delta P_DH`.
pub fn s_bar_theta(ctx: &Context) -> Result<Q> {
    let lam = lambda_y(ctx.pv)?;
    let one = ctx.one();
    let nq = q(ctx.n as i64);
    let mut total = Q::zero();
    for (i, piece) in &ctx.pieces {
        let dir = sub(&ctx.pv.datum.chi_ac, &scale(&lam[*i], &ctx.pv.chi));
        total += &nq * &lam[*i] * ctx.measure.integrate(piece, &one)?;
        total += ctx.measure.integrate_gradient(piece, &one, &dir)?;
    }
    let b = ctx.volume()?;
    if b.is_zero() {
        return Err(HoroError::Assumption("moment polytope has zero Duistermaat–Heckman volume".into()));
    }
    Ok(total / b)
}

/// Constant and residues of `F_L` on each piece.
pub fn f_pieces(ctx: &Context, s_bar: &Q) -> Result<Vec<FPiece>> {
    let lam = lambda_y(ctx.pv)?;
    let np1 = q(ctx.n as i64 + 1);
    Ok(ctx
        .pieces
        .iter()
        .map(|(i, _)| {
            let dir = sub(&ctx.pv.datum.chi_ac, &scale(&lam[*i], &ctx.pv.chi));
            let residues = ctx
                .measure
                .roots
                .iter()
                .zip(&ctx.measure.rho_pairings)
                .map(|(a, rp)| dot(a, &dir) / rp)
                .collect();
            FPiece { ray: *i, constant: &np1 * &lam[*i] - s_bar, residues }
        })
        .collect())
}

/// The polynomial `F_L · P_DH` on a piece.
pub fn f_piece_poly(piece: &FPiece, measure: &DHMeasure) -> PolyForm {
    let r = measure.nvars();
    let prod = |skip: Option<usize>| {
        measure
            .forms
            .iter()
            .enumerate()
            .filter(|(j, _)| Some(*j) != skip)
            .fold(PolyForm::constant(r, Q::one()), |acc, (_, f)| acc.mul(&PolyForm::affine(f)))
    };
    let mut p = prod(None).scale(&piece.constant);
    for (i, res) in piece.residues.iter().enumerate() {
        if !res.is_zero() {
            p = p.add(&prod(Some(i)).scale(res));
        }
    }
    p
}

/// `∫_piece poly · F_L · P_DH`, without expanding the product.
pub fn integrate_f(ctx: &Context, piece: &FPiece, region: &RationalPolytope, poly: &PolyForm) -> Result<Q> {
    let mut total = &piece.constant * ctx.measure.integrate(region, poly)?;
    for (i, res) in piece.residues.iter().enumerate() {
        if !res.is_zero() {
            total += res * ctx.measure.integrate_without(region, poly, i);
        }
    }
    Ok(total)
}

/// Merges density forms that are positive multiples of each other so that the
/// cell bound sees their residues together.
fn merged_terms(piece: &FPiece, measure: &DHMeasure) -> Vec<(Q, AffineForm)> {
    let mut out: Vec<(Q, AffineForm)> = Vec::new();
    for (r, f) in piece.residues.iter().zip(&measure.forms) {
        if r.is_zero() {
            continue;
        }
        let found = out.iter_mut().find_map(|(acc, g)| {
            let i = g.coeffs.iter().position(|c| !c.is_zero())?;
            let k = &f.coeffs[i] / &g.coeffs[i];
            (k.is_positive() && scale(&k, &g.coeffs) == f.coeffs && &g.constant * &k == f.constant).then_some((acc, k))
        });
        match found {
            Some((acc, k)) => *acc += r / k,
            None => out.push((r.clone(), f.clone())),
        }
    }
    out
}

/// Positivity of `F_L` on every piece: exact for constant pieces, otherwise a
/// cell-wise lower bound with bisection up to `depth`.
pub fn check_f_positive(ctx: &Context, pieces: &[FPiece], depth: usize) -> Positivity {
    for (piece, (_, region)) in pieces.iter().zip(&ctx.pieces) {
        if !piece.has_residues() {
            if !piece.constant.is_positive() {
                return Positivity::NotPositive {
                    ray: piece.ray,
                    point: region.vertices[0].clone(),
                    value: piece.constant.clone(),
                };
            }
            continue;
        }
        let terms = merged_terms(piece, &ctx.measure);
        for simplex in triangulate(region) {
            match certify_cell(piece, &terms, &simplex, depth) {
                Positivity::Positive => {}
                other => return other,
            }
        }
    }
    Positivity::Positive
}

fn certify_cell(piece: &FPiece, terms: &[(Q, AffineForm)], cell: &[QVec], depth: usize) -> Positivity {
    // lower bound: each r/ℓ is monotone in ℓ, and ℓ is extremal at vertices
    let mut bound = Some(piece.constant.clone());
    for (r, f) in terms {
        let vals: Vec<Q> = cell.iter().map(|v| f.eval(v)).collect();
        let lo = vals.iter().min().unwrap().clone();
        let hi = vals.iter().max().unwrap().clone();
        let term = if r.is_positive() {
            if hi.is_positive() {
                Some(r / hi)
            } else {
                Some(Q::zero())
            }
        } else if lo.is_positive() {
            Some(r / lo)
        } else {
            None
        };
        bound = match (bound, term) {
            (Some(b), Some(t)) => Some(b + t),
            _ => None,
        };
    }
    if bound.as_ref().is_some_and(|b| b.is_positive()) {
        return Positivity::Positive;
    }
    let k = q(cell.len() as i64);
    let centroid = scale(&(Q::one() / k), &cell.iter().fold(zeros(cell[0].len()), |a, v| add(&a, v)));
    let value = terms.iter().fold(Some(piece.constant.clone()), |acc, (r, f)| {
        let l = f.eval(&centroid);
        match acc {
            Some(a) if !l.is_zero() => Some(a + r / l),
            _ => None,
        }
    });
    if let Some(v) = &value {
        if !v.is_positive() {
            return Positivity::NotPositive { ray: piece.ray, point: centroid, value: v.clone() };
        }
    }
    if depth == 0 || simplex_volume(cell).is_zero() {
        return Positivity::Inconclusive { ray: piece.ray, cell: cell.to_vec() };
    }
    // bisect the longest edge
    let mut best = (0, 1, Q::zero());
    for i in 0..cell.len() {
        for j in i + 1..cell.len() {
            let d = sub(&cell[i], &cell[j]);
            let len = dot(&d, &d);
            if len > best.2 {
                best = (i, j, len);
            }
        }
    }
    let (i, j, _) = best;
    let mid = scale(&crate::rational::qr(1, 2), &add(&cell[i], &cell[j]));
    for replace in [i, j] {
        let mut child = cell.to_vec();
        child[replace] = mid.clone();
        match certify_cell(piece, terms, &child, depth - 1) {
            Positivity::Positive => {}
            other => return other,
        }
    }
    Positivity::Positive
}

/// Full coercivity analysis with bisection depth `depth`.
pub fn coercivity(pv: &PolarizedVariety, depth: usize) -> Result<CoercivityReport> {
    let ctx = Context::new(pv)?;
    let assumptions = pv.check_assumptions()?;
    let lam = lambda_y(pv)?;
    let lam_support = lambda_y_support(pv)?;
    let s_bar = s_bar_theta(&ctx)?;
    let pieces = f_pieces(&ctx, &s_bar)?;
    let f_positive = check_f_positive(&ctx, &pieces, depth);
    let r = pv.datum.rank();
    let one = ctx.one();
    let mut a = Q::zero();
    let mut moment = zeros(r);
    for (piece, (_, region)) in pieces.iter().zip(&ctx.pieces) {
        a += integrate_f(&ctx, piece, region, &one)?;
        for (j, mj) in moment.iter_mut().enumerate() {
            *mj += integrate_f(&ctx, piece, region, &PolyForm::var(r, j))?;
        }
    }
    let b = ctx.volume()?;
    let mu_min = lam.iter().min().cloned().ok_or_else(|| HoroError::InvalidPolarization("no rays".into()))?;
    let (f_barycenter, test_vector, dual) = if a.is_zero() {
        (zeros(r), zeros(r), DualChamberVerdict { inside: false, coefficients: None, residual: Vec::new() })
    } else {
        let fb = scale(&(Q::one() / &a), &moment);
        let w = sub(&scale(&mu_min, &fb), &pv.datum.two_rho_h);
        let dual = rel_interior_dual_chamber(&w, &pv.datum);
        (fb, w, dual)
    };
    if f_positive.is_positive() && !a.is_positive() {
        return Err(HoroError::Internal(format!("F_L is positive but its integral is {}", fmt_q(&a))));
    }
    let verdict = match &f_positive {
        Positivity::Inconclusive { .. } => Verdict::Inconclusive,
        Positivity::NotPositive { .. } => Verdict::False,
        Positivity::Positive => {
            if dual.inside && assumptions.toroidal && assumptions.wall_multiplicity {
                Verdict::True
            } else {
                Verdict::False
            }
        }
    };
    let n_y = pv.anticanonical_coefficients().into_iter().map(|(n, _)| n).collect();
    Ok(CoercivityReport {
        lambda0: ctx.lambda0.clone(),
        n: ctx.n,
        n_y,
        lambda_y: lam,
        lambda_y_support: lam_support,
        s_bar_theta: s_bar,
        pieces,
        a,
        b,
        moment,
        f_barycenter,
        mu_min,
        test_vector,
        dual_chamber: dual,
        f_positive,
        assumptions,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeReport {
    /// Plain Duistermaat–Heckman barycenter in covector coordinates.
    pub barycenter: QVec,
    /// `bar - Σ alpha` restricted to `a_s`.
    pub translated: QVec,
    pub dual_chamber: DualChamberVerdict,
    pub assumptions: AssumptionReport,
    /// Assumptions (T) and (R) both hold, so the verdict characterizes properness.
    pub criterion_applies: bool,
    /// Barycenter condition.
    pub verdict: Verdict,
}

/// Log-Kähler–Einstein criterion for `L = K^{-1}_{X,Θ}`.
pub fn check_ke(pv: &PolarizedVariety) -> Result<KeReport> {
    pv.is_log_anticanonical().map_err(HoroError::NotAnticanonical)?;
    let ctx = Context::new(pv)?;
    let assumptions = pv.check_assumptions()?;
    let r = pv.datum.rank();
    let b = ctx.volume()?;
    if b.is_zero() {
        return Err(HoroError::Assumption("moment polytope has zero Duistermaat–Heckman volume".into()));
    }
    let barycenter: QVec = (0..r)
        .map(|j| ctx.measure.integrate(&ctx.delta, &PolyForm::var(r, j)).map(|x| x / &b))
        .collect::<Result<_>>()?;
    let translated = sub(&barycenter, &pv.datum.two_rho_h);
    let dual = rel_interior_dual_chamber(&translated, &pv.datum);
    let verdict = if dual.inside { Verdict::True } else { Verdict::False };
    let criterion_applies = assumptions.toroidal && assumptions.wall_multiplicity;
    Ok(KeReport { barycenter, translated, dual_chamber: dual, assumptions, criterion_applies, verdict })
}

/// Log-Futaki invariant along a central direction `b` (a point of `a_s`).
pub fn log_futaki(pv: &PolarizedVariety, b: &[Q]) -> Result<Q> {
    let d = &pv.datum;
    for rr in &d.restricted_roots {
        if !dot(&rr.root, b).is_zero() {
            return Err(HoroError::NotCentral(format!("{} is not fixed by the restricted Weyl group", fmt_qvec(b))));
        }
    }
    let ctx = Context::new(pv)?;
    let s_bar = s_bar_theta(&ctx)?;
    let lam = lambda_y(pv)?;
    let r = d.rank();
    // q(b) = m(b) since chi vanishes on a_s
    let qb = PolyForm::affine(&AffineForm { coeffs: b.to_vec(), constant: Q::zero() }).scale(&q(-2));
    let dir = sub(&d.chi_ac, &pv.chi);
    let np1 = q(ctx.n as i64 + 1);
    let mut total = Q::zero();
    for (i, piece) in &ctx.pieces {
        total += (&np1 * &lam[*i] - &s_bar) * ctx.measure.integrate(piece, &qb)?;
        total += ctx.measure.integrate_gradient(piece, &qb, &dir)?;
    }
    let qu_sum: Q = d.phi_qu.iter().map(|a| dot(&d.pi(a), b)).sum();
    total += q(2) * qu_sum * ctx.measure.integrate(&ctx.delta, &PolyForm::constant(r, Q::one()))?;
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FutakiReport {
    /// `(b, value)` for each basis vector of the central directions.
    pub values: Vec<(QVec, Q)>,
    pub verdict: Verdict,
}

/// Log-Futaki invariants on a basis of the central directions; the verdict
/// is true when all vanish (vacuously when there is no central direction).
pub fn check_futaki(pv: &PolarizedVariety) -> Result<FutakiReport> {
    let mut values = Vec::new();
    for b in pv.datum.central_points() {
        let v = log_futaki(pv, &b)?;
        values.push((b, v));
    }
    let verdict = if values.iter().all(|(_, v)| v.is_zero()) { Verdict::True } else { Verdict::False };
    Ok(FutakiReport { values, verdict })
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub parameter: Q,
    pub ample: Option<bool>,
    pub report: std::result::Result<CoercivityReport, String>,
}

impl ScanRow {
    pub fn verdict(&self) -> Verdict {
        match (&self.ample, &self.report) {
            (Some(true), Ok(r)) => r.verdict.clone(),
            _ => Verdict::NotApplicable,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub low: Q,
    pub high: Q,
    pub from: Verdict,
    pub to: Verdict,
}

#[derive(Debug, Clone)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    pub brackets: Vec<Bracket>,
}

/// Evaluates a family at every parameter value (in parallel) and brackets
/// verdict transitions between consecutive values.
pub fn scan_family<F>(values: &[Q], build: F, depth: usize) -> ScanTable
where
    F: Fn(&Q) -> Result<PolarizedVariety> + Sync,
{
    let mut rows: Vec<ScanRow> = values
        .par_iter()
        .map(|t| match build(t) {
            Err(e) => ScanRow { parameter: t.clone(), ample: None, report: Err(e.to_string()) },
            Ok(pv) => {
                let ample = pv.is_ample().ok().map(|a| a.ample);
                let report = coercivity(&pv, depth).map_err(|e| e.to_string());
                ScanRow { parameter: t.clone(), ample, report }
            }
        })
        .collect();
    rows.sort_by(|a, b| a.parameter.cmp(&b.parameter));
    let brackets = rows
        .windows(2)
        .filter(|w| w[0].verdict() != w[1].verdict())
        .map(|w| Bracket {
            low: w[0].parameter.clone(),
            high: w[1].parameter.clone(),
            from: w[0].verdict(),
            to: w[1].verdict(),
        })
        .collect();
    ScanTable { rows, brackets }
}

/// Parameter grid `from, from + step, ...` up to and including `to`.
pub fn grid(from: &Q, to: &Q, step: &Q) -> Vec<Q> {
    let mut out = Vec::new();
    if !step.is_positive() {
        return out;
    }
    let mut t = from.clone();
    while &t <= to {
        out.push(t.clone());
        t += step;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qr, qvec};
    use crate::restricted::derive;
    use crate::rootdata::{build_involution, build_parabolic, build_root_system, full_parabolic, InvolutionKind, Series};

    fn aiii_pv(b: Q) -> PolarizedVariety {
        let sys = build_root_system(Series::A, 4).unwrap();
        let s = build_involution(InvolutionKind::AIII { r: 2, m: 5 }, &sys).unwrap();
        let d = derive(&sys, &full_parabolic(&sys), &s, None).unwrap();
        let rays = vec![vec![qr(-1, 2), qr(-1, 2)], vec![qr(-1, 2), q(0)]];
        PolarizedVariety::new(d, rays, vec![q(1) + b, q(1)]).unwrap()
    }

    #[test]
    fn aiii_verdicts() {
        let good = coercivity(&aiii_pv(qr(2, 5)), DEFAULT_F_DEPTH).unwrap();
        assert_eq!(good.verdict, Verdict::True);
        assert_eq!(good.lambda_y, good.lambda_y_support);
        assert_eq!(good.lambda_y[1], q(5));
        let bad = coercivity(&aiii_pv(qr(1, 5)), DEFAULT_F_DEPTH).unwrap();
        assert_eq!(bad.verdict, Verdict::False);
    }

    #[test]
    fn ke_examples() {
        let sys = build_root_system(Series::A, 1).unwrap();
        let s = build_involution(InvolutionKind::AIII { r: 1, m: 2 }, &sys).unwrap();
        let d = derive(&sys, &full_parabolic(&sys), &s, None).unwrap();
        let p1p1 = PolarizedVariety::anticanonical(d, vec![vec![qr(-1, 2)]], vec![q(0)]).unwrap();
        let ke = check_ke(&p1p1).unwrap();
        assert_eq!(ke.barycenter, vec![qr(8, 3)]);
        assert_eq!(ke.verdict, Verdict::True);
        assert!(!ke.criterion_applies);
        let rep = coercivity(&p1p1, DEFAULT_F_DEPTH).unwrap();
        assert_eq!(rep.s_bar_theta, q(2));
        assert_eq!(rep.test_vector, ke.translated);

        let h = build_involution(InvolutionKind::Horospherical { levi: vec![] }, &sys).unwrap();
        let d = derive(&sys, &build_parabolic(&sys, &[]).unwrap(), &h, None).unwrap();
        let f1 = PolarizedVariety::anticanonical(d, vec![qvec(&[1]), qvec(&[-1])], vec![q(0); 2]).unwrap();
        let ke = check_ke(&f1).unwrap();
        assert_eq!(ke.barycenter, vec![qr(13, 6)]);
        assert_eq!(ke.verdict, Verdict::False);
        let fut = check_futaki(&f1).unwrap();
        assert_eq!(fut.verdict, Verdict::False);
    }

    #[test]
    fn piece_poly_in_ke_case_is_density() {
        let sys = build_root_system(Series::A, 4).unwrap();
        let s = build_involution(InvolutionKind::AIII { r: 2, m: 5 }, &sys).unwrap();
        let d = derive(&sys, &full_parabolic(&sys), &s, None).unwrap();
        let rays = vec![vec![qr(-1, 2), qr(-1, 2)], vec![qr(-1, 2), q(0)]];
        let pv = PolarizedVariety::anticanonical(d, rays, vec![q(0), q(0)]).unwrap();
        let ctx = Context::new(&pv).unwrap();
        let s_bar = s_bar_theta(&ctx).unwrap();
        assert_eq!(s_bar, q(12));
        let pieces = f_pieces(&ctx, &s_bar).unwrap();
        let density = ctx.measure.forms.iter().fold(PolyForm::constant(2, Q::one()), |a, f| a.mul(&PolyForm::affine(f)));
        for p in &pieces {
            assert_eq!(p.constant, q(1));
            assert_eq!(f_piece_poly(p, &ctx.measure), density);
        }
    }

    #[test]
    fn grid_endpoints() {
        assert_eq!(grid(&q(0), &q(1), &qr(1, 4)).len(), 5);
        assert!(grid(&q(1), &q(0), &qr(1, 4)).is_empty());
    }
}
