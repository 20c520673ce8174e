//! Named example varieties used by the tests, the guide and the command line.

use crate::error::Result;
use crate::linebundle::PolarizedVariety;
use crate::rational::{q, qr, qvec, Q};
use crate::restricted::{derive, HorosymmetricDatum};
use crate::rootdata::{build_involution, build_parabolic, build_root_system, full_parabolic, InvolutionKind, Series};

fn symmetric(series: Series, rank: usize, kind: InvolutionKind) -> Result<HorosymmetricDatum> {
    let sys = build_root_system(series, rank)?;
    let s = build_involution(kind, &sys)?;
    derive(&sys, &full_parabolic(&sys), &s, None)
}

fn horospherical(series: Series, rank: usize) -> Result<HorosymmetricDatum> {
    let sys = build_root_system(series, rank)?;
    let h = build_involution(InvolutionKind::Horospherical { levi: vec![] }, &sys)?;
    derive(&sys, &build_parabolic(&sys, &[])?, &h, None)
}

/// Wonderful compactification data of `SL_5/S(GL_2 x GL_3)` with
/// `L = O((1+b) Y_1 + Y_2)`.
pub fn aiii_2_5(b: Q) -> Result<PolarizedVariety> {
    let d = symmetric(Series::A, 4, InvolutionKind::AIII { r: 2, m: 5 })?;
    PolarizedVariety::new(d, aiii_rays(), vec![q(1) + b, q(1)])
}

pub fn aiii_2_5_anticanonical() -> Result<PolarizedVariety> {
    let d = symmetric(Series::A, 4, InvolutionKind::AIII { r: 2, m: 5 })?;
    PolarizedVariety::anticanonical(d, aiii_rays(), vec![q(0), q(0)])
}

fn aiii_rays() -> Vec<Vec<Q>> {
    vec![vec![qr(-1, 2), qr(-1, 2)], vec![qr(-1, 2), q(0)]]
}

/// `P^1 x P^1 = SL_2/T` with `L = O(k, m)`.
pub fn p1xp1_sl2(k: i64, m: i64) -> Result<PolarizedVariety> {
    let d = symmetric(Series::A, 1, InvolutionKind::AIII { r: 1, m: 2 })?;
    PolarizedVariety::new(d, vec![vec![qr(-1, 2)]], vec![qr(k + m, 2)])?
        .with_color_constant("D1+", qr(k - m, 2))?
        .with_color_constant("D1-", qr(m - k, 2))
}

/// Hirzebruch surface `F_1` as a horospherical `SL_2`-variety, anticanonical.
pub fn f1_anticanonical() -> Result<PolarizedVariety> {
    let d = horospherical(Series::A, 1)?;
    PolarizedVariety::anticanonical(d, vec![qvec(&[1]), qvec(&[-1])], vec![q(0); 2])
}

/// Projective plane as a toric variety, anticanonical.
pub fn toric_p2() -> Result<PolarizedVariety> {
    let d = horospherical(Series::T, 2)?;
    PolarizedVariety::anticanonical(d, vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])], vec![q(0); 3])
}

/// `P^1 x P^1` as a toric variety, anticanonical.
pub fn toric_p1xp1() -> Result<PolarizedVariety> {
    let d = horospherical(Series::T, 2)?;
    let rays = vec![qvec(&[1, 0]), qvec(&[-1, 0]), qvec(&[0, 1]), qvec(&[0, -1])];
    PolarizedVariety::anticanonical(d, rays, vec![q(0); 4])
}

/// Every fixture above, with a name.
pub fn all() -> Result<Vec<(&'static str, PolarizedVariety)>> {
    Ok(vec![
        ("aiii-2-5-b-2/5", aiii_2_5(qr(2, 5))?),
        ("aiii-2-5-anticanonical", aiii_2_5_anticanonical()?),
        ("p1xp1-sl2-1-1", p1xp1_sl2(1, 1)?),
        ("p1xp1-sl2-2-3", p1xp1_sl2(2, 3)?),
        ("f1-anticanonical", f1_anticanonical()?),
        ("toric-p2", toric_p2()?),
        ("toric-p1xp1", toric_p1xp1()?),
    ])
}
