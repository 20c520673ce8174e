//! Golden restricted root data.

use std::collections::BTreeSet;

use horokit::rational::{q, qr, QVec};
use horokit::restricted::{classify_restricted_type, derive, restricted_coroot, HorosymmetricDatum};
use horokit::rootdata::{build_involution, build_root_system, full_parabolic, InvolutionKind, Series};

fn symmetric(rank: usize, kind: InvolutionKind) -> HorosymmetricDatum {
    let sys = build_root_system(Series::A, rank).unwrap();
    let s = build_involution(kind, &sys).unwrap();
    derive(&sys, &full_parabolic(&sys), &s, None).unwrap()
}

fn label(rank: usize, kind: InvolutionKind) -> String {
    classify_restricted_type(&symmetric(rank, kind)).label()
}

/// The six restricted coroots of `AIII(2, m)` for `m > 4`.
fn aiii_2_golden() -> BTreeSet<QVec> {
    [
        vec![qr(1, 2), qr(-1, 2)],
        vec![q(1), q(0)],
        vec![qr(1, 2), qr(1, 2)],
        vec![qr(1, 2), q(0)],
        vec![q(0), q(1)],
        vec![q(0), qr(1, 2)],
    ]
    .into_iter()
    .collect()
}

#[test]
fn aiii_2_m_coroot_table() {
    for m in 5..=8 {
        let d = symmetric(m - 1, InvolutionKind::AIII { r: 2, m });
        let table: BTreeSet<QVec> = d.phi_s_plus.iter().map(|a| restricted_coroot(a, &d).unwrap()).collect();
        assert_eq!(table, aiii_2_golden(), "m = {m}");
    }
}

#[test]
fn restricted_types() {
    for (r, m) in [(1, 3), (2, 5), (2, 7), (3, 7)] {
        assert_eq!(label(m - 1, InvolutionKind::AIII { r, m }), format!("BC{r}"));
    }
    for (r, m) in [(2, 4), (3, 6)] {
        assert_eq!(label(m - 1, InvolutionKind::AIII { r, m }), format!("C{r}"));
    }
    for p in 2..=4 {
        assert_eq!(label(2 * p - 1, InvolutionKind::AII { p }), format!("A{}", p - 1));
    }
    for m in 2..=4 {
        assert_eq!(label(m - 1, InvolutionKind::AI), format!("2Φ(A{})", m - 1));
    }
}
