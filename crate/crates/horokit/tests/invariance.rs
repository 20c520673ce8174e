//! Exact invariances of the coercivity analysis.

use horokit::criteria::{check_ke, coercivity, lambda_y, lambda_y_support, Verdict, DEFAULT_F_DEPTH};
use horokit::fixtures;
use horokit::linebundle::PolarizedVariety;
use horokit::rational::{q, qr, Q};
use num::One;

/// Fixtures with a base point `lambda_0`, the ones the coercivity analysis covers.
fn analyzable() -> Vec<(&'static str, PolarizedVariety)> {
    let all: Vec<_> = fixtures::all().unwrap().into_iter().filter(|(_, pv)| pv.lambda0().is_ok()).collect();
    assert!(all.len() >= 6);
    all
}

#[test]
fn test_vector_is_scale_invariant() {
    for (name, pv) in analyzable() {
        let base = coercivity(&pv, DEFAULT_F_DEPTH).unwrap();
        for s in [q(2), q(3)] {
            let scaled = coercivity(&pv.scaled(&s), DEFAULT_F_DEPTH).unwrap();
            assert_eq!(scaled.test_vector, base.test_vector, "{name}, scale {s}");
            assert_eq!(scaled.verdict, base.verdict, "{name}, scale {s}");
            assert_eq!(scaled.a * &s, base.a.clone() * s.pow(pv.dimension() as i32), "{name}");
        }
    }
}

#[test]
fn rescaling_balances_a_and_b() {
    for (name, pv) in analyzable() {
        let rep = coercivity(&pv, DEFAULT_F_DEPTH).unwrap();
        let scale = &rep.a / &rep.b;
        let balanced = coercivity(&pv.scaled(&scale), DEFAULT_F_DEPTH).unwrap();
        assert_eq!(balanced.a, balanced.b, "{name}");
        assert_eq!(balanced.test_vector, rep.test_vector, "{name}");
    }
}

#[test]
fn both_lambda_formulas_agree() {
    for (name, pv) in fixtures::all().unwrap() {
        assert_eq!(lambda_y(&pv).unwrap(), lambda_y_support(&pv).unwrap(), "{name}");
    }
    for b in [qr(1, 5), qr(2, 5), qr(3, 5)] {
        let pv = fixtures::aiii_2_5(b).unwrap();
        assert_eq!(lambda_y(&pv).unwrap(), lambda_y_support(&pv).unwrap());
    }
}

#[test]
fn anticanonical_case_reduces_to_the_barycenter() {
    for (name, pv) in analyzable() {
        if pv.is_log_anticanonical().is_err() {
            continue;
        }
        let rep = coercivity(&pv, DEFAULT_F_DEPTH).unwrap();
        assert!(rep.lambda_y.iter().all(|l| l.is_one()), "{name}");
        assert_eq!(rep.s_bar_theta, q(rep.n as i64), "{name}");
        for piece in &rep.pieces {
            assert!(piece.constant.is_one() && !piece.has_residues(), "{name}");
        }
        assert_eq!(rep.test_vector, check_ke(&pv).unwrap().translated, "{name}");
    }
}

fn permuted(pv: &PolarizedVariety, order: &[usize]) -> PolarizedVariety {
    let rays = order.iter().map(|&i| pv.rays[i].clone()).collect();
    let v: Vec<Q> = order.iter().map(|&i| pv.v_values[i].clone()).collect();
    let mut out = PolarizedVariety::new(pv.datum.clone(), rays, v).unwrap().with_chi(pv.chi.clone()).unwrap();
    for (c, value) in pv.colors.iter().zip(&pv.color_constants) {
        out = out.with_color_constant(&c.label, value.clone()).unwrap();
    }
    out
}

#[test]
fn verdicts_ignore_ray_order() {
    let cases = [
        (fixtures::toric_p2().unwrap(), vec![vec![2, 0, 1], vec![1, 2, 0]]),
        (fixtures::toric_p1xp1().unwrap(), vec![vec![3, 2, 1, 0], vec![1, 3, 0, 2]]),
        (fixtures::f1_anticanonical().unwrap(), vec![vec![1, 0]]),
        (fixtures::aiii_2_5(qr(2, 5)).unwrap(), vec![vec![1, 0]]),
        (fixtures::aiii_2_5(qr(1, 5)).unwrap(), vec![vec![1, 0]]),
    ];
    for (pv, orders) in cases {
        let base = coercivity(&pv, DEFAULT_F_DEPTH).unwrap();
        for order in orders {
            let rep = coercivity(&permuted(&pv, &order), DEFAULT_F_DEPTH).unwrap();
            assert_eq!(rep.verdict, base.verdict);
            assert_eq!(rep.test_vector, base.test_vector);
            let lam: Vec<Q> = order.iter().map(|&i| base.lambda_y[i].clone()).collect();
            assert_eq!(rep.lambda_y, lam);
        }
    }
    assert_eq!(coercivity(&fixtures::aiii_2_5(qr(2, 5)).unwrap(), DEFAULT_F_DEPTH).unwrap().verdict, Verdict::True);
}
