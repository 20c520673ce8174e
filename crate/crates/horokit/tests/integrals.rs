//! Exact Duistermaat–Heckman integrals against a Monte Carlo estimate, and
//! additivity over the subdivision into cones.

mod common;

use horokit::dhintegrate::{DHMeasure, PolyForm};
use horokit::fixtures;
use horokit::rational::{to_f64, Q};
use num::One;

#[test]
fn exact_integrals_match_monte_carlo() {
    for (seed, (name, pv)) in fixtures::all().unwrap().into_iter().enumerate() {
        let delta = pv.special_polytope().unwrap();
        let measure = DHMeasure::new(&pv);
        let r = pv.datum.rank();
        let exact = to_f64(&measure.integrate(&delta, &PolyForm::constant(r, Q::one())).unwrap());
        if let Err(e) = common::within_three_se(&pv, exact, 1_000_000, seed as u64, |_| 1.0) {
            panic!("{name}: {e}");
        }
        let first = to_f64(&measure.integrate(&delta, &PolyForm::var(r, 0)).unwrap());
        if let Err(e) = common::within_three_se(&pv, first, 1_000_000, 100 + seed as u64, |m| m[0]) {
            panic!("{name} first moment: {e}");
        }
    }
}

#[test]
fn subdivision_is_additive() {
    let mut checked = 0;
    for (name, pv) in fixtures::all().unwrap() {
        let assumptions = pv.check_assumptions().unwrap();
        if !assumptions.toroidal {
            continue;
        }
        let delta = pv.special_polytope().unwrap();
        let measure = DHMeasure::new(&pv);
        let r = pv.datum.rank();
        for poly in [PolyForm::constant(r, Q::one()), PolyForm::var(r, r - 1)] {
            let whole = measure.integrate(&delta, &poly).unwrap();
            let parts: Q = pv.subdivision().unwrap().iter().map(|(_, p)| measure.integrate(p, &poly).unwrap()).sum();
            assert_eq!(whole, parts, "{name}");
        }
        let plain = |p: &horokit::polytope::RationalPolytope| p.volume();
        let cones: Q = pv.subdivision().unwrap().iter().map(|(_, p)| plain(p)).sum();
        assert_eq!(cones, plain(&delta), "{name}");
        checked += 1;
    }
    assert!(checked >= 5, "only {checked} fixtures satisfy (T)");
}
