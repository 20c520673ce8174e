//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use horokit::criteria::{
    check_ke, coercivity, grid, lambda_y, lambda_y_support, scan_family, Verdict, DEFAULT_F_DEPTH,
};
use horokit::dhintegrate::{degree, DHMeasure, PolyForm};
use horokit::fixtures;
use horokit::mabuchi_numeric::{
    curvature_average, interior_samples, legendre, legendre_from, scalar_curvature, smoothed_support, Conjugate,
    Convex, CurvatureSettings, Geometry, Preset, QuadratureSpec, ToricPotential,
};
use horokit::polytope::{from_halfspaces, from_points, simplex_volume, triangulate, weyl_orbit_hull};
use horokit::rational::{decimal12, q, qr, to_f64, Q, QVec};
use horokit::restricted::{classify_restricted_type, derive, restricted_coroot};
use horokit::rootdata::{build_involution, build_root_system, full_parabolic, InvolutionKind, Series};
use nalgebra::DVector;
use num::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn coercivity_bounds() -> Outcome {
    let values = grid(&qr(1, 200), &qr(199, 200), &qr(1, 200));
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(err)?;
    let start = Instant::now();
    let table = pool.install(|| scan_family(&values, |b| fixtures::aiii_2_5(b.clone()), DEFAULT_F_DEPTH));
    let elapsed = start.elapsed().as_secs_f64();
    ensure(table.brackets.len() == 2, || format!("expected two transitions, found {:?}", table.brackets))?;
    let width = qr(1, 100);
    for (bracket, target) in table.brackets.iter().zip([qr(31, 100), qr(54, 100)]) {
        ensure(bracket.low <= target && target <= bracket.high && &bracket.high - &bracket.low <= width, || {
            format!("bracket [{}, {}] misses {}", bracket.low, bracket.high, target)
        })?;
    }
    ensure(table.brackets[0].to == Verdict::True && table.brackets[1].from == Verdict::True, || {
        "coercive range is not between the brackets".into()
    })?;
    ensure(elapsed < 60.0, || format!("scan took {elapsed:.1} s"))?;
    let b = &table.brackets;
    Ok(format!(
        "b- in [{}, {}], b+ in [{}, {}], {} rows in {elapsed:.1} s on one thread",
        decimal12(&b[0].low),
        decimal12(&b[0].high),
        decimal12(&b[1].low),
        decimal12(&b[1].high),
        table.rows.len()
    ))
}

fn degree_formula() -> Outcome {
    for k in 1..=5 {
        for m in 1..=5 {
            let d = degree(&fixtures::p1xp1_sl2(k, m).map_err(err)?).map_err(err)?;
            ensure(d == q(2 * k * m), || format!("O({k},{m}) has degree {d}"))?;
        }
    }
    Ok("L^2 = 2km for all 1 <= k, m <= 5".into())
}

fn symmetric_label(rank: usize, kind: InvolutionKind) -> Result<String, String> {
    let sys = build_root_system(Series::A, rank).map_err(err)?;
    let s = build_involution(kind, &sys).map_err(err)?;
    let d = derive(&sys, &full_parabolic(&sys), &s, None).map_err(err)?;
    Ok(classify_restricted_type(&d).label())
}

fn restricted_golden() -> Outcome {
    let golden: BTreeSet<QVec> = [
        vec![qr(1, 2), qr(-1, 2)],
        vec![q(1), q(0)],
        vec![qr(1, 2), qr(1, 2)],
        vec![qr(1, 2), q(0)],
        vec![q(0), q(1)],
        vec![q(0), qr(1, 2)],
    ]
    .into_iter()
    .collect();
    for m in 5..=7 {
        let sys = build_root_system(Series::A, m - 1).map_err(err)?;
        let s = build_involution(InvolutionKind::AIII { r: 2, m }, &sys).map_err(err)?;
        let d = derive(&sys, &full_parabolic(&sys), &s, None).map_err(err)?;
        let table: BTreeSet<QVec> =
            d.phi_s_plus.iter().map(|a| restricted_coroot(a, &d)).collect::<Result<_, _>>().map_err(err)?;
        ensure(table == golden, || format!("AIII(2,{m}) coroots {table:?}"))?;
    }
    let mut cases: Vec<(usize, InvolutionKind, String)> = Vec::new();
    for (r, m) in [(1, 3), (2, 5), (3, 7)] {
        cases.push((m - 1, InvolutionKind::AIII { r, m }, format!("BC{r}")));
    }
    for (r, m) in [(2, 4), (3, 6)] {
        cases.push((m - 1, InvolutionKind::AIII { r, m }, format!("C{r}")));
    }
    for p in 2..=4 {
        cases.push((2 * p - 1, InvolutionKind::AII { p }, format!("A{}", p - 1)));
    }
    for m in 2..=4 {
        cases.push((m - 1, InvolutionKind::AI, format!("2Φ(A{})", m - 1)));
    }
    for (rank, kind, expected) in cases {
        let got = symmetric_label(rank, kind.clone())?;
        ensure(got == expected, || format!("{kind:?}: {got} instead of {expected}"))?;
    }
    Ok("AIII(2,m) coroot table for m = 5..7; BC_r, C_r, A_{p-1}, 2Φ detection".into())
}

fn integral_agreement() -> Outcome {
    let mut additive = 0;
    let all = fixtures::all().map_err(err)?;
    for (seed, (name, pv)) in all.iter().enumerate() {
        let delta = pv.special_polytope().map_err(err)?;
        let measure = DHMeasure::new(pv);
        let r = pv.datum.rank();
        let one = PolyForm::constant(r, Q::one());
        let exact = measure.integrate(&delta, &one).map_err(err)?;
        common::within_three_se(pv, to_f64(&exact), 1_000_000, seed as u64, |_| 1.0).map_err(|e| format!("{name}: {e}"))?;
        if pv.check_assumptions().map_err(err)?.toroidal {
            let parts: Q = pv
                .subdivision()
                .map_err(err)?
                .iter()
                .map(|(_, p)| measure.integrate(p, &one))
                .sum::<horokit::Result<Q>>()
                .map_err(err)?;
            ensure(parts == exact, || format!("{name}: cones give {parts}, polytope {exact}"))?;
            additive += 1;
        }
    }
    Ok(format!("{} fixtures within 3 SE of 10^6 samples; additivity exact on {additive} (T) fixtures", all.len()))
}

fn scalar_curvature_reproduction() -> Outcome {
    let pv = fixtures::p1xp1_sl2(1, 1).map_err(err)?;
    let geom = Geometry::new(&pv).map_err(err)?;
    let fs = ToricPotential::fubini_study_sl2(1.0, 1.0).map_err(err)?;
    let settings = CurvatureSettings::default();
    let mut worst: f64 = 0.0;
    let samples = interior_samples(&geom, 50);
    ensure(samples.len() == 50, || "wrong number of samples".into())?;
    for m in &samples {
        let s = scalar_curvature(&fs, &geom, m, &settings).map_err(err)?.value;
        worst = worst.max((s - 4.0).abs());
    }
    ensure(worst < 1e-6, || format!("max |S - 4| = {worst:.3e}"))?;

    let spec = QuadratureSpec { order: 12, refinement: 2, ..QuadratureSpec::default() };
    let cases: Vec<(&str, horokit::linebundle::PolarizedVariety, Preset)> = vec![
        ("FS O(1,1)", fixtures::p1xp1_sl2(1, 1).map_err(err)?, Preset::FubiniStudy { k: 1.0, c: 1.0 }),
        ("FS O(1,1) c=3", fixtures::p1xp1_sl2(1, 1).map_err(err)?, Preset::FubiniStudy { k: 1.0, c: 3.0 }),
        ("FS O(2,2)", fixtures::p1xp1_sl2(2, 2).map_err(err)?, Preset::FubiniStudy { k: 2.0, c: 1.0 }),
        ("smoothed P1xP1 (SL2)", fixtures::p1xp1_sl2(1, 1).map_err(err)?, Preset::SmoothedSupport { level: 1 }),
        ("smoothed F1", fixtures::f1_anticanonical().map_err(err)?, Preset::SmoothedSupport { level: 4 }),
        ("smoothed toric P2", fixtures::toric_p2().map_err(err)?, Preset::SmoothedSupport { level: 2 }),
        ("smoothed toric P1xP1", fixtures::toric_p1xp1().map_err(err)?, Preset::SmoothedSupport { level: 1 }),
        ("smoothed AIII(2,5) anticanonical", fixtures::aiii_2_5_anticanonical().map_err(err)?, Preset::SmoothedSupport { level: 1 }),
        ("quadratic toric P2", fixtures::toric_p2().map_err(err)?, Preset::Quadratic { scale: 1.0 }),
    ];
    let mut worst_rel: f64 = 0.0;
    let mut excluded = Vec::new();
    let mut checked = 0;
    for (name, pv, preset) in cases {
        let geom = Geometry::new(&pv).map_err(err)?;
        let u = preset.build(&pv).map_err(err)?;
        let avg = curvature_average(&u, &geom, &spec, &settings).map_err(|e| format!("{name}: {e:?}"))?;
        if !preset.is_compact_metric() {
            excluded.push(format!("{name} (relative error {:.2}, not a metric in c1(L))", avg.relative_error));
            continue;
        }
        ensure(avg.relative_error < 1e-5, || format!("{name}: relative error {:.3e}", avg.relative_error))?;
        worst_rel = worst_rel.max(avg.relative_error);
        checked += 1;
    }
    Ok(format!(
        "max |S - 4| = {worst:.1e} at 50 points; ∫S identity on {checked} metrics, worst {worst_rel:.1e}; excluded: {}",
        excluded.join(", ")
    ))
}

fn scale_invariance() -> Outcome {
    let mut count = 0;
    for (name, pv) in fixtures::all().map_err(err)? {
        ensure(lambda_y(&pv).map_err(err)? == lambda_y_support(&pv).map_err(err)?, || format!("{name}: Λ_Y formulas differ"))?;
        if pv.lambda0().is_err() {
            continue;
        }
        let base = coercivity(&pv, DEFAULT_F_DEPTH).map_err(err)?;
        for s in [q(2), q(3)] {
            let scaled = coercivity(&pv.scaled(&s), DEFAULT_F_DEPTH).map_err(err)?;
            ensure(scaled.test_vector == base.test_vector, || format!("{name}: w changes under scale {s}"))?;
        }
        let balanced = coercivity(&pv.scaled(&(&base.a / &base.b)), DEFAULT_F_DEPTH).map_err(err)?;
        ensure(balanced.a == balanced.b, || format!("{name}: A = {} but B = {}", balanced.a, balanced.b))?;
        count += 1;
    }
    Ok(format!("w fixed under λ = 2, 3 and A = B after rescaling on {count} fixtures; Λ_Y formulas agree on all"))
}

fn lebesgue_barycenter(pv: &horokit::linebundle::PolarizedVariety) -> Result<QVec, String> {
    let delta = pv.special_polytope().map_err(err)?;
    let mut weighted = vec![q(0); delta.dim];
    let mut total = q(0);
    for s in triangulate(&delta) {
        let vol = simplex_volume(&s);
        let k = q(s.len() as i64);
        for (i, w) in weighted.iter_mut().enumerate() {
            *w += &vol * s.iter().map(|v| v[i].clone()).sum::<Q>() / &k;
        }
        total += vol;
    }
    Ok(weighted.into_iter().map(|w| w / &total).collect())
}

fn toric_degeneration() -> Outcome {
    for (name, pv) in [("P2", fixtures::toric_p2().map_err(err)?), ("P1xP1", fixtures::toric_p1xp1().map_err(err)?)] {
        let bar = lebesgue_barycenter(&pv)?;
        let ke = check_ke(&pv).map_err(err)?;
        let zero = bar.iter().all(|x| x.is_zero());
        ensure(zero, || format!("{name}: barycenter {bar:?}"))?;
        ensure((ke.verdict == Verdict::True) == zero && ke.barycenter == bar, || format!("{name}: {:?}", ke.verdict))?;
    }
    Ok("check_ke true with barycenter exactly 0 for P2 and P1xP1".into())
}

fn rat() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=3).prop_map(|(n, d)| qr(n, d))
}

fn property_suites() -> Outcome {
    let config = Config { cases: 48, failure_persistence: None, ..Config::default() };
    let pts = |dim: usize| prop::collection::vec(prop::collection::vec(rat(), dim), dim + 1..=dim + 5);
    let fail = |what: &str, e: String| format!("{what}: {e}");

    let p2 = fixtures::toric_p2().map_err(err)?;
    let p1 = fixtures::p1xp1_sl2(1, 1).map_err(err)?;
    let potentials = vec![
        (smoothed_support(&p2, 1).map_err(err)?, Geometry::new(&p2).map_err(err)?),
        (ToricPotential::fubini_study_sl2(1.0, 0.5).map_err(err)?, Geometry::new(&p1).map_err(err)?),
    ];
    let mut runner = TestRunner::new(config.clone());
    runner
        .run(&(0usize..2, prop::collection::vec(0.05f64..1.0, 3)), |(which, w)| {
            let (u, geom) = &potentials[which];
            let simplex = &geom.delta[0];
            let total: f64 = w.iter().take(simplex.len()).sum();
            let m = simplex.iter().zip(&w).fold(DVector::zeros(geom.rank), |acc, (v, x)| acc + v * (*x / total));
            let p = geom.covector(&m);
            let a = legendre(u, &p).unwrap().argmax;
            let centre = simplex.iter().fold(DVector::zeros(geom.rank), |acc, v| acc + v) / simplex.len() as f64;
            let back = legendre_from(&Conjugate { inner: u }, &a, &geom.covector(&centre)).unwrap();
            let value = u.value(&a).unwrap();
            prop_assert!((back.value - value).abs() < 1e-8 * value.abs().max(1.0));
            Ok(())
        })
        .map_err(|e| fail("Legendre involution", e.to_string()))?;

    let mut runner = TestRunner::new(Config { cases: 100, ..config.clone() });
    runner
        .run(&(0usize..2, prop::collection::vec(-1.5f64..1.5, 2)), |(which, c)| {
            let (u, geom) = &potentials[which];
            let a = DVector::from_iterator(geom.rank, c.into_iter().take(geom.rank));
            let g = u.gradient(&a).unwrap();
            for i in 0..geom.rank {
                let mut e = DVector::zeros(geom.rank);
                e[i] = 1e-5;
                let fd = (u.value(&(&a + &e)).unwrap() - u.value(&(&a - &e)).unwrap()) / 2e-5;
                prop_assert!((fd - g[i]).abs() <= 1e-6 * g[i].abs().max(1.0));
            }
            Ok(())
        })
        .map_err(|e| fail("gradient consistency", e.to_string()))?;

    let group = fixtures::aiii_2_5(qr(2, 5)).map_err(err)?.datum.weyl_group;
    let mut runner = TestRunner::new(config.clone());
    runner
        .run(&prop::collection::vec(prop::collection::vec(rat(), 2), 1..=3), |p| {
            let hull = weyl_orbit_hull(&p, &group).unwrap();
            for g in &group {
                let mut image: Vec<QVec> = hull
                    .vertices
                    .iter()
                    .map(|v| g.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
                    .collect();
                image.sort();
                prop_assert_eq!(&image, &hull.vertices);
            }
            Ok(())
        })
        .map_err(|e| fail("orbit hull invariance", e.to_string()))?;

    let mut runner = TestRunner::new(config.clone());
    runner
        .run(&pts(3), |p| {
            let poly = from_points(&p, 3).unwrap();
            if poly.is_full_dimensional() {
                prop_assert_eq!(&from_halfspaces(&poly.halfspaces, 3).unwrap().vertices, &poly.vertices);
            }
            Ok(())
        })
        .map_err(|e| fail("vertex/halfspace round trip", e.to_string()))?;

    let mut runner = TestRunner::new(config);
    runner
        .run(&pts(2), |p| {
            let poly = from_points(&p, 2).unwrap();
            if poly.is_full_dimensional() {
                let total: Q = triangulate(&poly).iter().map(|s| simplex_volume(s)).sum();
                let mut v = poly.vertices.clone();
                let (cx, cy) = (
                    v.iter().map(|x| to_f64(&x[0])).sum::<f64>() / v.len() as f64,
                    v.iter().map(|x| to_f64(&x[1])).sum::<f64>() / v.len() as f64,
                );
                v.sort_by(|a, b| {
                    let t = |x: &QVec| (to_f64(&x[1]) - cy).atan2(to_f64(&x[0]) - cx);
                    t(a).partial_cmp(&t(b)).unwrap()
                });
                let twice: Q = (0..v.len())
                    .map(|i| {
                        let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
                        &a[0] * &b[1] - &a[1] * &b[0]
                    })
                    .sum();
                prop_assert_eq!(total, twice.abs() / q(2));
            }
            Ok(())
        })
        .map_err(|e| fail("triangulation volume", e.to_string()))?;
    Ok("Legendre involution, gradient vs FD, orbit hulls, round trip, triangulation volume".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 AIII(2,5) coercivity bounds", coercivity_bounds),
        ("2 degree formula on P1xP1", degree_formula),
        ("3 restricted combinatorics golden set", restricted_golden),
        ("4 exact vs Monte Carlo integrals", integral_agreement),
        ("5 scalar curvature reproduction", scalar_curvature_reproduction),
        ("6 scale and normalization invariance", scale_invariance),
        ("7 toric Kähler–Einstein degeneration", toric_degeneration),
        ("8 property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(why) => {
                println!("FAIL [{name}] {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all {} criteria passed", criteria.len());
}
