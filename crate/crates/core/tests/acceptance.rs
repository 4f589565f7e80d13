//! Acceptance suite: one test per criterion, each printing a verdict line.
//!
//! Criteria run on the line with windows inside [-4, 4], at most 801 points
//! per axis. Expected values come from closed forms or from independent
//! oracles computed here in the test (brute-force suprema, grid argmins);
//! tolerances are pinned in the asserts.

use monolim::conjugate::{conjugate, conjugate_fast};
use monolim::fitzpatrick::{
    check_class_fstar, fitzpatrick_fn_of, represented_graph, EqualityTol,
};
use monolim::limits::{
    epi_convergence_report, liminf_graphs, liminf_resolvent, EpiConfig, EpiDomain, FnSequence,
    FnTerm, LiminfConfig, OperatorSequence,
};
use monolim::resolvent::{resolve, resolve_oracle};
use monolim::subdiff::separable_bifn;
use monolim::types::ext::ExtReal;
use monolim::types::point::DualPair;
use monolim::verify::{is_window_addable, run_scenario, window_maximality_audit};
use monolim::{hausdorff, Axis, BiFn, FnSpec, Grid2, OperatorGraph, OperatorSpec, SampledFn};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SLACK: f64 = 1e-9;

fn fine_axis() -> Axis {
    Axis::new(-4.0, 4.0, 801).unwrap()
}

fn std_window() -> Grid2 {
    Grid2::square(Axis::standard())
}

fn interior(g: &OperatorGraph, bound: f64) -> OperatorGraph {
    g.filtered(|p| p.x.scalar().abs() <= bound && p.xstar.scalar().abs() <= bound)
}

type ClosedForm = Box<dyn Fn(f64) -> f64>;

#[test]
fn criterion_01_conjugation_oracle_equivalence() {
    let a = fine_axis();
    let h = a.step();
    let catalog: Vec<(&str, SampledFn, ClosedForm)> = vec![
        (
            "half-square",
            SampledFn::sample(&a, |x| ExtReal::finite(0.5 * x * x)).unwrap(),
            Box::new(|s: f64| 0.5 * s * s),
        ),
        (
            "abs",
            SampledFn::sample(&a, |x| ExtReal::finite(x.abs())).unwrap(),
            // Conjugate of |x| + window indicator.
            Box::new(|s: f64| if s.abs() <= 1.0 { 0.0 } else { 4.0 * (s.abs() - 1.0) }),
        ),
        (
            "unit-box",
            SampledFn::sample(&a, |x| {
                if (0.0..=1.0).contains(&x) {
                    ExtReal::ZERO
                } else {
                    ExtReal::INF
                }
            })
            .unwrap(),
            Box::new(|s: f64| s.max(0.0)),
        ),
        (
            "positive-part",
            SampledFn::sample(&a, |x| ExtReal::finite(x.max(0.0))).unwrap(),
            // Conjugate of max(x, 0) + window indicator.
            Box::new(|s: f64| {
                if s < 0.0 {
                    -4.0 * s
                } else if s <= 1.0 {
                    0.0
                } else {
                    4.0 * (s - 1.0)
                }
            }),
        ),
    ];
    for (name, f, closed) in &catalog {
        let brute = conjugate(f, &a).unwrap();
        let fast = conjugate_fast(f, &a).unwrap();
        for i in 0..a.len() {
            let s = a.point(i);
            let gap = (brute.value(i).raw() - fast.value(i).raw()).abs();
            assert!(gap <= 1e-12, "{name}: fast/brute gap {gap} at s={s}");
            if s.abs() <= 3.0 {
                let err = (brute.value(i).raw() - closed(s)).abs();
                assert!(err <= h * h, "{name}: closed-form error {err} at s={s}");
            }
        }
    }
    println!("criterion 01 (conjugation oracle equivalence): PASS");
}

#[test]
fn criterion_02_fitzpatrick_closed_forms() {
    let w = std_window();
    let h = w.step();

    // Oracle: brute-force supremum over the sampled graph.
    let oracle = |cloud: &OperatorGraph, x: f64, s: f64| -> f64 {
        cloud
            .points()
            .iter()
            .map(|p| {
                let (y, ys) = (p.x.scalar(), p.xstar.scalar());
                (y - x) * (s - ys) + x * s
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };

    let identity = OperatorSpec::subdiff_quadratic(1.0, 0.0);
    let phi = fitzpatrick_fn_of(&identity, &w).unwrap();
    let cloud = identity.sample(&w).unwrap();
    for (ix, iy) in w.indices() {
        let (x, s) = w.point(ix, iy);
        assert!((phi.value(ix, iy).raw() - oracle(&cloud, x, s)).abs() <= 1e-12);
        if x.abs() <= 3.0 && s.abs() <= 3.0 {
            let closed = 0.25 * (x + s) * (x + s);
            assert!(
                (phi.value(ix, iy).raw() - closed).abs() <= h,
                "identity at ({x}, {s})"
            );
        }
    }

    let sign = OperatorSpec::subdiff_abs(0.0);
    let phi = fitzpatrick_fn_of(&sign, &w).unwrap();
    let cloud = sign.sample(&w).unwrap();
    for (ix, iy) in w.indices() {
        let (x, s) = w.point(ix, iy);
        assert!((phi.value(ix, iy).raw() - oracle(&cloud, x, s)).abs() <= 1e-12);
        // Where the closed form |x| + indicator(|x*| <= 1) is finite.
        if x.abs() <= 3.0 && s.abs() <= 1.0 {
            assert!(
                (phi.value(ix, iy).raw() - x.abs()).abs() <= h,
                "sign operator at ({x}, {s})"
            );
        }
    }
    println!("criterion 02 (fitzpatrick closed forms): PASS");
}

#[test]
fn criterion_03_maximality_criterion() {
    let w = std_window();
    for g in [
        FnSpec::quadratic(1.0, 0.0),
        FnSpec::abs_shift(0.0),
        FnSpec::indicator_box(0.0, 1.0),
        FnSpec::linear(0.0),
    ] {
        let f = separable_bifn(&g, &w).unwrap();
        let c = check_class_fstar(&f, 1e-9).unwrap();
        assert!(c.passed(), "{g:?} should pass the swapped-conjugate check");
    }
    let delta = BiFn::sample(&w, |x, s| {
        if x == 0.0 && s == 0.0 {
            ExtReal::ZERO
        } else {
            ExtReal::INF
        }
    })
    .unwrap();
    let c = check_class_fstar(&delta, 1e-9).unwrap();
    assert!(!c.passed());
    assert!(!c.report.witnesses.is_empty(), "failure must carry a witness");
    println!("criterion 03 (maximality criterion via swapped conjugate): PASS");
}

#[test]
fn criterion_04_resolvent_matches_oracle() {
    let grid = fine_axis();
    let h = grid.step();
    let specs = vec![
        OperatorSpec::subdiff_quadratic(1.0, 0.0),
        OperatorSpec::subdiff_quadratic(0.5, -0.5),
        OperatorSpec::subdiff_quadratic(2.0, 0.25),
        OperatorSpec::subdiff_abs(0.0),
        OperatorSpec::subdiff_abs(0.3),
        OperatorSpec::normal_cone_box(0.0, 1.0),
        OperatorSpec::normal_cone_box(-1.0, 0.5),
        OperatorSpec::vertical_line(0.5),
        OperatorSpec::horizontal_line(0.7),
        OperatorSpec::linear_1d(1.5, 0.0).unwrap(),
    ];
    let mut rng = StdRng::seed_from_u64(0x6d6f6e6f);
    for _ in 0..100 {
        let probe = DualPair::one(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        for t in &specs {
            let z = resolve(t, &probe).unwrap().scalar();
            let z_oracle = resolve_oracle(t, &probe, &grid).unwrap();
            assert!(
                (z - z_oracle).abs() <= h + SLACK,
                "{t:?} at {probe:?}: {z} vs {z_oracle}"
            );
        }
    }
    println!("criterion 04 (resolvent matches minimization oracle): PASS");
}

#[test]
fn criterion_05_liminf_routes_agree() {
    let w = std_window();
    let probes = w.probe_pairs(2, 1.0);
    let cfg = LiminfConfig::new(0.2, 50);
    let catalog: Vec<(&str, OperatorSequence)> = vec![
        (
            "constant-identity",
            OperatorSequence::constant(OperatorSpec::subdiff_quadratic(1.0, 0.0), 200),
        ),
        (
            "quadratic-drift",
            OperatorSequence::new(200, |n| {
                OperatorSpec::subdiff_quadratic(1.0 + 1.0 / n as f64, 0.0)
            }),
        ),
        (
            "alternating-axes",
            OperatorSequence::alternating(
                OperatorSpec::vertical_line(0.0),
                OperatorSpec::horizontal_line(0.0),
                200,
            ),
        ),
        (
            "abs-drift",
            OperatorSequence::new(200, |n| OperatorSpec::subdiff_abs(1.0 / n as f64)),
        ),
        (
            "vertical-drift",
            OperatorSequence::new(200, |n| OperatorSpec::vertical_line(1.0 / n as f64)),
        ),
    ];
    for (name, seq) in &catalog {
        let lim_g = liminf_graphs(seq, &w, &probes, &cfg).unwrap();
        let lim_r = liminf_resolvent(seq, &probes, &cfg).unwrap();
        assert!(!lim_g.is_empty() && !lim_r.is_empty(), "{name}: empty limit");
        let d = hausdorff(&lim_g, &lim_r).unwrap();
        assert!(d <= 2.0 * cfg.tol + SLACK, "{name}: hausdorff {d}");
    }
    assert!(run_scenario("fact13-resolvent-consistency").unwrap().passed);
    println!("criterion 05 (graph and resolvent liminf routes agree): PASS");
}

#[test]
fn criterion_06_epi_limit_graph_equals_liminf() {
    let w = std_window();
    let h = w.step();
    let limit = separable_bifn(&FnSpec::quadratic(1.0, 0.0), &w).unwrap();
    let equality_graph = interior(
        &represented_graph(&limit, &EqualityTol::Uniform(4.0 * h * h)),
        3.0,
    );
    let seq = OperatorSequence::new(200, |n| {
        OperatorSpec::subdiff_quadratic(1.0 + 1.0 / n as f64, 0.0)
    });
    let probes = w.probe_pairs(1, 1.0);
    let lim = liminf_graphs(&seq, &w, &probes, &LiminfConfig::new(0.05, 50)).unwrap();
    let d = hausdorff(&equality_graph, &lim).unwrap();
    assert!(d <= 2.0 * h + SLACK, "hausdorff {d}");
    assert!(run_scenario("thm22-quadratic").unwrap().passed);
    println!("criterion 06 (equality graph of epi limit equals liminf): PASS");
}

#[test]
fn criterion_07_alternating_axes_reproduced() {
    let w = std_window();
    let seq = OperatorSequence::alternating(
        OperatorSpec::vertical_line(0.0),
        OperatorSpec::horizontal_line(0.0),
        200,
    );
    let probes = w.probe_pairs(2, 1.0);
    let cfg = LiminfConfig::new(0.05, 50);
    let origin = DualPair::one(0.0, 0.0);

    // Both routes produce exactly the origin.
    let lim_g = liminf_graphs(&seq, &w, &probes, &cfg).unwrap();
    assert_eq!(lim_g.len(), 1);
    assert!(lim_g.contains(&origin));
    let lim_r = liminf_resolvent(&seq, &probes, &cfg).unwrap();
    assert_eq!(lim_r.len(), 1);
    assert!(lim_r.contains(&origin));

    // The origin is not window-maximal: (1, 1) can be added monotonically.
    let origin_graph = OperatorGraph::singleton(origin);
    assert!(is_window_addable(&origin_graph, &DualPair::one(1.0, 1.0)));
    assert!(!window_maximality_audit(&origin_graph, &w, 0.1, 2.0).passed());

    // No epi-converging representatives: the scenario checks phi + indicator
    // and finds the oscillation witness at (1, 0).
    let outcome = run_scenario("example-alternating-axes").unwrap();
    assert!(outcome.passed);
    let epi_check = outcome
        .checks
        .iter()
        .find(|c| c.name == "representatives-do-not-epi-converge")
        .unwrap();
    let witness = epi_check
        .report
        .witnesses
        .iter()
        .find(|w| w.location == vec![1.0, 0.0])
        .expect("oscillation witness at (1, 0)");
    assert_eq!(witness.measured, ExtReal::ZERO);
    assert_eq!(witness.bound, ExtReal::INF);
    println!("criterion 07 (alternating-axes example reproduced): PASS");
}

#[test]
fn criterion_08_vertical_lines_representatives_epi_converge() {
    let outcome = run_scenario("thm23-vertical-lines").unwrap();
    assert!(outcome.passed, "{outcome:?}");
    for name in [
        "liminf-is-limit-line",
        "liminf-window-maximal",
        "representatives-epi-converge",
    ] {
        assert!(
            outcome.checks.iter().any(|c| c.name == name && c.matched),
            "missing check {name}"
        );
    }
    println!("criterion 08 (vertical-line representatives epi-converge): PASS");
}

#[test]
fn criterion_09_subdifferential_graph_convergence() {
    let w = std_window();
    let h = w.step();
    let seq = OperatorSequence::new(200, |n| OperatorSpec::subdiff_abs(1.0 / n as f64));
    let probes = w.probe_pairs(2, 1.0);
    let lim = liminf_graphs(&seq, &w, &probes, &LiminfConfig::new(0.05, 50)).unwrap();
    let limit_cloud = interior(&OperatorSpec::subdiff_abs(0.0).sample(&w).unwrap(), 3.0);
    let d = hausdorff(&lim, &limit_cloud).unwrap();
    assert!(d <= 2.0 * h + SLACK, "hausdorff {d}");
    assert!(run_scenario("attouch-shifted-abs").unwrap().passed);
    println!("criterion 09 (liminf of subdifferentials is the limit subdifferential): PASS");
}

#[test]
fn criterion_10_conjugate_verdicts_agree() {
    let outcome = run_scenario("fact12-conjugate-pairs").unwrap();
    assert!(outcome.passed, "{outcome:?}");
    let agree_checks: Vec<_> = outcome
        .checks
        .iter()
        .filter(|c| c.name.starts_with("verdicts-agree-"))
        .collect();
    assert_eq!(agree_checks.len(), 4);
    assert!(agree_checks.iter().all(|c| c.matched));

    // Spot-check one pair directly on the line.
    let axis = Axis::new(-4.0, 4.0, 161).unwrap();
    let domain = EpiDomain::line(axis.clone(), 4, 1.0);
    let cfg = EpiConfig::default_for_step(axis.step());
    let primal = epi_convergence_report(
        &FnSequence::new(200, |n| FnTerm::Spec(FnSpec::abs_shift(1.0 / n as f64))),
        &FnTerm::Spec(FnSpec::abs_shift(0.0)),
        &domain,
        &cfg,
    )
    .unwrap();
    let dual = epi_convergence_report(
        &FnSequence::new(200, |n| {
            FnTerm::Spec(FnSpec::sum(vec![
                FnSpec::linear(1.0 / n as f64),
                FnSpec::indicator_box(-1.0, 1.0),
            ]))
        }),
        &FnTerm::Spec(FnSpec::indicator_box(-1.0, 1.0)),
        &domain,
        &cfg,
    )
    .unwrap();
    assert_eq!(primal.verdict, dual.verdict);
    assert!(primal.passed());
    println!("criterion 10 (epi verdicts agree between sequences and conjugates): PASS");
}

#[test]
fn scenario_catalog_is_green() {
    for name in monolim::verify::scenario_names() {
        let outcome = run_scenario(name).unwrap();
        assert!(outcome.passed, "{name}: {:#?}", outcome.checks);
    }
    println!("scenario catalog: all {} scenarios PASS", monolim::verify::scenario_names().len());
}
