//! Fitzpatrick functions, representative-class checks, and extraction of the
//! operator a convex bifunction represents.
//!
//! For a nonempty graph `T` the Fitzpatrick function is
//! `sup_{(y, y*) in T} <y - x, x* - y*> + <x, x*>`, an affine supremum that
//! is evaluated exactly at every window point; the only discretization error
//! comes from sampling closed-form graphs. A bifunction `F` is a
//! representative candidate when it majorizes the coupling everywhere
//! (class check below), and it represents a maximal monotone operator
//! exactly when its argument-swapped conjugate also majorizes the coupling.

use serde::Serialize;

use crate::conjugate::swap_conjugate;
use crate::error::{Error, Result};
use crate::types::ext::ExtReal;
use crate::types::graph::{dist_to_graph, OperatorGraph};
use crate::types::grid::Grid2;
use crate::types::point::{DualPair, Point};
use crate::types::report::{ConvergenceReport, Witness};
use crate::types::sampled::BiFn;
use crate::types::spec::OperatorSpec;

/// Floating-point floor for the exact pairwise monotonicity test.
pub const MONOTONE_TOL: f64 = 1e-12;

/// Interior margin (in coordinate units) inside which window-truncated
/// conjugates are trusted.
pub const INTERIOR_MARGIN: f64 = 1.0;

/// Cap on stored witnesses; reports note how many more points failed.
const WITNESS_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    ClassF,
    ClassFstar,
    Monotone,
}

/// Outcome of a membership or monotonicity check.
#[derive(Clone, Debug, Serialize)]
pub struct ClassCheck {
    pub kind: CheckKind,
    pub report: ConvergenceReport,
}

impl ClassCheck {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Tolerance rule for extracting the represented operator.
#[derive(Clone, Copy, Debug)]
pub enum EqualityTol {
    /// `factor * h^2 * (1 + |<x, x*>|)`: absorbs quadratic discretization
    /// error near smooth minima, at the price of widening near the window
    /// corners. The default factor is 4.
    ScaledQuadratic { factor: f64 },
    /// A flat tolerance, used by the scenario catalog where Hausdorff bounds
    /// against sampled graphs are asserted.
    Uniform(f64),
}

impl EqualityTol {
    pub fn default_scaled() -> EqualityTol {
        EqualityTol::ScaledQuadratic { factor: 4.0 }
    }

    fn at(&self, step: f64, coupling: f64) -> f64 {
        match *self {
            EqualityTol::ScaledQuadratic { factor } => {
                factor * step * step * (1.0 + coupling.abs())
            }
            EqualityTol::Uniform(t) => t,
        }
    }
}

/// Fitzpatrick function of a finite graph on the window.
pub fn fitzpatrick_fn(t: &OperatorGraph, window: &Grid2) -> Result<BiFn> {
    if t.is_empty() {
        return Err(Error::EmptyOperator);
    }
    // <y - x, x* - y*> + <x, x*> = y x* + x y* - y y*, affine in (x, x*).
    let terms: Vec<(f64, f64, f64)> = t
        .points()
        .iter()
        .map(|p| (p.x.scalar(), p.xstar.scalar(), p.coupling()))
        .collect();
    let mut values = Vec::with_capacity(window.len());
    for (ix, iy) in window.indices() {
        let (x, xs) = window.point(ix, iy);
        let mut best = f64::NEG_INFINITY;
        for &(y, ys, yc) in &terms {
            let v = y * xs + x * ys - yc;
            if v > best {
                best = v;
            }
        }
        values.push(ExtReal::finite(best));
    }
    BiFn::new(window.clone(), values)
}

/// Fitzpatrick function of a closed-form operator, sampled on the window
/// before the supremum.
pub fn fitzpatrick_fn_of(spec: &OperatorSpec, window: &Grid2) -> Result<BiFn> {
    fitzpatrick_fn(&spec.sample(window)?, window)
}

/// `phi_T + indicator(T)` for an operator with convex graph.
///
/// Graph membership of a window point means distance at most half a grid
/// step from the sampled cloud. Closed-form variants are vetted for graph
/// convexity directly; finite graphs get a midpoint audit.
pub fn representative_of_convex_graph(spec: &OperatorSpec, window: &Grid2) -> Result<BiFn> {
    let cloud = spec.sample(window)?;
    if cloud.is_empty() {
        return Err(Error::EmptyOperator);
    }
    match spec {
        OperatorSpec::FiniteGraph(g) => {
            if !midpoint_audit(g, window.step()) {
                return Err(Error::GraphNotConvex);
            }
        }
        _ if spec.has_convex_graph() => {}
        _ => return Err(Error::GraphNotConvex),
    }
    let phi = fitzpatrick_fn(&cloud, window)?;
    let member_radius = 0.5 * window.step();
    let mut values = Vec::with_capacity(window.len());
    for (ix, iy) in window.indices() {
        let (x, xs) = window.point(ix, iy);
        let p = DualPair::new(Point::one(x), Point::one(xs));
        if dist_to_graph(&p, &cloud)? <= member_radius {
            values.push(phi.value(ix, iy));
        } else {
            values.push(ExtReal::INF);
        }
    }
    BiFn::new(window.clone(), values)
}

/// Convexity audit for point clouds: every midpoint of two cloud points must
/// lie within one grid step of the cloud.
fn midpoint_audit(g: &OperatorGraph, step: f64) -> bool {
    let pts = g.points();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let mid = DualPair::new(
                p.x.add(&q.x).scale(0.5),
                p.xstar.add(&q.xstar).scale(0.5),
            );
            if dist_to_graph(&mid, g).expect("nonempty") > step {
                return false;
            }
        }
    }
    true
}

/// Does `F >= coupling - tol` hold at every window point?
pub fn check_class_f(f: &BiFn, tol: f64) -> ClassCheck {
    let mut worst: Option<(DualPair, f64)> = None;
    for (ix, iy) in f.grid().indices() {
        let (x, xs) = f.grid().point(ix, iy);
        if let Some(v) = f.value(ix, iy).as_finite() {
            let violation = x * xs - v;
            if violation > tol && violation > worst.map_or(f64::NEG_INFINITY, |w| w.1) {
                worst = Some((DualPair::one(x, xs), violation));
            }
        }
    }
    let report = match worst {
        None => ConvergenceReport::pass(),
        Some((p, violation)) => ConvergenceReport::fail(vec![Witness::at_pair(
            &p,
            ExtReal::finite(p.coupling() - violation),
            ExtReal::finite(p.coupling() - tol),
        )
        .with_note("value drops below the coupling")]),
    }
    .with_tolerance("tol", tol);
    ClassCheck {
        kind: CheckKind::ClassF,
        report,
    }
}

/// Does the swapped conjugate majorize the coupling on the window interior?
///
/// The conjugate is computed with window truncation, so the inequality is
/// only asserted at points at least [`INTERIOR_MARGIN`] inside.
pub fn check_class_fstar(f: &BiFn, tol: f64) -> Result<ClassCheck> {
    let grid = f.grid();
    let swapped = Grid2::new(grid.y.clone(), grid.x.clone());
    let star = swap_conjugate(f, &swapped)?;
    // star(u, v) is the conjugate queried at (x*, x) = (u, v); the coupling
    // of the pair (v, u) is the same product u * v.
    let xi = swapped.x.interior_indices(INTERIOR_MARGIN);
    let yi = swapped.y.interior_indices(INTERIOR_MARGIN);
    if xi.is_empty() || yi.is_empty() {
        return Ok(ClassCheck {
            kind: CheckKind::ClassFstar,
            report: ConvergenceReport::inconclusive(
                "window has no interior at the truncation margin",
            )
            .with_tolerance("interior_margin", INTERIOR_MARGIN),
        });
    }
    let mut worst: Option<(DualPair, f64)> = None;
    for &iu in &xi {
        for &iv in &yi {
            let (u, v) = swapped.point(iu, iv);
            let value = star
                .value(iu, iv)
                .as_finite()
                .expect("product conjugates are finite");
            let violation = u * v - value;
            if violation > tol && violation > worst.map_or(f64::NEG_INFINITY, |w| w.1) {
                // Report the witness as the pair (x, x*) = (v, u).
                worst = Some((DualPair::one(v, u), violation));
            }
        }
    }
    let report = match worst {
        None => ConvergenceReport::pass(),
        Some((p, violation)) => ConvergenceReport::fail(vec![Witness::at_pair(
            &p,
            ExtReal::finite(p.coupling() - violation),
            ExtReal::finite(p.coupling() - tol),
        )
        .with_note("swapped conjugate drops below the coupling")]),
    }
    .with_tolerance("tol", tol)
    .with_tolerance("interior_margin", INTERIOR_MARGIN);
    Ok(ClassCheck {
        kind: CheckKind::ClassFstar,
        report,
    })
}

/// Grid points where `F` touches the coupling within the tolerance rule:
/// the graph of the operator represented by `F`.
pub fn represented_graph(f: &BiFn, tol: &EqualityTol) -> OperatorGraph {
    let step = f.grid().step();
    let mut pts = Vec::new();
    for (ix, iy) in f.grid().indices() {
        let (x, xs) = f.grid().point(ix, iy);
        if let Some(v) = f.value(ix, iy).as_finite() {
            let c = x * xs;
            if v - c <= tol.at(step, c) {
                pts.push(DualPair::one(x, xs));
            }
        }
    }
    OperatorGraph::new(pts)
}

/// Exact pairwise monotonicity of a point cloud, `O(|T|^2)`.
pub fn is_monotone(t: &OperatorGraph) -> ClassCheck {
    let pts = t.points();
    let mut witnesses = Vec::new();
    let mut failures = 0usize;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let product = q.x.sub(&p.x).dot(&q.xstar.sub(&p.xstar));
            if product < -MONOTONE_TOL {
                failures += 1;
                if witnesses.len() < WITNESS_CAP {
                    witnesses.push(
                        Witness::at_pair(
                            p,
                            ExtReal::finite(product),
                            ExtReal::finite(-MONOTONE_TOL),
                        )
                        .with_partner(q)
                        .with_note("monotonicity product is negative"),
                    );
                }
            }
        }
    }
    let mut report = if witnesses.is_empty() {
        ConvergenceReport::pass()
    } else {
        ConvergenceReport::fail(witnesses)
    }
    .with_tolerance("tol", MONOTONE_TOL);
    if failures > WITNESS_CAP {
        report = report.with_note(format!("{} violating pairs in total", failures));
    }
    ClassCheck {
        kind: CheckKind::Monotone,
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::grid::Axis;

    fn window() -> Grid2 {
        Grid2::square(Axis::standard())
    }

    fn identity_graph(w: &Grid2) -> OperatorGraph {
        OperatorSpec::subdiff_quadratic(1.0, 0.0).sample(w).unwrap()
    }

    #[test]
    fn fitzpatrick_of_identity_graph() {
        let w = window();
        let phi = fitzpatrick_fn(&identity_graph(&w), &w).unwrap();
        let h = w.step();
        // In-test oracle: brute supremum over the sampled graph.
        let cloud = identity_graph(&w);
        for (ix, iy) in w.indices() {
            let (x, xs) = w.point(ix, iy);
            let mut oracle = f64::NEG_INFINITY;
            for p in cloud.points() {
                let (y, ys) = (p.x.scalar(), p.xstar.scalar());
                oracle = oracle.max((y - x) * (xs - ys) + x * xs);
            }
            assert!((phi.value(ix, iy).raw() - oracle).abs() <= 1e-12);
            if x.abs() <= 3.0 && xs.abs() <= 3.0 {
                let closed = 0.25 * (x + xs) * (x + xs);
                assert!(
                    (phi.value(ix, iy).raw() - closed).abs() <= h,
                    "at ({x}, {xs})"
                );
            }
        }
    }

    #[test]
    fn fitzpatrick_of_singleton_is_zero() {
        let w = window();
        let t = OperatorGraph::singleton(DualPair::one(0.0, 0.0));
        let phi = fitzpatrick_fn(&t, &w).unwrap();
        assert!(phi.values().iter().all(|v| *v == ExtReal::ZERO));
    }

    #[test]
    fn fitzpatrick_of_vertical_line_is_scaled_abs() {
        let w = window();
        let phi = fitzpatrick_fn_of(&OperatorSpec::vertical_line(0.0), &w).unwrap();
        for (ix, iy) in w.indices() {
            let (x, _) = w.point(ix, iy);
            assert!((phi.value(ix, iy).raw() - 4.0 * x.abs()).abs() <= 1e-12);
        }
    }

    #[test]
    fn representative_of_vertical_line() {
        let w = window();
        let f = representative_of_convex_graph(&OperatorSpec::vertical_line(0.0), &w).unwrap();
        for (ix, iy) in w.indices() {
            let (x, _) = w.point(ix, iy);
            if x == 0.0 {
                assert_eq!(f.value(ix, iy), ExtReal::ZERO);
            } else {
                assert_eq!(f.value(ix, iy), ExtReal::INF);
            }
        }
    }

    #[test]
    fn representative_of_identity_restricts_to_diagonal() {
        let w = window();
        let spec = OperatorSpec::subdiff_quadratic(1.0, 0.0);
        let f = representative_of_convex_graph(&spec, &w).unwrap();
        for (ix, iy) in w.indices() {
            let (x, xs) = w.point(ix, iy);
            if ix == iy {
                // phi on the diagonal equals the coupling x^2 exactly.
                assert!((f.value(ix, iy).raw() - x * x).abs() <= 1e-12);
            } else {
                assert_eq!(f.value(ix, iy), ExtReal::INF, "at ({x}, {xs})");
            }
        }
    }

    #[test]
    fn fitzpatrick_is_the_smallest_implemented_representative() {
        let w = window();
        for spec in [
            OperatorSpec::vertical_line(0.0),
            OperatorSpec::subdiff_quadratic(1.0, 0.0),
            OperatorSpec::horizontal_line(0.5),
        ] {
            let phi = fitzpatrick_fn_of(&spec, &w).unwrap();
            let rep = representative_of_convex_graph(&spec, &w).unwrap();
            for (ix, iy) in w.indices() {
                assert!(phi.value(ix, iy) <= rep.value(ix, iy));
            }
        }
    }

    #[test]
    fn nonconvex_graphs_are_rejected() {
        let w = window();
        let err = representative_of_convex_graph(&OperatorSpec::subdiff_abs(0.0), &w);
        assert!(matches!(err, Err(Error::GraphNotConvex)));
        // An L-shaped point cloud fails the midpoint audit.
        let cloud = OperatorSpec::subdiff_abs(0.0).sample(&w).unwrap();
        let err = representative_of_convex_graph(&OperatorSpec::FiniteGraph(cloud), &w);
        assert!(matches!(err, Err(Error::GraphNotConvex)));
        // A sampled line passes it.
        let line = identity_graph(&w);
        assert!(representative_of_convex_graph(&OperatorSpec::FiniteGraph(line), &w).is_ok());
    }

    #[test]
    fn class_f_examples() {
        let w = window();
        let sep = BiFn::sample(&w, |x, s| ExtReal::finite(0.5 * x * x + 0.5 * s * s)).unwrap();
        assert!(check_class_f(&sep, 1e-9).passed());

        let sym = BiFn::sample(&w, |x, s| ExtReal::finite(0.25 * (x + s) * (x + s))).unwrap();
        assert!(check_class_f(&sym, 1e-9).passed());

        // The zero function on the window [0, 1]^2 has its worst violation
        // at (1, 1), value 1.
        let small = Grid2::square(Axis::new(0.0, 1.0, 11).unwrap());
        let zero = BiFn::sample(&small, |_, _| ExtReal::ZERO).unwrap();
        let check = check_class_f(&zero, 1e-9);
        assert!(!check.passed());
        let witness = &check.report.witnesses[0];
        assert_eq!(witness.location, vec![1.0, 1.0]);
        assert_eq!(witness.measured, ExtReal::ZERO);
    }

    #[test]
    fn class_fstar_examples() {
        let w = window();
        let sep = BiFn::sample(&w, |x, s| ExtReal::finite(0.5 * x * x + 0.5 * s * s)).unwrap();
        assert!(check_class_fstar(&sep, 1e-9).unwrap().passed());

        let vline =
            representative_of_convex_graph(&OperatorSpec::vertical_line(0.0), &w).unwrap();
        assert!(check_class_fstar(&vline, 1e-9).unwrap().passed());

        let delta = BiFn::sample(&w, |x, s| {
            if x == 0.0 && s == 0.0 {
                ExtReal::ZERO
            } else {
                ExtReal::INF
            }
        })
        .unwrap();
        let check = check_class_fstar(&delta, 1e-9).unwrap();
        assert!(!check.passed());
        assert!(!check.report.witnesses.is_empty());
        // (1, 1) is among the violating points: the swapped conjugate is
        // identically zero, below the coupling 1.
        let star = swap_conjugate(&delta, &w).unwrap();
        let i = w.x.index_nearest(1.0);
        assert_eq!(star.value(i, i), ExtReal::ZERO);
    }

    #[test]
    fn represented_graph_examples() {
        let w = window();
        let h = w.step();
        let tol = EqualityTol::Uniform(4.0 * h * h);

        let sep = BiFn::sample(&w, |x, s| ExtReal::finite(0.5 * x * x + 0.5 * s * s)).unwrap();
        let g = represented_graph(&sep, &tol);
        let bound = (2.0 * 4.0 * h * h).sqrt();
        for p in g.points() {
            assert!((p.x.scalar() - p.xstar.scalar()).abs() <= bound + 1e-12);
        }
        // Every diagonal grid point is kept.
        for x in w.x.points() {
            assert!(g.contains(&DualPair::one(x, x)));
        }

        let sym = BiFn::sample(&w, |x, s| ExtReal::finite(0.25 * (x + s) * (x + s))).unwrap();
        let g = represented_graph(&sym, &tol);
        for p in g.points() {
            assert!((p.x.scalar() - p.xstar.scalar()).abs() <= (4.0 * 4.0 * h * h).sqrt() + 1e-12);
        }

        let vline =
            representative_of_convex_graph(&OperatorSpec::vertical_line(0.0), &w).unwrap();
        let g = represented_graph(&vline, &tol);
        assert_eq!(g.len(), w.y.len());
        assert!(g.points().iter().all(|p| p.x.scalar() == 0.0));
    }

    #[test]
    fn represented_graph_stable_under_equality_indicator() {
        // Adding the indicator of the extracted set does not change it.
        let w = window();
        let tol = EqualityTol::Uniform(4.0 * w.step() * w.step());
        let f = BiFn::sample(&w, |x, s| ExtReal::finite(0.5 * x * x + 0.5 * s * s)).unwrap();
        let g = represented_graph(&f, &tol);
        let masked = BiFn::sample(&w, |x, s| {
            if g.contains(&DualPair::one(x, s)) {
                ExtReal::finite(0.5 * x * x + 0.5 * s * s)
            } else {
                ExtReal::INF
            }
        })
        .unwrap();
        let g2 = represented_graph(&masked, &tol);
        assert_eq!(g.len(), g2.len());
        for (p, q) in g.points().iter().zip(g2.points()) {
            assert!(p.dist(q) <= 1e-12);
        }
    }

    #[test]
    fn monotonicity_examples() {
        let w = window();
        assert!(is_monotone(&identity_graph(&w)).passed());

        let bad = OperatorGraph::new(vec![DualPair::one(0.0, 1.0), DualPair::one(1.0, 0.0)]);
        let check = is_monotone(&bad);
        assert!(!check.passed());
        assert_eq!(check.report.witnesses[0].measured, ExtReal::finite(-1.0));

        let sign = OperatorSpec::subdiff_abs(0.0).sample(&w).unwrap();
        assert!(is_monotone(&sign).passed());
    }

    #[test]
    fn fitzpatrick_majorizes_coupling_for_catalog() {
        let w = window();
        let specs = vec![
            OperatorSpec::subdiff_quadratic(1.0, 0.0),
            OperatorSpec::subdiff_quadratic(2.0, -0.5),
            OperatorSpec::subdiff_abs(0.0),
            OperatorSpec::subdiff_abs(0.25),
            OperatorSpec::normal_cone_box(0.0, 1.0),
            OperatorSpec::vertical_line(0.0),
            OperatorSpec::horizontal_line(0.5),
            OperatorSpec::linear_1d(1.5, 0.0).unwrap(),
        ];
        for spec in &specs {
            let phi = fitzpatrick_fn_of(spec, &w).unwrap();
            assert!(check_class_f(&phi, 1e-9).passed(), "{spec:?}");
            // The smallest representative: pointwise below phi + indicator.
            let cloud = spec.sample(&w).unwrap();
            let member_radius = 0.5 * w.step();
            for (ix, iy) in w.indices() {
                let (x, s) = w.point(ix, iy);
                let p = DualPair::one(x, s);
                if dist_to_graph(&p, &cloud).unwrap() > member_radius {
                    continue;
                }
                // On the graph the Fitzpatrick value equals the coupling.
                if cloud.contains(&p) {
                    assert!((phi.value(ix, iy).raw() - p.coupling()).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn extraction_covers_sampled_graph() {
        let w = window();
        let spec = OperatorSpec::subdiff_quadratic(1.0, 0.0);
        let phi = fitzpatrick_fn_of(&spec, &w).unwrap();
        let extracted = represented_graph(&phi, &EqualityTol::default_scaled());
        let cloud = spec.sample(&w).unwrap();
        for p in cloud.points() {
            assert!(extracted.contains(p), "missing {p:?}");
        }
        // Hausdorff to the sampled graph stays below 2h on the interior. The
        // Fitzpatrick gap grows like (x - x*)^2 / 4, half the curvature of
        // the separable case, so this bound needs the tighter flat rule h^2.
        let h = w.step();
        let tight = represented_graph(&phi, &EqualityTol::Uniform(h * h));
        let interior = OperatorGraph::new(
            tight
                .points()
                .iter()
                .copied()
                .filter(|p| p.x.scalar().abs() <= 3.0 && p.xstar.scalar().abs() <= 3.0)
                .collect(),
        );
        let mut worst = 0.0f64;
        for p in interior.points() {
            worst = worst.max(dist_to_graph(p, &cloud).unwrap());
        }
        assert!(worst <= 2.0 * w.step(), "one-sided distance {worst}");
    }
}
