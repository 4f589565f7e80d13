//! Resolvent computation in the Euclidean setting.
//!
//! With the Euclidean norm the duality mapping is the identity, so the
//! inclusion `x* in J(z - x) + T(z)` collapses to `z = (I + T)^{-1}(x + x*)`,
//! which every closed-form operator in the catalog solves exactly. A grid
//! minimization oracle provides an independent route for operators that are
//! subdifferentials.

use crate::error::{Error, Result};
use crate::types::grid::Axis;
use crate::types::point::{Dim, DualPair, Point};
use crate::types::spec::OperatorSpec;

/// Euclidean duality mapping: the identity. The returned point satisfies
/// `<Jx, x> = |x|^2 = |Jx|^2` exactly.
pub fn duality_map(x: Point) -> Point {
    x
}

/// Soft-thresholding of `t` at level `lambda`.
pub fn soft_threshold(t: f64, lambda: f64) -> f64 {
    t.signum() * (t.abs() - lambda).max(0.0)
}

/// Unique solution `z` of `x* in (z - x) + T(z)` for a closed-form operator,
/// i.e. `z = (I + T)^{-1}(x + x*)`.
///
/// Finite graphs have no closed form; use [`resolve_oracle`] for those built
/// from a convex potential.
pub fn resolve(t: &OperatorSpec, probe: &DualPair) -> Result<Point> {
    assert_eq!(probe.dim(), t.dim(), "probe dimension does not match operator");
    let w = probe.x.add(&probe.xstar);
    match t {
        OperatorSpec::Linear { a, b } => match probe.dim() {
            Dim::One => {
                let z = (w.scalar() - b.scalar()) / (1.0 + a[0][0]);
                Ok(Point::one(z))
            }
            Dim::Two => {
                // Solve (I + A) z = w - b; the PSD symmetric part keeps the
                // 2x2 system invertible.
                let m = [[1.0 + a[0][0], a[0][1]], [a[1][0], 1.0 + a[1][1]]];
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                assert!(det.abs() > 1e-14, "monotone affine map must be invertible");
                let r = w.sub(b);
                let (r0, r1) = (r.coords()[0], r.coords()[1]);
                Ok(Point::two(
                    (m[1][1] * r0 - m[0][1] * r1) / det,
                    (m[0][0] * r1 - m[1][0] * r0) / det,
                ))
            }
        },
        OperatorSpec::SubdiffQuadratic { a, c } => {
            Ok(Point::one((w.scalar() - c) / (1.0 + a)))
        }
        OperatorSpec::SubdiffAbs { shift } => {
            Ok(Point::one(shift + soft_threshold(w.scalar() - shift, 1.0)))
        }
        OperatorSpec::NormalConeBox { lo, hi } => Ok(Point::one(w.scalar().clamp(*lo, *hi))),
        OperatorSpec::VerticalLine { c } => Ok(Point::one(*c)),
        OperatorSpec::HorizontalLine { c } => Ok(Point::one(w.scalar() - c)),
        OperatorSpec::FiniteGraph(_) => Err(Error::ResolventNeedsClosedForm),
    }
}

/// Independent oracle for the resolvent of a subdifferential: minimizes
/// `|z - (x + x*)|^2 / 2 + g(z)` over the grid, which solves the inclusion
/// up to one grid step. Ties break toward the smaller grid index.
pub fn resolve_oracle(t: &OperatorSpec, probe: &DualPair, grid: &Axis) -> Result<f64> {
    let g = t.origin_fn().ok_or(Error::NoSubdifferentialOrigin)?;
    let w = probe.x.add(&probe.xstar).scalar();
    let mut best: Option<(f64, f64)> = None;
    for z in grid.points() {
        if let Some(v) = g.eval(z).as_finite() {
            let obj = 0.5 * (z - w) * (z - w) + v;
            if best.is_none_or(|(bo, _)| obj < bo) {
                best = Some((obj, z));
            }
        }
    }
    best.map(|(_, z)| z).ok_or(Error::ImproperFunction)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duality_map_is_identity() {
        assert_eq!(duality_map(Point::one(0.0)).scalar(), 0.0);
        assert_eq!(duality_map(Point::one(-2.0)).scalar(), -2.0);
        let x = Point::two(3.0, 4.0);
        let j = duality_map(x);
        assert_eq!(j.dot(&x), 25.0);
        assert_eq!(j.norm_sq(), 25.0);
        assert_eq!(x.norm_sq(), 25.0);
    }

    #[test]
    fn closed_form_examples() {
        let id = OperatorSpec::subdiff_quadratic(1.0, 0.0);
        let z = resolve(&id, &DualPair::one(1.0, 1.0)).unwrap();
        assert_eq!(z.scalar(), 1.0);

        let abs = OperatorSpec::subdiff_abs(0.0);
        let z = resolve(&abs, &DualPair::one(0.0, 1.5)).unwrap();
        assert_eq!(z.scalar(), 0.5);

        let vline = OperatorSpec::vertical_line(0.0);
        for probe in [DualPair::one(2.0, -3.0), DualPair::one(-1.0, 0.5)] {
            assert_eq!(resolve(&vline, &probe).unwrap().scalar(), 0.0);
        }

        let hline = OperatorSpec::horizontal_line(0.5);
        assert_eq!(resolve(&hline, &DualPair::one(1.0, 1.0)).unwrap().scalar(), 1.5);

        let cloud = OperatorSpec::FiniteGraph(crate::types::graph::OperatorGraph::singleton(
            DualPair::one(0.0, 0.0),
        ));
        assert!(matches!(
            resolve(&cloud, &DualPair::one(0.0, 0.0)),
            Err(Error::ResolventNeedsClosedForm)
        ));
    }

    #[test]
    fn planar_affine_resolvent() {
        // Rotation plus identity: strictly monotone, non-symmetric.
        let t = OperatorSpec::linear_2d([[1.0, -1.0], [1.0, 1.0]], (0.0, 0.0)).unwrap();
        let probe = DualPair::new(Point::two(1.0, 0.0), Point::two(0.0, 1.0));
        let z = resolve(&t, &probe).unwrap();
        // (I + A) z = (1, 1) with I + A = [[2, -1], [1, 2]] gives z = (3/5, 1/5).
        assert!((z.coords()[0] - 0.6).abs() < 1e-12);
        assert!((z.coords()[1] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn oracle_examples() {
        let grid = Axis::new(-4.0, 4.0, 801).unwrap();
        let h = grid.step();

        let id = OperatorSpec::subdiff_quadratic(1.0, 0.0);
        let z = resolve_oracle(&id, &DualPair::one(1.0, 1.0), &grid).unwrap();
        assert!((z - 1.0).abs() <= h);

        let abs = OperatorSpec::subdiff_abs(0.0);
        let z = resolve_oracle(&abs, &DualPair::one(0.0, 1.5), &grid).unwrap();
        assert!((z - 0.5).abs() <= h);

        let boxcone = OperatorSpec::normal_cone_box(0.0, 1.0);
        let z = resolve_oracle(&boxcone, &DualPair::one(2.0, 3.0), &grid).unwrap();
        assert!((z - 1.0).abs() <= h);

        let cloud = OperatorSpec::FiniteGraph(crate::types::graph::OperatorGraph::singleton(
            DualPair::one(0.0, 0.0),
        ));
        assert!(matches!(
            resolve_oracle(&cloud, &DualPair::one(0.0, 0.0), &grid),
            Err(Error::NoSubdifferentialOrigin)
        ));
    }

    #[test]
    fn fixed_point_characterization() {
        // (x, x*) in T exactly when the resolvent returns x.
        let id = OperatorSpec::subdiff_quadratic(1.0, 0.0);
        assert_eq!(resolve(&id, &DualPair::one(1.0, 1.0)).unwrap().scalar(), 1.0);
        assert_ne!(resolve(&id, &DualPair::one(1.0, 0.0)).unwrap().scalar(), 1.0);

        let boxcone = OperatorSpec::normal_cone_box(0.0, 1.0);
        assert_eq!(
            resolve(&boxcone, &DualPair::one(0.5, 0.0)).unwrap().scalar(),
            0.5
        );
        assert_eq!(
            resolve(&boxcone, &DualPair::one(1.0, 2.0)).unwrap().scalar(),
            1.0
        );

        let abs = OperatorSpec::subdiff_abs(0.0);
        assert_eq!(resolve(&abs, &DualPair::one(2.0, 1.0)).unwrap().scalar(), 2.0);
        assert_eq!(resolve(&abs, &DualPair::one(0.0, 0.5)).unwrap().scalar(), 0.0);
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        fn catalog() -> Vec<OperatorSpec> {
            vec![
                OperatorSpec::subdiff_quadratic(1.0, 0.0),
                OperatorSpec::subdiff_quadratic(0.5, -0.5),
                OperatorSpec::subdiff_abs(0.0),
                OperatorSpec::subdiff_abs(0.3),
                OperatorSpec::normal_cone_box(-1.0, 0.5),
                OperatorSpec::vertical_line(0.5),
                OperatorSpec::horizontal_line(0.7),
                OperatorSpec::linear_1d(2.0, 0.25).unwrap(),
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn firmly_nonexpansive(
                which in 0usize..8,
                px in -3.0f64..3.0, ps in -3.0f64..3.0,
                qx in -3.0f64..3.0, qs in -3.0f64..3.0,
            ) {
                let t = &catalog()[which];
                let p = DualPair::one(px, ps);
                let q = DualPair::one(qx, qs);
                let zp = resolve(t, &p).unwrap().scalar();
                let zq = resolve(t, &q).unwrap().scalar();
                let wp = px + ps;
                let wq = qx + qs;
                prop_assert!((zp - zq).abs() <= (wp - wq).abs() + 1e-12);
            }
        }
    }
}
