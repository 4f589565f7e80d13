//! Discrete Legendre-Fenchel conjugation on uniform windows.
//!
//! The brute-force transforms are the reference semantics: the conjugate of
//! `f + indicator(window)`, i.e. a supremum over the stored grid points only.
//! Callers must interpret values near the window edge accordingly; the test
//! suites assert closed forms only at points at least one unit inside.
//!
//! A linear-time 1-d path (`conjugate_fast`) runs a lower-hull construction
//! followed by a monotone-maximizer sweep and agrees with brute force to
//! within 1e-12. The product-space conjugate factors into two passes of the
//! 1-d transform, one per axis, which turns the quartic brute-force cost
//! into a quadratic one; the quartic version lives in the test suite as an
//! oracle.

use crate::error::Result;
use crate::types::ext::ExtReal;
use crate::types::grid::{Axis, Grid2};
use crate::types::sampled::{BiFn, SampledFn};

/// Brute-force conjugate of a sampled function onto a dual window.
///
/// For each dual point `s` this maximizes `x*s - f(x)` over all grid points
/// with finite value, ties broken toward the smaller grid index.
pub fn conjugate(f: &SampledFn, dual: &Axis) -> Result<SampledFn> {
    let xs: Vec<f64> = f.axis().points().collect();
    let vals: Vec<f64> = f.values().iter().map(|v| v.raw()).collect();
    let duals: Vec<f64> = dual.points().collect();
    let out = brute_kernel(&xs, &vals, &duals).expect("sampled functions are proper");
    SampledFn::new(dual.clone(), out.into_iter().map(ExtReal::finite).collect())
}

/// Linear-time 1-d Legendre transform: lower convex hull of the finite
/// sample, then a single sweep with a nondecreasing maximizer pointer.
pub fn conjugate_fast(f: &SampledFn, dual: &Axis) -> Result<SampledFn> {
    let xs: Vec<f64> = f.axis().points().collect();
    let vals: Vec<f64> = f.values().iter().map(|v| v.raw()).collect();
    let duals: Vec<f64> = dual.points().collect();
    let out = fast_kernel(&xs, &vals, &duals).expect("sampled functions are proper");
    SampledFn::new(dual.clone(), out.into_iter().map(ExtReal::finite).collect())
}

/// Conjugate on the product space with the standard pairing
/// `<(u, v), (s, t)> = u s + v t`, factored axis by axis.
pub fn conjugate2(f: &BiFn, window: &Grid2) -> Result<BiFn> {
    let g = f.grid();
    let us: Vec<f64> = g.x.points().collect();
    let vs: Vec<f64> = g.y.points().collect();
    let ss: Vec<f64> = window.x.points().collect();
    let ts: Vec<f64> = window.y.points().collect();

    // Pass 1: conjugate each primal row over the second coordinate.
    // A row that is identically +inf contributes nothing to the supremum.
    let mut rows: Vec<Option<Vec<f64>>> = Vec::with_capacity(us.len());
    for iu in 0..us.len() {
        let row: Vec<f64> = (0..vs.len()).map(|iv| f.value(iu, iv).raw()).collect();
        rows.push(fast_kernel(&vs, &row, &ts));
    }

    // Pass 2: for each target second coordinate, conjugate over the first.
    let mut values = vec![ExtReal::INF; window.len()];
    let mut col = vec![f64::INFINITY; us.len()];
    for (jt, _) in ts.iter().enumerate() {
        for (iu, row) in rows.iter().enumerate() {
            col[iu] = match row {
                Some(r) => -r[jt],
                None => f64::INFINITY,
            };
        }
        let out = fast_kernel(&us, &col, &ss).expect("proper input has a finite row");
        for (is, v) in out.into_iter().enumerate() {
            values[window.idx(is, jt)] = ExtReal::finite(v);
        }
    }
    BiFn::new(window.clone(), values)
}

/// Argument-swapped conjugate of a function on `X x X*`.
///
/// With the product pairing `<(x, x*), (y*, y)> = <x, y*> + <x*, y>`, the
/// conjugate on `X* x X` coincides with the standard product conjugate read
/// with its first axis running over dual values and its second over primal
/// values. The returned window is therefore interpreted as `X* x X`: query
/// the result at `(x*, x)`. For the square windows used throughout, that is
/// an index transpose of the input orientation and needs no data movement.
pub fn swap_conjugate(f: &BiFn, window: &Grid2) -> Result<BiFn> {
    conjugate2(f, window)
}

/// `max_i (x_i * s - v_i)` per dual point; `+inf` entries are domain holes.
/// Returns `None` when every entry is a hole.
fn brute_kernel(xs: &[f64], vals: &[f64], duals: &[f64]) -> Option<Vec<f64>> {
    if !vals.iter().any(|v| v.is_finite()) {
        return None;
    }
    let mut out = Vec::with_capacity(duals.len());
    for &s in duals {
        let mut best = f64::NEG_INFINITY;
        for (x, v) in xs.iter().zip(vals) {
            if v.is_finite() {
                let cand = x * s - v;
                if cand > best {
                    best = cand;
                }
            }
        }
        out.push(best);
    }
    Some(out)
}

fn fast_kernel(xs: &[f64], vals: &[f64], duals: &[f64]) -> Option<Vec<f64>> {
    // Lower convex hull over the finite sample; the conjugate of the sample
    // equals the conjugate of its hull, and on the hull the maximizer index
    // is nondecreasing in the dual variable.
    let mut hull: Vec<usize> = Vec::new();
    for (i, v) in vals.iter().enumerate() {
        if !v.is_finite() {
            continue;
        }
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let m = hull[hull.len() - 1];
            let cross =
                (xs[m] - xs[a]) * (vals[i] - vals[a]) - (xs[i] - xs[a]) * (vals[m] - vals[a]);
            // Pop unless the middle point lies strictly below the chord.
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    if hull.is_empty() {
        return None;
    }

    let value = |h: usize, s: f64| xs[hull[h]] * s - vals[hull[h]];
    let mut j = 0;
    let mut out = Vec::with_capacity(duals.len());
    for &s in duals {
        while j + 1 < hull.len() && value(j + 1, s) > value(j, s) {
            j += 1;
        }
        out.push(value(j, s));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis801() -> Axis {
        Axis::new(-4.0, 4.0, 801).unwrap()
    }

    fn quad(axis: &Axis) -> SampledFn {
        SampledFn::sample(axis, |x| ExtReal::finite(0.5 * x * x)).unwrap()
    }

    #[test]
    fn conjugate_of_point_indicator_is_zero() {
        let a = axis801();
        let delta = SampledFn::sample(&a, |x| {
            if x == 0.0 {
                ExtReal::ZERO
            } else {
                ExtReal::INF
            }
        })
        .unwrap();
        let star = conjugate(&delta, &a).unwrap();
        assert!(star.values().iter().all(|v| *v == ExtReal::ZERO));
    }

    #[test]
    fn conjugate_of_half_square_is_half_square_inside() {
        let a = axis801();
        let star = conjugate(&quad(&a), &a).unwrap();
        let h = a.step();
        for (i, s) in a.points().enumerate() {
            if s.abs() <= 3.0 {
                let err = (star.value(i).raw() - 0.5 * s * s).abs();
                assert!(err <= h * h, "s={s}: err={err}");
            }
        }
    }

    #[test]
    fn conjugate_of_abs_matches_window_form() {
        let a = axis801();
        let f = SampledFn::sample(&a, |x| ExtReal::finite(x.abs())).unwrap();
        let star = conjugate(&f, &a).unwrap();
        for (i, s) in a.points().enumerate() {
            let expect = if s.abs() <= 1.0 { 0.0 } else { 4.0 * (s.abs() - 1.0) };
            assert!(
                (star.value(i).raw() - expect).abs() <= 1e-12,
                "s={s}: {} vs {expect}",
                star.value(i)
            );
        }
    }

    #[test]
    fn fast_path_matches_brute_on_catalog() {
        let a = axis801();
        let fns: Vec<SampledFn> = vec![
            quad(&a),
            SampledFn::sample(&a, |x| ExtReal::finite(x.abs())).unwrap(),
            SampledFn::sample(&a, |x| {
                if (0.0..=1.0).contains(&x) {
                    ExtReal::ZERO
                } else {
                    ExtReal::INF
                }
            })
            .unwrap(),
            SampledFn::sample(&a, |x| ExtReal::finite(x.max(0.0))).unwrap(),
        ];
        for f in &fns {
            let b = conjugate(f, &a).unwrap();
            let q = conjugate_fast(f, &a).unwrap();
            for i in 0..a.len() {
                assert!((b.value(i).raw() - q.value(i).raw()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn fenchel_young_holds_exactly() {
        let a = Axis::new(-4.0, 4.0, 161).unwrap();
        // Deliberately nonconvex sample: the discrete inequality holds anyway.
        let f = SampledFn::sample(&a, |x| ExtReal::finite((3.0 * x).sin() + 0.1 * x * x)).unwrap();
        let star = conjugate(&f, &a).unwrap();
        for (j, s) in a.points().enumerate() {
            for (i, x) in a.points().enumerate() {
                if let Some(v) = f.value(i).as_finite() {
                    assert!(star.value(j).raw() >= x * s - v);
                }
            }
        }
    }

    #[test]
    fn order_reversal_is_exact() {
        let a = Axis::new(-4.0, 4.0, 201).unwrap();
        let f = quad(&a);
        let g = SampledFn::sample(&a, |x| ExtReal::finite(0.5 * x * x + (x.cos() + 1.0))).unwrap();
        // f <= g pointwise, so f* >= g* pointwise.
        let fs = conjugate(&f, &a).unwrap();
        let gs = conjugate(&g, &a).unwrap();
        for i in 0..a.len() {
            assert!(fs.value(i).raw() >= gs.value(i).raw());
        }
    }

    #[test]
    fn biconjugate_minorizes_and_touches_convex_forms() {
        let a = axis801();
        let f = quad(&a);
        let star = conjugate(&f, &a).unwrap();
        let second = conjugate(&star, &a).unwrap();
        let h = a.step();
        for (i, x) in a.points().enumerate() {
            let fx = f.value(i).raw();
            let sx = second.value(i).raw();
            assert!(sx <= fx + 1e-12, "x={x}");
            if x.abs() <= 3.0 {
                assert!(fx - sx <= 2.0 * h * h, "x={x}: gap {}", fx - sx);
            }
        }
    }

    /// Quartic brute-force oracle for the product conjugate.
    fn conj2_oracle(f: &BiFn, window: &Grid2) -> Vec<f64> {
        let g = f.grid();
        let mut out = Vec::with_capacity(window.len());
        for (is, jt) in window.indices() {
            let (s, t) = window.point(is, jt);
            let mut best = f64::NEG_INFINITY;
            for (iu, iv) in g.indices() {
                if let Some(v) = f.value(iu, iv).as_finite() {
                    let (u, w) = g.point(iu, iv);
                    best = best.max(u * s + w * t - v);
                }
            }
            out.push(best);
        }
        out
    }

    #[test]
    fn factored_product_conjugate_matches_quartic_oracle() {
        let w = Grid2::square(Axis::new(-4.0, 4.0, 41).unwrap());
        let cases = vec![
            BiFn::sample(&w, |x, s| ExtReal::finite(0.5 * x * x + 0.5 * s * s)).unwrap(),
            BiFn::sample(&w, |x, s| ExtReal::finite(0.25 * (x + s) * (x + s))).unwrap(),
            BiFn::sample(&w, |x, s| {
                if x.abs() <= 1.0 {
                    ExtReal::finite(s.abs())
                } else {
                    ExtReal::INF
                }
            })
            .unwrap(),
        ];
        for f in &cases {
            let fast = conjugate2(f, &w).unwrap();
            let slow = conj2_oracle(f, &w);
            for (k, (is, jt)) in w.indices().enumerate() {
                assert!(
                    (fast.value(is, jt).raw() - slow[k]).abs() <= 1e-12,
                    "at {:?}",
                    w.point(is, jt)
                );
            }
        }
    }

    #[test]
    fn swap_conjugate_of_origin_indicator_is_zero() {
        let w = Grid2::square(Axis::standard());
        let delta = BiFn::sample(&w, |x, s| {
            if x == 0.0 && s == 0.0 {
                ExtReal::ZERO
            } else {
                ExtReal::INF
            }
        })
        .unwrap();
        let star = swap_conjugate(&delta, &w).unwrap();
        assert!(star.values().iter().all(|v| *v == ExtReal::ZERO));
    }

    #[test]
    fn swap_conjugate_of_separable_quadratic_is_itself() {
        let w = Grid2::square(Axis::standard());
        let f = BiFn::sample(&w, |x, s| ExtReal::finite(0.5 * x * x + 0.5 * s * s)).unwrap();
        let star = swap_conjugate(&f, &w).unwrap();
        // Maximizers sit on grid points for this window, so equality is exact.
        for (i, j) in w.indices() {
            assert!((star.value(i, j).raw() - f.value(i, j).raw()).abs() <= 1e-12);
        }
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn fast_matches_brute_on_random_samples(
                seed_vals in proptest::collection::vec(-5.0f64..5.0, 33),
                holes in proptest::collection::vec(any::<bool>(), 33),
            ) {
                let a = Axis::new(-2.0, 2.0, 33).unwrap();
                let mut vals = Vec::with_capacity(33);
                let mut any_finite = false;
                for (v, h) in seed_vals.iter().zip(&holes) {
                    if *h {
                        vals.push(ExtReal::INF);
                    } else {
                        vals.push(ExtReal::finite(*v));
                        any_finite = true;
                    }
                }
                prop_assume!(any_finite);
                let f = SampledFn::new(a.clone(), vals).unwrap();
                let b = conjugate(&f, &a).unwrap();
                let q = conjugate_fast(&f, &a).unwrap();
                for i in 0..a.len() {
                    prop_assert!((b.value(i).raw() - q.value(i).raw()).abs() <= 1e-12);
                }
            }
        }
    }
}
