//! Exact subdifferentials of the closed-form catalog and the two
//! representative constructions built from them: the separable bifunction
//! `g(x) + g*(x*)` and the symmetrization `(h + h* o swap) / 2`.

use serde::Serialize;

use crate::conjugate::{conjugate, swap_conjugate};
use crate::error::{Error, Result};
use crate::types::ext::ExtReal;
use crate::types::grid::Grid2;
use crate::types::sampled::BiFn;
use crate::types::spec::FnSpec;

/// Subdifferential of a 1-d convex function at a point: empty, or a closed
/// interval whose ends may be infinite (rays, or the whole line at the
/// bottom of an indicator spike). Reported as a descriptor, not a sample,
/// so the set stays exact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SubdiffSet {
    Empty,
    Interval { lo: f64, hi: f64 },
}

impl SubdiffSet {
    pub fn point(v: f64) -> SubdiffSet {
        SubdiffSet::Interval { lo: v, hi: v }
    }

    pub fn interval(lo: f64, hi: f64) -> SubdiffSet {
        debug_assert!(lo <= hi);
        SubdiffSet::Interval { lo, hi }
    }

    pub fn ray_up(v: f64) -> SubdiffSet {
        SubdiffSet::Interval { lo: v, hi: f64::INFINITY }
    }

    pub fn ray_down(v: f64) -> SubdiffSet {
        SubdiffSet::Interval { lo: f64::NEG_INFINITY, hi: v }
    }

    pub fn line() -> SubdiffSet {
        SubdiffSet::Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn contains(&self, s: f64, tol: f64) -> bool {
        match *self {
            SubdiffSet::Empty => false,
            SubdiffSet::Interval { lo, hi } => s >= lo - tol && s <= hi + tol,
        }
    }

    /// Minkowski sum; `Empty` absorbs.
    pub fn minkowski(self, other: SubdiffSet) -> SubdiffSet {
        match (self, other) {
            (SubdiffSet::Empty, _) | (_, SubdiffSet::Empty) => SubdiffSet::Empty,
            (
                SubdiffSet::Interval { lo: a, hi: b },
                SubdiffSet::Interval { lo: c, hi: d },
            ) => SubdiffSet::Interval { lo: a + c, hi: b + d },
        }
    }
}

/// Exact subdifferential of a closed-form function at `x`. Points outside
/// the domain yield the empty set rather than an error.
pub fn subdifferential(g: &FnSpec, x: f64) -> SubdiffSet {
    match g {
        FnSpec::Quadratic { a, c } => SubdiffSet::point(a * x + c),
        FnSpec::AbsShift { shift } => {
            if x > *shift {
                SubdiffSet::point(1.0)
            } else if x < *shift {
                SubdiffSet::point(-1.0)
            } else {
                SubdiffSet::interval(-1.0, 1.0)
            }
        }
        FnSpec::IndicatorBox { lo, hi } => {
            if x < *lo || x > *hi {
                SubdiffSet::Empty
            } else if lo == hi {
                SubdiffSet::line()
            } else if x == *lo {
                SubdiffSet::ray_down(0.0)
            } else if x == *hi {
                SubdiffSet::ray_up(0.0)
            } else {
                SubdiffSet::point(0.0)
            }
        }
        FnSpec::Linear { slope } => SubdiffSet::point(*slope),
        FnSpec::Sum(parts) => parts
            .iter()
            .map(|p| subdifferential(p, x))
            .fold(SubdiffSet::point(0.0), SubdiffSet::minkowski),
    }
}

/// The separable bifunction `(x, x*) -> g(x) + g*(x*)` on the window.
///
/// The conjugate values are exact where the variant has a closed form;
/// otherwise the conjugate is taken on the grid, with the usual window
/// truncation caveat near the dual boundary.
pub fn separable_bifn(g: &FnSpec, window: &Grid2) -> Result<BiFn> {
    let dual_vals: Vec<ExtReal> = match g.conjugate_value(window.y.point(0)) {
        Some(_) => window
            .y
            .points()
            .map(|s| g.conjugate_value(s).expect("closed form available"))
            .collect(),
        None => {
            let sampled = g.sample(&window.x)?;
            let star = conjugate(&sampled, &window.y)?;
            star.values().to_vec()
        }
    };
    let mut values = Vec::with_capacity(window.len());
    for x in window.x.points() {
        let gx = g.eval(x);
        for dv in &dual_vals {
            values.push(gx + *dv);
        }
    }
    BiFn::new(window.clone(), values)
}

/// The symmetrized representative `(h(x, x*) + h*(x*, x)) / 2` on a square
/// window. Always majorizes the coupling on the interior; its equality set
/// is the operator induced by `h`.
pub fn symmetrized_representative(h: &BiFn, window: &Grid2) -> Result<BiFn> {
    if h.grid() != window {
        return Err(Error::WindowMismatch);
    }
    if !window.is_square() {
        return Err(Error::AsymmetricWindow);
    }
    let star = swap_conjugate(h, window)?;
    // star is indexed on X* x X; on a square window the swapped lookup is a
    // transpose.
    let mut values = Vec::with_capacity(window.len());
    for (ix, iy) in window.indices() {
        values.push((h.value(ix, iy) + star.value(iy, ix)).scale(0.5));
    }
    BiFn::new(window.clone(), values)
}
