use crate::error::{Error, Result};
use crate::types::ext::ExtReal;
use crate::types::graph::OperatorGraph;
use crate::types::grid::{Axis, Grid2};
use crate::types::point::{Dim, DualPair, Point};
use crate::types::sampled::SampledFn;

/// Closed-form monotone operators.
///
/// Every variant evaluates to a monotone operator by construction: the
/// constructors validate the defining inequalities (positive semidefinite
/// symmetric part for `Linear`, `a > 0` for the quadratic subdifferential,
/// ordered bounds for the box). `FiniteGraph` carries an arbitrary point
/// cloud and is audited by the operations that require more structure.
#[derive(Clone, Debug)]
pub enum OperatorSpec {
    /// `T(v) = A v + b` with `<Av, v> >= 0` for all `v`.
    Linear { a: [[f64; 2]; 2], b: Point },
    /// Subdifferential of `a x^2/2 + c x`: the line `x -> a x + c`.
    SubdiffQuadratic { a: f64, c: f64 },
    /// Subdifferential of `|x - shift|`: sign branches plus a vertical segment.
    SubdiffAbs { shift: f64 },
    /// Normal cone of the box `[lo, hi]`.
    NormalConeBox { lo: f64, hi: f64 },
    /// `{c} x R` (the normal cone of the singleton `{c}`).
    VerticalLine { c: f64 },
    /// `R x {c}` (the subdifferential of `x -> c x`).
    HorizontalLine { c: f64 },
    /// An explicit point cloud.
    FiniteGraph(OperatorGraph),
}

impl OperatorSpec {
    /// 1-d affine operator `x -> a x + b`, requires `a >= 0`.
    pub fn linear_1d(a: f64, b: f64) -> Result<OperatorSpec> {
        if !(a.is_finite() && b.is_finite()) || a < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "linear operator needs finite a >= 0, got a={a}, b={b}"
            )));
        }
        Ok(OperatorSpec::Linear {
            a: [[a, 0.0], [0.0, 0.0]],
            b: Point::one(b),
        })
    }

    /// Planar affine operator; the symmetric part of `a` must be positive
    /// semidefinite.
    pub fn linear_2d(a: [[f64; 2]; 2], b: (f64, f64)) -> Result<OperatorSpec> {
        let s11 = a[0][0];
        let s22 = a[1][1];
        let s12 = 0.5 * (a[0][1] + a[1][0]);
        let psd = s11 >= -1e-12 && s22 >= -1e-12 && s11 * s22 - s12 * s12 >= -1e-12;
        if !psd {
            return Err(Error::InvalidGrid(
                "linear operator needs a positive semidefinite symmetric part".into(),
            ));
        }
        Ok(OperatorSpec::Linear {
            a,
            b: Point::two(b.0, b.1),
        })
    }

    pub fn subdiff_quadratic(a: f64, c: f64) -> OperatorSpec {
        assert!(a > 0.0 && a.is_finite() && c.is_finite());
        OperatorSpec::SubdiffQuadratic { a, c }
    }

    pub fn subdiff_abs(shift: f64) -> OperatorSpec {
        assert!(shift.is_finite());
        OperatorSpec::SubdiffAbs { shift }
    }

    pub fn normal_cone_box(lo: f64, hi: f64) -> OperatorSpec {
        assert!(lo.is_finite() && hi.is_finite() && lo <= hi);
        OperatorSpec::NormalConeBox { lo, hi }
    }

    pub fn vertical_line(c: f64) -> OperatorSpec {
        assert!(c.is_finite());
        OperatorSpec::VerticalLine { c }
    }

    pub fn horizontal_line(c: f64) -> OperatorSpec {
        assert!(c.is_finite());
        OperatorSpec::HorizontalLine { c }
    }

    pub fn dim(&self) -> Dim {
        match self {
            OperatorSpec::Linear { b, .. } => b.dim(),
            OperatorSpec::FiniteGraph(g) => {
                g.points().first().map(|p| p.dim()).unwrap_or(Dim::One)
            }
            _ => Dim::One,
        }
    }

    /// True when the graph is a convex subset of the product space, decided
    /// per closed form. `FiniteGraph` returns false here; callers that accept
    /// point clouds run a midpoint audit instead.
    pub fn has_convex_graph(&self) -> bool {
        match self {
            OperatorSpec::Linear { .. }
            | OperatorSpec::SubdiffQuadratic { .. }
            | OperatorSpec::VerticalLine { .. }
            | OperatorSpec::HorizontalLine { .. } => true,
            OperatorSpec::NormalConeBox { lo, hi } => lo == hi,
            OperatorSpec::SubdiffAbs { .. } | OperatorSpec::FiniteGraph(_) => false,
        }
    }

    /// The convex potential `g` with `T = dg`, when one exists in closed form.
    pub fn origin_fn(&self) -> Option<FnSpec> {
        match *self {
            OperatorSpec::Linear { a, b } if b.dim() == Dim::One => {
                let slope = a[0][0];
                if slope > 0.0 {
                    Some(FnSpec::quadratic(slope, b.scalar()))
                } else {
                    Some(FnSpec::linear(b.scalar()))
                }
            }
            OperatorSpec::Linear { .. } => None,
            OperatorSpec::SubdiffQuadratic { a, c } => Some(FnSpec::quadratic(a, c)),
            OperatorSpec::SubdiffAbs { shift } => Some(FnSpec::abs_shift(shift)),
            OperatorSpec::NormalConeBox { lo, hi } => Some(FnSpec::indicator_box(lo, hi)),
            OperatorSpec::VerticalLine { c } => Some(FnSpec::indicator_box(c, c)),
            OperatorSpec::HorizontalLine { c } => Some(FnSpec::linear(c)),
            OperatorSpec::FiniteGraph(_) => None,
        }
    }

    /// Samples the operator as a point cloud over the window: single-valued
    /// branches at primal-axis resolution, vertical segments and rays at
    /// dual-axis resolution with segment endpoints included exactly.
    pub fn sample(&self, window: &Grid2) -> Result<OperatorGraph> {
        let pair = |x: f64, s: f64| DualPair::new(Point::one(x), Point::one(s));
        let mut pts = Vec::new();
        match self {
            OperatorSpec::Linear { a, b } => {
                if b.dim() != Dim::One {
                    return Err(Error::UnsampleableOperator);
                }
                let (slope, off) = (a[0][0], b.scalar());
                for x in window.x.points() {
                    pts.push(pair(x, slope * x + off));
                }
            }
            OperatorSpec::SubdiffQuadratic { a, c } => {
                for x in window.x.points() {
                    pts.push(pair(x, a * x + c));
                }
            }
            OperatorSpec::SubdiffAbs { shift } => {
                for x in window.x.points() {
                    if x < *shift {
                        pts.push(pair(x, -1.0));
                    } else if x > *shift {
                        pts.push(pair(x, 1.0));
                    }
                }
                for s in window.y.points() {
                    if s > -1.0 && s < 1.0 {
                        pts.push(pair(*shift, s));
                    }
                }
                pts.push(pair(*shift, -1.0));
                pts.push(pair(*shift, 1.0));
            }
            OperatorSpec::NormalConeBox { lo, hi } => {
                for x in window.x.points() {
                    if x > *lo && x < *hi {
                        pts.push(pair(x, 0.0));
                    }
                }
                for s in window.y.points() {
                    if s < 0.0 {
                        pts.push(pair(*lo, s));
                    }
                    if s > 0.0 {
                        pts.push(pair(*hi, s));
                    }
                    if lo == hi {
                        pts.push(pair(*lo, s));
                    }
                }
                pts.push(pair(*lo, 0.0));
                pts.push(pair(*hi, 0.0));
            }
            OperatorSpec::VerticalLine { c } => {
                for s in window.y.points() {
                    pts.push(pair(*c, s));
                }
            }
            OperatorSpec::HorizontalLine { c } => {
                for x in window.x.points() {
                    pts.push(pair(x, *c));
                }
            }
            OperatorSpec::FiniteGraph(g) => return Ok(g.clone()),
        }
        Ok(OperatorGraph::new(pts))
    }
}

/// Closed-form proper lsc convex functions on the line, with exact evaluation
/// and, where the variant admits one, an exact conjugate.
#[derive(Clone, Debug)]
pub enum FnSpec {
    /// `a x^2/2 + c x` with `a > 0`.
    Quadratic { a: f64, c: f64 },
    /// `|x - shift|`.
    AbsShift { shift: f64 },
    /// Indicator of `[lo, hi]`.
    IndicatorBox { lo: f64, hi: f64 },
    /// `slope * x`.
    Linear { slope: f64 },
    /// Pointwise sum of the parts.
    Sum(Vec<FnSpec>),
}

impl FnSpec {
    pub fn quadratic(a: f64, c: f64) -> FnSpec {
        assert!(a > 0.0 && a.is_finite() && c.is_finite());
        FnSpec::Quadratic { a, c }
    }

    pub fn abs_shift(shift: f64) -> FnSpec {
        assert!(shift.is_finite());
        FnSpec::AbsShift { shift }
    }

    pub fn indicator_box(lo: f64, hi: f64) -> FnSpec {
        assert!(lo.is_finite() && hi.is_finite() && lo <= hi);
        FnSpec::IndicatorBox { lo, hi }
    }

    pub fn linear(slope: f64) -> FnSpec {
        assert!(slope.is_finite());
        FnSpec::Linear { slope }
    }

    pub fn sum(parts: Vec<FnSpec>) -> FnSpec {
        assert!(!parts.is_empty(), "empty sum");
        FnSpec::Sum(parts)
    }

    pub fn eval(&self, x: f64) -> ExtReal {
        match self {
            FnSpec::Quadratic { a, c } => ExtReal::finite(0.5 * a * x * x + c * x),
            FnSpec::AbsShift { shift } => ExtReal::finite((x - shift).abs()),
            FnSpec::IndicatorBox { lo, hi } => {
                if x >= *lo && x <= *hi {
                    ExtReal::ZERO
                } else {
                    ExtReal::INF
                }
            }
            FnSpec::Linear { slope } => ExtReal::finite(slope * x),
            FnSpec::Sum(parts) => parts
                .iter()
                .fold(ExtReal::ZERO, |acc, p| acc + p.eval(x)),
        }
    }

    /// Exact conjugate value at `s`, or `None` when the variant has no closed
    /// form (sums fall back to grid conjugation at the call sites).
    ///
    /// The singleton-domain cases (`Linear`, degenerate boxes) compare exact
    /// floating-point values; callers querying off the singleton see `+inf`.
    pub fn conjugate_value(&self, s: f64) -> Option<ExtReal> {
        match self {
            FnSpec::Quadratic { a, c } => {
                let t = s - c;
                Some(ExtReal::finite(t * t / (2.0 * a)))
            }
            FnSpec::AbsShift { shift } => Some(if s.abs() <= 1.0 {
                ExtReal::finite(shift * s)
            } else {
                ExtReal::INF
            }),
            FnSpec::IndicatorBox { lo, hi } => Some(ExtReal::finite((lo * s).max(hi * s))),
            FnSpec::Linear { slope } => Some(if s == *slope {
                ExtReal::ZERO
            } else {
                ExtReal::INF
            }),
            FnSpec::Sum(_) => None,
        }
    }

    /// The subdifferential as a closed-form operator.
    pub fn operator(&self) -> OperatorSpec {
        match self {
            FnSpec::Quadratic { a, c } => OperatorSpec::subdiff_quadratic(*a, *c),
            FnSpec::AbsShift { shift } => OperatorSpec::subdiff_abs(*shift),
            FnSpec::IndicatorBox { lo, hi } => OperatorSpec::normal_cone_box(*lo, *hi),
            FnSpec::Linear { slope } => OperatorSpec::horizontal_line(*slope),
            FnSpec::Sum(_) => panic!("sum functions have no single closed-form operator"),
        }
    }

    pub fn sample(&self, axis: &Axis) -> Result<SampledFn> {
        SampledFn::sample(axis, |x| self.eval(x))
    }

    /// Exact infimum over the closed interval `[lo, hi]`.
    ///
    /// All variants are piecewise quadratic, so the infimum is attained at an
    /// endpoint, a kink, or an interior stationary point; sums are minimized
    /// piece by piece between their collected breakpoints.
    pub fn inf_on_interval(&self, lo: f64, hi: f64) -> ExtReal {
        debug_assert!(lo <= hi);
        match self {
            FnSpec::Quadratic { a, c } => {
                let y = (-c / a).clamp(lo, hi);
                ExtReal::finite(0.5 * a * y * y + c * y)
            }
            FnSpec::AbsShift { shift } => {
                let y = shift.clamp(lo, hi);
                ExtReal::finite((y - shift).abs())
            }
            FnSpec::IndicatorBox { lo: blo, hi: bhi } => {
                if lo.max(*blo) <= hi.min(*bhi) {
                    ExtReal::ZERO
                } else {
                    ExtReal::INF
                }
            }
            FnSpec::Linear { slope } => {
                ExtReal::finite(if *slope >= 0.0 { slope * lo } else { slope * hi })
            }
            FnSpec::Sum(_) => self.sum_inf_on_interval(lo, hi),
        }
    }

    fn sum_inf_on_interval(&self, lo: f64, hi: f64) -> ExtReal {
        // Intersect the interval with every indicator domain first.
        let (mut lo, mut hi) = (lo, hi);
        let mut breaks = vec![];
        collect_breakpoints(self, &mut breaks, &mut lo, &mut hi);
        if lo > hi {
            return ExtReal::INF;
        }
        breaks.retain(|b| *b > lo && *b < hi);
        breaks.push(lo);
        breaks.push(hi);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();

        let mut best = ExtReal::INF;
        for w in breaks.windows(2) {
            let (p, q) = (w[0], w[1]);
            // On [p, q] the sum is a single quadratic piece; probe its
            // endpoints and the stationary point of the smooth part.
            for y in piece_candidates(self, p, q) {
                best = best.min(self.eval(y));
            }
        }
        best = best.min(self.eval(lo)).min(self.eval(hi));
        best
    }
}

fn collect_breakpoints(f: &FnSpec, breaks: &mut Vec<f64>, lo: &mut f64, hi: &mut f64) {
    match f {
        FnSpec::AbsShift { shift } => breaks.push(*shift),
        FnSpec::IndicatorBox { lo: blo, hi: bhi } => {
            *lo = lo.max(*blo);
            *hi = hi.min(*bhi);
        }
        FnSpec::Sum(parts) => {
            for p in parts {
                collect_breakpoints(p, breaks, lo, hi);
            }
        }
        FnSpec::Quadratic { .. } | FnSpec::Linear { .. } => {}
    }
}

fn piece_candidates(f: &FnSpec, p: f64, q: f64) -> Vec<f64> {
    // Quadratic coefficient and linear coefficient of the piece on [p, q],
    // evaluated at the midpoint to settle absolute-value branches.
    let mid = 0.5 * (p + q);
    let (mut a2, mut a1) = (0.0, 0.0);
    accumulate_piece(f, mid, &mut a2, &mut a1);
    let mut cands = vec![p, q];
    if a2 > 0.0 {
        let y = -a1 / a2;
        if y > p && y < q {
            cands.push(y);
        }
    }
    cands
}

fn accumulate_piece(f: &FnSpec, mid: f64, a2: &mut f64, a1: &mut f64) {
    match f {
        FnSpec::Quadratic { a, c } => {
            *a2 += a;
            *a1 += c;
        }
        FnSpec::AbsShift { shift } => {
            *a1 += if mid >= *shift { 1.0 } else { -1.0 };
        }
        FnSpec::Linear { slope } => *a1 += slope,
        FnSpec::IndicatorBox { .. } => {}
        FnSpec::Sum(parts) => {
            for part in parts {
                accumulate_piece(part, mid, a2, a1);
            }
        }
    }
}
