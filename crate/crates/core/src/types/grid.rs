use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::point::{DualPair, Point};

/// Uniform 1-d sampling of a closed interval.
///
/// Points are computed as `lo + (hi - lo) * i / (n - 1)`, which hits the
/// endpoints exactly and, for symmetric windows with odd `n`, hits 0 exactly.
/// Enumeration order is by index and therefore deterministic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Axis {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Axis> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidGrid(format!("bounds not finite: [{lo}, {hi}]")));
        }
        if lo >= hi {
            return Err(Error::InvalidGrid(format!("need lo < hi, got [{lo}, {hi}]")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        Ok(Axis { lo, hi, n })
    }

    /// The standard desk-scale window `[-4, 4]` with 81 points (step 0.1).
    pub fn standard() -> Axis {
        Axis::new(-4.0, 4.0, 81).expect("standard axis is valid")
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Index of the grid point nearest to `x` (clamped to the window).
    pub fn index_nearest(&self, x: f64) -> usize {
        let t = (x - self.lo) / self.step();
        let i = t.round();
        if i <= 0.0 {
            0
        } else if i >= (self.n - 1) as f64 {
            self.n - 1
        } else {
            i as usize
        }
    }

    /// Indices at least `margin` inside both window ends.
    pub fn interior_indices(&self, margin: f64) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| {
                let x = self.point(i);
                x >= self.lo + margin - 1e-12 && x <= self.hi - margin + 1e-12
            })
            .collect()
    }

    /// Interior indices thinned by `stride`, anchored so that the index of
    /// the point nearest 0 is kept. Guarantees 0 itself is a probe whenever
    /// it lies in the interior, which the scenario catalog relies on.
    pub fn probe_indices(&self, stride: usize, margin: f64) -> Vec<usize> {
        let stride = stride.max(1);
        let anchor = self.index_nearest(0.0);
        self.interior_indices(margin)
            .into_iter()
            .filter(|&i| i.abs_diff(anchor) % stride == 0)
            .collect()
    }
}

/// Product window over `X x X*`: the first axis samples primal values, the
/// second dual values. Values are stored row-major (primal index outer).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid2 {
    pub x: Axis,
    pub y: Axis,
}

impl Grid2 {
    pub fn new(x: Axis, y: Axis) -> Grid2 {
        Grid2 { x, y }
    }

    /// Symmetric product window: the same axis for primal and dual factors.
    pub fn square(axis: Axis) -> Grid2 {
        Grid2 { y: axis.clone(), x: axis }
    }

    pub fn is_square(&self) -> bool {
        self.x == self.y
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        ix * self.y.len() + iy
    }

    pub fn point(&self, ix: usize, iy: usize) -> (f64, f64) {
        (self.x.point(ix), self.y.point(iy))
    }

    /// Larger of the two axis steps; the grid resolution used in tolerances.
    pub fn step(&self) -> f64 {
        self.x.step().max(self.y.step())
    }

    /// Row-major enumeration of `(ix, iy)` pairs.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let ny = self.y.len();
        (0..self.x.len()).flat_map(move |ix| (0..ny).map(move |iy| (ix, iy)))
    }

    /// Interior probe lattice as dual pairs, stride applied per axis.
    pub fn probe_pairs(&self, stride: usize, margin: f64) -> Vec<DualPair> {
        let xi = self.x.probe_indices(stride, margin);
        let yi = self.y.probe_indices(stride, margin);
        let mut out = Vec::with_capacity(xi.len() * yi.len());
        for &ix in &xi {
            for &iy in &yi {
                out.push(DualPair::new(
                    Point::one(self.x.point(ix)),
                    Point::one(self.y.point(iy)),
                ));
            }
        }
        out
    }
}
