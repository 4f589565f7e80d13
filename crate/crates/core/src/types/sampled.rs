use crate::error::{Error, Result};
use crate::types::ext::ExtReal;
use crate::types::grid::{Axis, Grid2};

/// Relative tolerance for the midpoint-convexity audit.
const CONVEXITY_TOL: f64 = 1e-9;

/// Extended-real-valued function sampled on a 1-d window.
///
/// Construction rejects the improper case (all values `+inf`) and records
/// whether discrete midpoint convexity holds on the sample, a cheap surrogate
/// for membership in the lsc convex class.
#[derive(Clone, Debug)]
pub struct SampledFn {
    axis: Axis,
    values: Vec<ExtReal>,
    midpoint_convex: bool,
}

impl SampledFn {
    pub fn new(axis: Axis, values: Vec<ExtReal>) -> Result<SampledFn> {
        if values.len() != axis.len() {
            return Err(Error::InvalidGrid(format!(
                "value count {} does not match axis length {}",
                values.len(),
                axis.len()
            )));
        }
        if values.iter().all(|v| !v.is_finite()) {
            return Err(Error::ImproperFunction);
        }
        let midpoint_convex = midpoint_convex_1d(&values);
        Ok(SampledFn { axis, values, midpoint_convex })
    }

    pub fn sample(axis: &Axis, f: impl Fn(f64) -> ExtReal) -> Result<SampledFn> {
        let values = axis.points().map(f).collect();
        SampledFn::new(axis.clone(), values)
    }

    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    pub fn value(&self, i: usize) -> ExtReal {
        self.values[i]
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn midpoint_convex(&self) -> bool {
        self.midpoint_convex
    }
}

/// Extended-real-valued function sampled on a product window over `X x X*`.
///
/// Also serves as the 2-d sampled function: storage does not depend on the
/// pairing, only the conjugation and class checks do.
#[derive(Clone, Debug)]
pub struct BiFn {
    grid: Grid2,
    values: Vec<ExtReal>,
    midpoint_convex: bool,
}

impl BiFn {
    pub fn new(grid: Grid2, values: Vec<ExtReal>) -> Result<BiFn> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().all(|v| !v.is_finite()) {
            return Err(Error::ImproperFunction);
        }
        let midpoint_convex = midpoint_convex_2d(&grid, &values);
        Ok(BiFn { grid, values, midpoint_convex })
    }

    pub fn sample(grid: &Grid2, f: impl Fn(f64, f64) -> ExtReal) -> Result<BiFn> {
        let mut values = Vec::with_capacity(grid.len());
        for (ix, iy) in grid.indices() {
            let (x, y) = grid.point(ix, iy);
            values.push(f(x, y));
        }
        BiFn::new(grid.clone(), values)
    }

    pub fn grid(&self) -> &Grid2 {
        &self.grid
    }

    pub fn value(&self, ix: usize, iy: usize) -> ExtReal {
        self.values[self.grid.idx(ix, iy)]
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn midpoint_convex(&self) -> bool {
        self.midpoint_convex
    }

    /// Pointwise `(self + other) / 2`; both factors must share the window.
    pub fn average_with(&self, other: &BiFn) -> Result<BiFn> {
        if self.grid != other.grid {
            return Err(Error::WindowMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (a + b).scale(0.5))
            .collect();
        BiFn::new(self.grid.clone(), values)
    }
}

fn violates(a: ExtReal, mid: ExtReal, b: ExtReal) -> bool {
    // Midpoint convexity: f(a) + f(b) >= 2 f(mid), with +inf absorbing.
    match ((a + b).as_finite(), mid.as_finite()) {
        (Some(sum), Some(m)) => sum < 2.0 * m - CONVEXITY_TOL * (1.0 + m.abs()),
        (None, _) => false,
        (Some(_), None) => true,
    }
}

fn midpoint_convex_1d(values: &[ExtReal]) -> bool {
    values
        .windows(3)
        .all(|w| !violates(w[0], w[1], w[2]))
}

fn midpoint_convex_2d(grid: &Grid2, values: &[ExtReal]) -> bool {
    let (nx, ny) = (grid.x.len(), grid.y.len());
    let at = |ix: usize, iy: usize| values[grid.idx(ix, iy)];
    // Axis-aligned and diagonal three-point stencils.
    for ix in 0..nx {
        for iy in 0..ny {
            if ix + 2 < nx && violates(at(ix, iy), at(ix + 1, iy), at(ix + 2, iy)) {
                return false;
            }
            if iy + 2 < ny && violates(at(ix, iy), at(ix, iy + 1), at(ix, iy + 2)) {
                return false;
            }
            if ix + 2 < nx && iy + 2 < ny {
                if violates(at(ix, iy), at(ix + 1, iy + 1), at(ix + 2, iy + 2)) {
                    return false;
                }
                if violates(at(ix, iy + 2), at(ix + 1, iy + 1), at(ix + 2, iy)) {
                    return false;
                }
            }
        }
    }
    true
}
