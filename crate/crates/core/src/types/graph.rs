use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::point::DualPair;

/// Resolution below which two stored points count as duplicates.
const DEDUP_RESOLUTION: f64 = 1e-12;

/// A set-valued operator as a finite point cloud in `X x X*`.
///
/// Points are kept sorted lexicographically, which makes construction
/// deterministic and lets duplicates (within 1e-12) be dropped. The empty
/// graph is representable, since equality-set extraction may come up empty;
/// operations that need a nonempty operator error out instead.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorGraph {
    points: Vec<DualPair>,
}

impl OperatorGraph {
    pub fn new(mut points: Vec<DualPair>) -> OperatorGraph {
        if let Some(first) = points.first() {
            let dim = first.dim();
            assert!(
                points.iter().all(|p| p.dim() == dim),
                "mixed dimensions in operator graph"
            );
        }
        points.sort_by(|a, b| {
            let ka = (a.x.coords(), a.xstar.coords());
            let kb = (b.x.coords(), b.xstar.coords());
            ka.partial_cmp(&kb).expect("graph coordinates are finite")
        });
        points.dedup_by(|a, b| a.dist(b) <= DEDUP_RESOLUTION);
        OperatorGraph { points }
    }

    pub fn singleton(p: DualPair) -> OperatorGraph {
        OperatorGraph { points: vec![p] }
    }

    pub fn points(&self) -> &[DualPair] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when `p` coincides with a stored point within the dedup resolution.
    pub fn contains(&self, p: &DualPair) -> bool {
        self.points.iter().any(|q| q.dist(p) <= DEDUP_RESOLUTION)
    }

    /// Keeps the points satisfying the predicate (order preserved).
    pub fn filtered(&self, pred: impl Fn(&DualPair) -> bool) -> OperatorGraph {
        OperatorGraph {
            points: self.points.iter().copied().filter(|p| pred(p)).collect(),
        }
    }
}

/// Euclidean distance in the product space from `p` to the nearest point of `t`.
pub fn dist_to_graph(p: &DualPair, t: &OperatorGraph) -> Result<f64> {
    let mut best = f64::INFINITY;
    for q in t.points() {
        let d = p.dist(q);
        if d < best {
            best = d;
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::EmptyOperator)
    }
}

/// Hausdorff distance between two nonempty point clouds.
pub fn hausdorff(a: &OperatorGraph, b: &OperatorGraph) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperator);
    }
    let one_sided = |from: &OperatorGraph, to: &OperatorGraph| -> f64 {
        from.points()
            .iter()
            .map(|p| dist_to_graph(p, to).expect("nonempty"))
            .fold(0.0, f64::max)
    };
    Ok(one_sided(a, b).max(one_sided(b, a)))
}
