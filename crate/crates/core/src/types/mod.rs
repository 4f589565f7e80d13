//! Shared data model: points and dual pairs, extended reals, uniform grids,
//! sampled functions, operator graphs, and the closed-form catalogs.
//!
//! Everything here is immutable after construction and all operations are
//! pure, so concurrent read-only use is safe throughout.

pub mod ext;
pub mod graph;
pub mod grid;
pub mod point;
pub mod report;
pub mod sampled;
pub mod spec;

pub use ext::ExtReal;
pub use graph::{dist_to_graph, hausdorff, OperatorGraph};
pub use grid::{Axis, Grid2};
pub use point::{coupling, Dim, DualPair, Point};
pub use report::{ConvergenceReport, Verdict, Witness};
pub use sampled::{BiFn, SampledFn};
pub use spec::{FnSpec, OperatorSpec};
