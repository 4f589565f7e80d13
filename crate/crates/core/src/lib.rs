//! Numerical toolkit for monotone operator graphs and their convex
//! representative functions on finite windows.
//!
//! The library works at desk scale: operators and convex functions live on
//! uniform windows of the line (plus closed-form support in the plane), and
//! every variational object of interest is made computable there, namely
//!
//! - discrete Legendre-Fenchel conjugation, including the argument-swapped
//!   conjugate on product windows ([`conjugate`]),
//! - Fitzpatrick functions, representative-class membership checks, and
//!   extraction of the represented operator ([`fitzpatrick`]),
//! - exact resolvents of the closed-form operator catalog with a grid
//!   minimization oracle ([`resolvent`]),
//! - graph lower limits of operator sequences by two independent routes and
//!   finite-horizon epi-convergence diagnostics ([`limits`]),
//! - subdifferentials and the separable / symmetrized representative
//!   constructions ([`subdiff`]),
//! - a scenario catalog that exercises all of the above and compares the
//!   outcomes against expected verdict structures ([`verify`]).
//!
//! All types are immutable after construction and all operations are pure.

pub mod conjugate;
pub mod error;
pub mod fitzpatrick;
pub mod limits;
pub mod resolvent;
pub mod subdiff;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use types::{
    coupling, dist_to_graph, hausdorff, Axis, BiFn, ConvergenceReport, Dim, DualPair, ExtReal,
    FnSpec, Grid2, OperatorGraph, OperatorSpec, Point, SampledFn, Verdict, Witness,
};
