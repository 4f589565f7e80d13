use thiserror::Error;

/// Errors surfaced by construction and by the grid-based operations.
///
/// Contract violations that indicate a programming error (non-finite
/// coordinates, mixed dimensions in arithmetic) panic instead; everything
/// that can be triggered by data goes through this enum.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty operator")]
    EmptyOperator,

    #[error("function is improper: identically +inf on its grid")]
    ImproperFunction,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("graph not convex")]
    GraphNotConvex,

    #[error("resolvent requires closed-form or oracle path")]
    ResolventNeedsClosedForm,

    #[error("operator has no subdifferential origin")]
    NoSubdifferentialOrigin,

    #[error("radius ladder invalid: {0}")]
    InvalidLadder(String),

    #[error("tail window is empty")]
    EmptyTail,

    #[error("sequence term does not match the configured window")]
    WindowMismatch,

    #[error("operation requires a symmetric window (same axis on both factors)")]
    AsymmetricWindow,

    #[error("operator variant cannot be sampled in this dimension")]
    UnsampleableOperator,

    #[error("unknown scenario '{name}'; available: {}", available.join(", "))]
    UnknownScenario {
        name: String,
        available: Vec<String>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
