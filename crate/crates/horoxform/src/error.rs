//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by geometric constructors, quadrature drivers, and
/// transform pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects of different ambient dimension were combined.
    #[error("dimension mismatch: expected n={expected}, got n={got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A dimension outside the supported range was requested.
    #[error("unsupported dimension n={0} for {1}")]
    UnsupportedDimension(usize, &'static str),

    /// A vector that must be unit length was not.
    #[error("vector is not unit length (|v| = {norm})")]
    NotUnit { norm: f64 },

    /// A stored invariant was violated (bad manifold point, arccosh domain
    /// breach beyond the clamping band, non-null cone vector, ...).
    #[error("invariant breach: {0}")]
    InvariantBreach(String),

    /// A documented precondition (integrability, parameter range, grid
    /// requirements) does not hold for the given inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested operation is not implemented for this input class.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// An iterative or adaptive numerical procedure failed to converge.
    /// Carries the best available value and an estimate of its error.
    #[error("numerical failure in {context}: partial value {partial}, estimated error {error_estimate}")]
    NumericalFailure {
        context: String,
        partial: f64,
        error_estimate: f64,
    },

    /// A limit extrapolation did not settle; carries the sampled values.
    #[error("limit extrapolation did not converge (best {best}, spread {spread})")]
    LimitNotConvergent {
        best: f64,
        spread: f64,
        samples: Vec<(f64, f64)>,
    },

    /// Malformed configuration or data file.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// I/O error while reading or writing profiles, configs, or reports.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization error.
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
