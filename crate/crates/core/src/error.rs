use thiserror::Error;

use crate::circuit::ValidationReport;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid circuit:\n{0}")]
    Validation(ValidationReport),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("{what} out of range: {value} (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension {dim} above dense limit {limit}")]
    DenseLimit { dim: usize, limit: usize },

    #[error(
        "eigensolver did not converge after {iterations} iterations (best residuals {residuals:?})"
    )]
    NonConvergence {
        iterations: usize,
        residuals: Vec<f64>,
    },

    #[error("degeneracy mismatch: expected {expected}, observed {observed}")]
    DegeneracyMismatch { expected: usize, observed: usize },

    #[error("state has zero norm")]
    ZeroState,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad circuit input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::Validation(_) | Error::InvalidArgument(_) | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
