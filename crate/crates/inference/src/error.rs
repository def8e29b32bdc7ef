use thiserror::Error;

/// Errors from probability-vector, posterior, and density-matrix handling.
#[derive(Debug, Error)]
pub enum InferenceError {
    /// A probability vector violates simplex membership.
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    /// A density matrix violates Hermiticity, unit trace, or positivity.
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    /// Operands describe spaces of different dimensions.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A sampler parameter is out of range.
    #[error("invalid sampling request: {0}")]
    InvalidRequest(String),
}
