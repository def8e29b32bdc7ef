use thiserror::Error;

/// Errors from state construction, measurement, sampling, and table I/O.
#[derive(Debug, Error)]
pub enum BiphotonError {
    /// Amplitude table violates a state invariant (shape, finiteness, norm).
    #[error("invalid biphoton state: {0}")]
    InvalidState(String),

    /// Probability table violates a distribution invariant.
    #[error("invalid joint distribution: {0}")]
    InvalidDistribution(String),

    /// Operands describe spaces of different dimensions.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The distribution has no probability mass to sample from.
    #[error("cannot sample counts: {0}")]
    EmptySupport(String),

    /// A dwell model parameter is out of range.
    #[error("invalid dwell model: {0}")]
    InvalidModel(String),

    /// A table file has the wrong shape or unparsable cells.
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV failure: {0}")]
    Csv(#[from] csv::Error),
}
