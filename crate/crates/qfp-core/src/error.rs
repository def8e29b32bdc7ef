use thiserror::Error;

/// Errors produced while validating or evaluating processor configurations.
#[derive(Debug, Error)]
pub enum QfpError {
    #[error("invalid drive: {0}")]
    InvalidDrive(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid shaper: {0}")]
    InvalidShaper(String),

    #[error("geometry mismatch: {0}")]
    Geometry(String),

    #[error("invalid sampling settings: {0}")]
    InvalidSampling(String),

    #[error(
        "coefficient truncation loss: residual {residual:.3e} exceeds tolerance \
         {tolerance:.3e} at half-width {half_width}"
    )]
    TruncationLoss {
        residual: f64,
        tolerance: f64,
        half_width: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("target matrix is not unitary (max deviation {deviation:.3e})")]
    NonUnitaryTarget { deviation: f64 },

    #[error("transfer matrix is degenerate (zero success probability)")]
    DegenerateTransfer,

    #[error("non-physical transfer matrix: {0}")]
    NonPhysical(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}
