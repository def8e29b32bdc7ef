//! Error type for the synthesis layer.

use qfp_core::QfpError;
use thiserror::Error;

/// Errors produced while building search spaces, running the optimizer, or
/// round-tripping solution records.
#[derive(Debug, Error)]
pub enum SynthError {
    /// A hardware-model error bubbled up from the core crate.
    #[error(transparent)]
    Core(#[from] QfpError),

    /// The requested search space is malformed (bad dimension, bandwidth,
    /// harmonic count, or amplitude ceiling).
    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    /// The optimizer settings are unusable (empty swarm, zero iterations,
    /// non-finite or out-of-range coefficients).
    #[error("invalid optimizer settings: {0}")]
    InvalidSettings(String),

    /// A parameter vector does not match the degrees of freedom of the space.
    #[error("parameter vector has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A sweep grid is empty, unsorted, or otherwise unusable.
    #[error("invalid bandwidth grid: {0}")]
    InvalidGrid(String),

    /// A solution record is structurally broken (wrong schema version,
    /// inconsistent array lengths, non-finite entries).
    #[error("invalid solution record: {0}")]
    Registry(String),

    /// A stored figure of merit disagrees with the value recomputed from the
    /// stored parameters; the file is stale or was edited by hand.
    #[error(
        "solution record failed self-validation: {field} stored as {stored:.12e} \
         but recomputes to {recomputed:.12e}"
    )]
    SelfValidation {
        field: &'static str,
        stored: f64,
        recomputed: f64,
    },

    /// File I/O failed while reading or writing a record.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failed.
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}
