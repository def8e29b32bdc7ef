use biphoton::BiphotonError;
use dft_synth::SynthError;
use inference::InferenceError;
use qfp_core::QfpError;
use serde::Serialize;
use thiserror::Error;

/// Exit code for rejected parameters or malformed input files.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for failures inside the numerics.
pub const EXIT_NUMERICAL: i32 = 3;

/// Top-level command failure, split by exit-code class.
#[derive(Debug, Error)]
pub enum CliError {
    /// The request itself is unusable: bad flags, bad geometry, malformed
    /// or missing input files.
    #[error("{0}")]
    Validation(String),

    /// The request was well-formed but the computation failed: truncation
    /// overflow, non-finite values, or a solution file that fails its own
    /// self-validation.
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Numerical(_) => "numerical",
        }
    }
}

/// Machine-readable error record printed to stderr on failure.
#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    exit_code: i32,
    message: String,
}

impl CliError {
    /// The JSON error record for stderr.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ErrorRecord {
            error: ErrorBody {
                kind: self.kind(),
                exit_code: self.exit_code(),
                message: self.to_string(),
            },
        })
        .expect("error record serializes")
    }
}

fn qfp_is_numerical(error: &QfpError) -> bool {
    matches!(
        error,
        QfpError::TruncationLoss { .. }
            | QfpError::NonUnitaryTarget { .. }
            | QfpError::DegenerateTransfer
            | QfpError::NonPhysical(_)
            | QfpError::NonFinite(_)
    )
}

impl From<QfpError> for CliError {
    fn from(error: QfpError) -> Self {
        if qfp_is_numerical(&error) {
            CliError::Numerical(error.to_string())
        } else {
            CliError::Validation(error.to_string())
        }
    }
}

impl From<SynthError> for CliError {
    fn from(error: SynthError) -> Self {
        match &error {
            SynthError::Core(core) if qfp_is_numerical(core) => {
                CliError::Numerical(error.to_string())
            }
            SynthError::SelfValidation { .. } => CliError::Numerical(error.to_string()),
            _ => CliError::Validation(error.to_string()),
        }
    }
}

impl From<BiphotonError> for CliError {
    fn from(error: BiphotonError) -> Self {
        CliError::Validation(error.to_string())
    }
}

impl From<InferenceError> for CliError {
    fn from(error: InferenceError) -> Self {
        match &error {
            InferenceError::InvalidDensity(_) => CliError::Numerical(error.to_string()),
            _ => CliError::Validation(error.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(error: std::io::Error) -> Self {
        CliError::Validation(format!("I/O failure: {error}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(error: serde_json::Error) -> Self {
        CliError::Validation(format!("JSON failure: {error}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(error: csv::Error) -> Self {
        CliError::Validation(format!("CSV failure: {error}"))
    }
}
