//! Textual aliases for gates and states so simulation commands work
//! without any prior synthesis run.

use std::path::Path;

use biphoton::BiphotonState;
use dft_synth::SolutionRecord;
use qfp_core::{assemble_transfer, dft_matrix, TransferMatrix};

use crate::error::CliError;

/// Parses a gate alias:
/// `ideal-dft:<d>` (exact Fourier gate), `identity:<d>`, or
/// `solution:<file>` (a stored synthesis result, re-validated on load).
pub fn parse_gate(spec: &str) -> Result<TransferMatrix, CliError> {
    let (kind, arg) = split_alias(spec)?;
    match kind {
        "ideal-dft" => {
            let d = parse_dim(arg, spec)?;
            Ok(dft_matrix(d)?)
        }
        "identity" => {
            let d = parse_dim(arg, spec)?;
            Ok(TransferMatrix::identity(d)?)
        }
        "solution" => {
            let record = SolutionRecord::load(Path::new(arg))?;
            let config = record.to_config()?;
            Ok(assemble_transfer(&config)?)
        }
        other => Err(CliError::Validation(format!(
            "unknown gate alias {other:?} in {spec:?}; expected ideal-dft:<d>, identity:<d>, \
             or solution:<file>"
        ))),
    }
}

/// Parses a state alias: `maxent:<d>` (uniform-phase maximally entangled)
/// or `phi:<radians>` (the d = 3 phase family).
pub fn parse_state(spec: &str) -> Result<BiphotonState, CliError> {
    let (kind, arg) = split_alias(spec)?;
    match kind {
        "maxent" => {
            let d = parse_dim(arg, spec)?;
            Ok(biphoton::maximally_entangled(d)?)
        }
        "phi" => {
            let phi: f64 = arg.parse().map_err(|_| {
                CliError::Validation(format!("phase {arg:?} in {spec:?} is not a number"))
            })?;
            if !phi.is_finite() {
                return Err(CliError::Validation(format!(
                    "phase in {spec:?} must be finite"
                )));
            }
            Ok(biphoton::prepare_phi_state(phi))
        }
        other => Err(CliError::Validation(format!(
            "unknown state alias {other:?} in {spec:?}; expected maxent:<d> or phi:<radians>"
        ))),
    }
}

fn split_alias(spec: &str) -> Result<(&str, &str), CliError> {
    spec.split_once(':').ok_or_else(|| {
        CliError::Validation(format!("alias {spec:?} needs the form <kind>:<argument>"))
    })
}

fn parse_dim(arg: &str, spec: &str) -> Result<usize, CliError> {
    let d: usize = arg.parse().map_err(|_| {
        CliError::Validation(format!("dimension {arg:?} in {spec:?} is not an integer"))
    })?;
    if d == 0 {
        return Err(CliError::Validation(format!(
            "dimension in {spec:?} must be at least 1"
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_aliases_parse() {
        assert_eq!(parse_gate("ideal-dft:3").unwrap().dim(), 3);
        assert_eq!(parse_gate("identity:5").unwrap().dim(), 5);
        assert_eq!(parse_state("maxent:4").unwrap().dim(), 4);
        assert_eq!(parse_state("phi:0.5").unwrap().dim(), 3);
    }

    #[test]
    fn bad_aliases_are_validation_errors() {
        for spec in ["dft3", "warp:3", "ideal-dft:zero", "ideal-dft:0"] {
            assert!(matches!(parse_gate(spec), Err(CliError::Validation(_))));
        }
        for spec in ["maxent", "bell:2", "phi:sideways"] {
            assert!(matches!(parse_state(spec), Err(CliError::Validation(_))));
        }
    }
}
