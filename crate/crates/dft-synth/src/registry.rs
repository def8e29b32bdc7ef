//! Portable JSON records of synthesized solutions.
//!
//! A record stores the full hardware configuration (shaper phases and both
//! modulator drives), the search provenance (seed, mode, iteration budget),
//! and the figures of merit at the default sampling resolution. Loading a
//! record re-assembles the transfer matrix and recomputes the figures of
//! merit; if they disagree with the stored values beyond float-noise
//! tolerance the file is rejected as stale or tampered with.

use std::fs;
use std::path::Path;

use qfp_core::{
    assemble_transfer, dft_matrix, gate_metrics, GateMetrics, Harmonic, ModeLattice, QfpConfig,
    RfDrive, ShaperConfig,
};
use serde::{Deserialize, Serialize};

use crate::error::SynthError;
use crate::synth::SynthesisResult;

/// Current schema version; bump on breaking layout changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Tolerance for the recomputed-versus-stored figure-of-merit comparison.
/// JSON round-trips floats exactly, so any drift beyond double rounding
/// noise means the record no longer describes the stored configuration.
pub const SELF_VALIDATION_TOL: f64 = 1e-9;

/// One modulator tone as stored on disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToneRecord {
    /// Modulation depth in radians.
    pub amp: f64,
    /// Tone phase in radians.
    pub phase: f64,
}

/// A synthesized gate in portable form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    /// Schema version of this file.
    pub schema_version: u32,
    /// Gate dimension.
    #[serde(rename = "d")]
    pub dim: usize,
    /// Number of shaper channels.
    #[serde(rename = "B")]
    pub bandwidth: usize,
    /// Tones per modulator.
    #[serde(rename = "P")]
    pub harmonics: usize,
    /// Whether the search pinned the output drive to the time-reversed
    /// input drive. The drives below are always stored expanded.
    pub symmetric: bool,
    /// Master seed the search ran with.
    pub seed: u64,
    /// Shaper channel phases, in channel order.
    pub shaper_phases: Vec<f64>,
    /// Input-modulator tones, fundamental first.
    pub eom1: Vec<ToneRecord>,
    /// Output-modulator tones, fundamental first.
    pub eom2: Vec<ToneRecord>,
    /// Gate fidelity at the default sampling resolution.
    pub fidelity: f64,
    /// Gate success probability at the default sampling resolution.
    pub success_prob: f64,
    /// Combined figure of merit `success_prob * log10(1 - fidelity)`.
    pub cost: f64,
    /// Iterations executed per restart.
    pub iterations_used: usize,
    /// Wall-clock duration of the producing search, in seconds.
    pub wall_time_s: f64,
}

impl SolutionRecord {
    /// Builds a record from a finished synthesis run.
    pub fn from_result(result: &SynthesisResult) -> Self {
        let tones = |drive: &RfDrive| {
            drive
                .harmonics()
                .iter()
                .map(|h| ToneRecord {
                    amp: h.amplitude,
                    phase: h.phase,
                })
                .collect()
        };
        Self {
            schema_version: SCHEMA_VERSION,
            dim: result.space.dim(),
            bandwidth: result.space.bandwidth(),
            harmonics: result.space.harmonics(),
            symmetric: result.space.symmetric(),
            seed: result.settings.seed,
            shaper_phases: result.config.shaper().phases().to_vec(),
            eom1: tones(result.config.drive_a()),
            eom2: tones(result.config.drive_b()),
            fidelity: result.metrics.fidelity,
            success_prob: result.metrics.success_prob,
            cost: result.metrics.cost,
            iterations_used: result.iterations_used,
            wall_time_s: result.wall_time_s,
        }
    }

    /// Rebuilds the hardware configuration this record describes.
    pub fn to_config(&self) -> Result<QfpConfig, SynthError> {
        self.check_structure()?;
        let lattice = ModeLattice::centered(self.dim).map_err(SynthError::Core)?;
        let shaper = ShaperConfig::centered(self.shaper_phases.clone(), &lattice)
            .map_err(SynthError::Core)?;
        let drive = |tones: &[ToneRecord]| {
            RfDrive::new(
                tones
                    .iter()
                    .map(|t| Harmonic {
                        amplitude: t.amp,
                        phase: t.phase,
                    })
                    .collect(),
            )
        };
        let drive_a = drive(&self.eom1).map_err(SynthError::Core)?;
        let drive_b = drive(&self.eom2).map_err(SynthError::Core)?;
        QfpConfig::new(drive_a, shaper, drive_b, lattice).map_err(SynthError::Core)
    }

    /// Recomputes the figures of merit from the stored configuration and
    /// checks them against the stored values within [`SELF_VALIDATION_TOL`].
    pub fn validate(&self) -> Result<GateMetrics, SynthError> {
        let config = self.to_config()?;
        let transfer = assemble_transfer(&config).map_err(SynthError::Core)?;
        let target = dft_matrix(self.dim).map_err(SynthError::Core)?;
        let metrics = gate_metrics(&transfer, &target).map_err(SynthError::Core)?;
        for (field, stored, recomputed) in [
            ("fidelity", self.fidelity, metrics.fidelity),
            ("success_prob", self.success_prob, metrics.success_prob),
            ("cost", self.cost, metrics.cost),
        ] {
            if (stored - recomputed).abs() > SELF_VALIDATION_TOL {
                return Err(SynthError::SelfValidation {
                    field,
                    stored,
                    recomputed,
                });
            }
        }
        Ok(metrics)
    }

    /// Serializes to pretty-printed JSON (with trailing newline).
    pub fn to_json(&self) -> Result<String, SynthError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Parses a record from JSON and checks its structure (but does not
    /// re-derive the figures of merit; see [`validate`](Self::validate)).
    pub fn from_json(text: &str) -> Result<Self, SynthError> {
        let record: Self = serde_json::from_str(text)?;
        record.check_structure()?;
        Ok(record)
    }

    /// Writes the record to `path` as pretty-printed JSON.
    pub fn save(&self, path: &Path) -> Result<(), SynthError> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    /// Reads a record from `path`, checks its structure, and self-validates
    /// the stored figures of merit against recomputed ones.
    pub fn load(path: &Path) -> Result<Self, SynthError> {
        let record = Self::from_json(&fs::read_to_string(path)?)?;
        record.validate()?;
        Ok(record)
    }

    fn check_structure(&self) -> Result<(), SynthError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(SynthError::Registry(format!(
                "unsupported schema version {}, expected {}",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        if self.dim == 0 {
            return Err(SynthError::Registry("gate dimension is zero".into()));
        }
        if self.shaper_phases.len() != self.bandwidth {
            return Err(SynthError::Registry(format!(
                "bandwidth {} disagrees with {} stored shaper phases",
                self.bandwidth,
                self.shaper_phases.len()
            )));
        }
        if self.eom1.len() != self.harmonics || self.eom2.len() != self.harmonics {
            return Err(SynthError::Registry(format!(
                "tone count {} disagrees with stored drives ({}, {})",
                self.harmonics,
                self.eom1.len(),
                self.eom2.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dummy() -> SolutionRecord {
        SolutionRecord {
            schema_version: SCHEMA_VERSION,
            dim: 2,
            bandwidth: 4,
            harmonics: 1,
            symmetric: false,
            seed: 9,
            shaper_phases: vec![0.0; 4],
            eom1: vec![ToneRecord {
                amp: 0.5,
                phase: 0.1,
            }],
            eom2: vec![ToneRecord {
                amp: 0.3,
                phase: 0.2,
            }],
            fidelity: 0.0,
            success_prob: 0.0,
            cost: 0.0,
            iterations_used: 1,
            wall_time_s: 0.0,
        }
    }

    #[test]
    fn structure_checks_catch_mismatches() {
        let mut r = dummy();
        r.schema_version = 99;
        assert!(matches!(r.check_structure(), Err(SynthError::Registry(_))));

        let mut r = dummy();
        r.shaper_phases.pop();
        assert!(r.check_structure().is_err());

        let mut r = dummy();
        r.eom2.clear();
        assert!(r.check_structure().is_err());
    }

    #[test]
    fn json_uses_short_field_names() {
        let text = dummy().to_json().unwrap();
        assert!(text.contains("\"d\": 2"));
        assert!(text.contains("\"B\": 4"));
        assert!(text.contains("\"P\": 1"));
        assert!(!text.contains("\"dim\""));
        let back = SolutionRecord::from_json(&text).unwrap();
        assert_eq!(back, dummy());
    }
}
