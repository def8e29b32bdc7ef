//! Run records: every command writes one JSON file describing exactly what
//! it did — the resolved parameters, the seed, and the named output files —
//! so any run can be reproduced from the record alone.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Bumped on any backwards-incompatible change to the record layout.
pub const RUN_RECORD_SCHEMA_VERSION: u32 = 1;

/// A complete, self-contained description of one CLI invocation.
///
/// `params` holds the fully resolved inputs (defaults and config-file values
/// already applied), keyed by the long CLI flag names, so a record can be
/// replayed by reconstructing the equivalent command line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    /// Subcommand name (`synth`, `sweep`, `correlate`, `counts`, `bound`).
    pub command: String,
    /// Resolved parameters, keyed by long flag name.
    pub params: serde_json::Value,
    /// The seed actually used, whether supplied or generated.
    pub seed: Option<u64>,
    /// Wall-clock start time, seconds since the Unix epoch.
    pub unix_time_s: u64,
    /// Elapsed wall time for the command, in seconds.
    pub wall_time_s: f64,
    /// Output name → file name (relative to the output directory).
    pub outputs: BTreeMap<String, String>,
    /// Headline numbers of the run, for quick inspection.
    pub result: serde_json::Value,
}

impl RunRecord {
    /// Starts a record for `command`; fill in the remaining fields before saving.
    pub fn new(command: &str, params: serde_json::Value, seed: Option<u64>) -> Self {
        let unix_time_s = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            schema_version: RUN_RECORD_SCHEMA_VERSION,
            command: command.to_string(),
            params,
            seed,
            unix_time_s,
            wall_time_s: 0.0,
            outputs: BTreeMap::new(),
            result: serde_json::Value::Null,
        }
    }

    /// Registers an output file under a stable name.
    pub fn add_output(&mut self, name: &str, file_name: &str) {
        self.outputs.insert(name.to_string(), file_name.to_string());
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let mut text = self.to_json()?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trips_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let mut record = RunRecord::new("synth", serde_json::json!({"dim": 2}), Some(7));
        record.add_output("solution", "solution.json");
        record.wall_time_s = 1.25;
        record.result = serde_json::json!({"fidelity": 0.9999});
        let path = dir.path().join("run-record.json");
        record.save(&path).unwrap();

        let text = fs::read_to_string(&path).unwrap();
        let back: RunRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.schema_version, RUN_RECORD_SCHEMA_VERSION);
        assert_eq!(back.command, "synth");
        assert_eq!(back.seed, Some(7));
        assert_eq!(back.outputs["solution"], "solution.json");
        assert_eq!(back.params["dim"], 2);
        assert!(back.unix_time_s > 0);
    }
}
