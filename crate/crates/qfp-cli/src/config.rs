//! Config-file loading and flag resolution.
//!
//! Precedence, lowest to highest: built-in defaults, config file, explicit
//! command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use dft_synth::PsoSettings;
use rand::Rng;
use serde::Deserialize;

use crate::args::{GlobalArgs, PsoArgs};
use crate::error::CliError;

/// Optimizer overrides accepted in the config file; unset fields keep the
/// built-in defaults.
#[derive(Debug, Default, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PsoOverrides {
    pub swarm_size: Option<usize>,
    pub iterations: Option<usize>,
    pub inertia: Option<f64>,
    pub cognitive: Option<f64>,
    pub social: Option<f64>,
    pub velocity_clamp: Option<f64>,
    pub restarts: Option<usize>,
}

/// On-disk config file: defaults for the global flags plus optimizer
/// overrides.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub pso: PsoOverrides,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|err| {
            CliError::Validation(format!("cannot read config {}: {err}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|err| {
            CliError::Validation(format!("malformed config {}: {err}", path.display()))
        })
    }
}

/// Fully resolved global state for one invocation.
#[derive(Debug)]
pub struct Context {
    /// Output directory; already created.
    pub out_dir: PathBuf,
    /// Seed from flags or config, if either supplied one.
    pub seed: Option<u64>,
    /// Optimizer overrides from the config file.
    pub pso: PsoOverrides,
}

impl Context {
    pub fn resolve(global: &GlobalArgs) -> Result<Self, CliError> {
        let file = match &global.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let out_dir = global
            .out
            .clone()
            .or(file.out)
            .unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&out_dir).map_err(|err| {
            CliError::Validation(format!(
                "cannot create output directory {}: {err}",
                out_dir.display()
            ))
        })?;
        Ok(Self {
            out_dir,
            seed: global.seed.or(file.seed),
            pso: file.pso,
        })
    }

    /// The seed to use: the supplied one, or a fresh random seed (which the
    /// run record then preserves).
    pub fn seed_or_generate(&self) -> u64 {
        self.seed.unwrap_or_else(|| rand::rng().random())
    }

    /// Merges built-in defaults, config-file overrides, and command-line
    /// flags into concrete optimizer settings.
    pub fn pso_settings(&self, seed: u64, cli: &PsoArgs) -> PsoSettings {
        let mut settings = PsoSettings::with_seed(seed);
        if let Some(v) = cli.swarm_size.or(self.pso.swarm_size) {
            settings.swarm_size = v;
        }
        if let Some(v) = cli.iterations.or(self.pso.iterations) {
            settings.iterations = v;
        }
        if let Some(v) = cli.inertia.or(self.pso.inertia) {
            settings.inertia = v;
        }
        if let Some(v) = cli.cognitive.or(self.pso.cognitive) {
            settings.cognitive = v;
        }
        if let Some(v) = cli.social.or(self.pso.social) {
            settings.social = v;
        }
        if let Some(v) = cli.velocity_clamp.or(self.pso.velocity_clamp) {
            settings.velocity_clamp = v;
        }
        if let Some(v) = cli.restarts.or(self.pso.restarts) {
            settings.restarts = v;
        }
        settings
    }
}
