//! Swarm-based synthesis of discrete-Fourier gates for the frequency-bin
//! processor modeled by `qfp-core`.
//!
//! The crate turns gate synthesis into a box/torus optimization problem:
//! shaper channel phases and modulator tone parameters form a flat vector
//! ([`SearchSpace`]), a particle swarm ([`minimize`]) descends on the
//! combined figure of merit `success_prob * log10(1 - fidelity)`
//! ([`Evaluator`]), and the winning configuration is re-scored at full
//! sampling resolution and packaged for reproduction ([`pso_optimize`],
//! [`SolutionRecord`]).
//!
//! Supporting tools: [`bandwidth_sweep`] locates the smallest shaper band
//! that reaches the cost plateau, and [`single_eom_bound_check`] probes the
//! success-probability ceiling of a single-modulator arrangement against
//! its analytic cap.
//!
//! All searches are deterministic given the master seed, independent of
//! thread count.

mod bound;
mod error;
mod objective;
mod pso;
mod registry;
mod space;
mod sweep;
mod synth;

pub use bound::{
    chirped_dft, single_eom_bound_check, single_eom_cap, SingleEomCheck, SINGLE_EOM_FIDELITY_FLOOR,
};
pub use error::SynthError;
pub use objective::{
    cost, objective, sampling_for, Evaluator, SEARCH_INFIDELITY_FLOOR, STRUCTURAL_PENALTY,
    TRUNCATION_PENALTY,
};
pub use pso::{minimize, PsoOutcome, PsoSettings, RestartOutcome};
pub use registry::{SolutionRecord, ToneRecord, SCHEMA_VERSION, SELF_VALIDATION_TOL};
pub use space::{Coordinate, SearchSpace, DEFAULT_AMP_MAX};
pub use sweep::{bandwidth_sweep, round_sig3, SweepPoint, SweepResult};
pub use synth::{default_bandwidth, default_harmonics, pso_optimize, SynthesisResult};
