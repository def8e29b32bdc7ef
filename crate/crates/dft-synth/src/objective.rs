//! The scalar figure of merit the swarm minimizes.
//!
//! For a candidate parameter vector the evaluator assembles the transfer
//! matrix, scores it against the target gate, and returns
//! `success_prob * log10(1 - fidelity)` (with the fidelity clamp from the
//! core crate). Lower is better: high fidelity drives the log factor far
//! negative and high success probability scales it.
//!
//! Candidates the hardware model refuses to evaluate get a large positive
//! penalty instead of an error, so the swarm can keep moving. The penalties
//! are graded: spectral-truncation failures are ranked by how badly the
//! scattering leaks outside the lattice, so the swarm still feels a gradient
//! back toward representable drives, while structural failures sit at a
//! strictly worse plateau. The objective never returns NaN.

use qfp_core::{
    adaptive_samples, assemble_transfer_with, clamped_cost, dft_matrix, gate_metrics, GateMetrics,
    QfpConfig, QfpError, SamplingSettings, TransferMatrix, DEFAULT_FIDELITY_CLAMP,
    DEFAULT_TRUNCATION_TOL,
};

use crate::error::SynthError;
use crate::space::SearchSpace;

/// Infidelity level below which the *search* treats a gate as exact.
///
/// The fidelity measure is invariant under uniform attenuation `W → λW`, so
/// configurations realizing an exact scalar multiple of the target score
/// `F = 1` at reduced success probability `|λ|²`. Under an unsaturated
/// log-infidelity cost those attenuated-exact solutions dominate every
/// genuine operating point (the log factor saturates only at the float
/// clamp, worth −12 per unit success), and the optimizer happily trades
/// ~1-2% of success probability for fidelity digits that are pure gauge
/// noise along the attenuation direction. Saturating the infidelity at 1e-4
/// makes the search spend those resources on success probability instead:
/// its optimum sits at the saturation boundary with the highest success the
/// hardware supports there. Reported metrics and the public [`cost`] are
/// not affected — they keep the standard clamp.
pub const SEARCH_INFIDELITY_FLOOR: f64 = 1e-4;

/// Penalty for candidates whose scattering cannot be truncated to the
/// lattice within tolerance; the graded term `log10(residual / tol)` is
/// added on top.
pub const TRUNCATION_PENALTY: f64 = 1e3;

/// Penalty for candidates that fail evaluation for any structural reason
/// (degenerate transfer, non-finite entries); strictly worse than any
/// truncation penalty a bounded-amplitude drive can produce.
pub const STRUCTURAL_PENALTY: f64 = 2e3;

/// Combined figure of merit for a scored gate; lower is better.
pub fn cost(fidelity: f64, success_prob: f64) -> f64 {
    clamped_cost(fidelity, success_prob, DEFAULT_FIDELITY_CLAMP)
}

/// Scores parameter vectors of one search space against a fixed target gate.
pub struct Evaluator {
    space: SearchSpace,
    target: TransferMatrix,
}

impl Evaluator {
    /// Evaluator for the discrete-Fourier target of the space's dimension.
    pub fn new(space: SearchSpace) -> Result<Self, SynthError> {
        let target = dft_matrix(space.dim()).map_err(SynthError::Core)?;
        Ok(Self { space, target })
    }

    /// Evaluator for an arbitrary target gate of matching dimension.
    pub fn with_target(space: SearchSpace, target: TransferMatrix) -> Result<Self, SynthError> {
        if target.dim() != space.dim() {
            return Err(SynthError::DimensionMismatch {
                expected: space.dim(),
                got: target.dim(),
            });
        }
        Ok(Self { space, target })
    }

    /// The search space this evaluator scores.
    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    /// Objective value for a parameter vector; infeasible candidates map to
    /// graded penalties rather than errors. Never NaN.
    ///
    /// The vector must have `space.dof()` entries; the optimizer guarantees
    /// this, and the public [`objective`] wrapper checks it.
    pub fn cost_of(&self, params: &[f64]) -> f64 {
        match self.metrics_of(params) {
            Ok(metrics) => metrics.cost,
            Err(error) => penalty(&error),
        }
    }

    /// Search-time objective: like [`cost_of`](Self::cost_of) but with the
    /// infidelity saturated at [`SEARCH_INFIDELITY_FLOOR`], so the swarm
    /// maximizes success probability once a candidate is application-exact
    /// instead of chasing gauge-degenerate fidelity digits. Never NaN.
    pub fn search_cost_of(&self, params: &[f64]) -> f64 {
        match self.metrics_of(params) {
            Ok(metrics) => clamped_cost(
                metrics.fidelity,
                metrics.success_prob,
                SEARCH_INFIDELITY_FLOOR,
            ),
            Err(error) => penalty(&error),
        }
    }

    /// Full gate metrics for a parameter vector, at a sampling resolution
    /// adapted to the candidate's modulation depth.
    pub fn metrics_of(&self, params: &[f64]) -> Result<GateMetrics, SynthError> {
        let config = self.space.decode(params)?;
        let transfer = assemble_transfer_with(&config, &sampling_for(&config))?;
        gate_metrics(&transfer, &self.target).map_err(SynthError::Core)
    }
}

fn penalty(error: &SynthError) -> f64 {
    match error {
        SynthError::Core(QfpError::TruncationLoss {
            residual,
            tolerance,
            ..
        }) => TRUNCATION_PENALTY + (residual / tolerance).log10().max(0.0),
        _ => STRUCTURAL_PENALTY,
    }
}

/// Sampling resolution sufficient for both modulators of a candidate.
pub fn sampling_for(config: &QfpConfig) -> SamplingSettings {
    SamplingSettings {
        samples: adaptive_samples(config.drive_a()).max(adaptive_samples(config.drive_b())),
        truncation_tol: DEFAULT_TRUNCATION_TOL,
    }
}

/// One-shot objective evaluation with input validation.
pub fn objective(space: &SearchSpace, params: &[f64]) -> Result<f64, SynthError> {
    if params.len() != space.dof() {
        return Err(SynthError::DimensionMismatch {
            expected: space.dof(),
            got: params.len(),
        });
    }
    Ok(Evaluator::new(*space)?.cost_of(params))
}
