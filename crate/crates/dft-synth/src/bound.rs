//! Empirical check of the single-modulator success ceiling.
//!
//! With only one phase modulator (shaper flat, second modulator off) the
//! transfer matrix is a Toeplitz slice of the modulator's scattering
//! coefficients. For a target in the discrete-Fourier family the success
//! probability of such a gate is capped at `d / (2d - 1)` at unit fidelity:
//! a single modulator cannot concentrate the scattered power onto the
//! computational band the way the full cascade can.
//!
//! The check maximizes success probability subject to a fidelity floor and
//! reports the best value found next to the analytic cap. The target used
//! is the chirped variant of the Fourier gate (`T_mn ∝ e^{iπ(m−n)²/d}`):
//! it is the member of the family whose phases are compatible with a
//! Toeplitz transfer matrix, differing from the plain Fourier matrix only
//! by diagonal phase rotations on the inputs and outputs, which leave both
//! the success probability and the cap unchanged.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use qfp_core::{
    assemble_transfer, assemble_transfer_with, gate_metrics, GateMetrics, MatrixScope, ModeLattice,
    QfpConfig, QfpError, RfDrive, ShaperConfig, TransferMatrix,
};

use crate::error::SynthError;
use crate::objective::sampling_for;
use crate::pso::{minimize, PsoSettings};
use crate::space::{Coordinate, SearchSpace};

/// Fidelity floor used by [`single_eom_bound_check`]: the gate must be
/// essentially exact before its success probability is compared to the cap.
pub const SINGLE_EOM_FIDELITY_FLOOR: f64 = 0.9999;

/// Result of the single-modulator ceiling check.
#[derive(Clone, Debug)]
pub struct SingleEomCheck {
    /// Gate dimension.
    pub dim: usize,
    /// Best success probability reached at or above the fidelity floor.
    pub achieved_success: f64,
    /// Fidelity of the reported configuration.
    pub achieved_fidelity: f64,
    /// The analytic cap `d / (2d - 1)`.
    pub analytic_bound: f64,
    /// The drive realizing the reported values.
    pub drive: RfDrive,
}

/// The chirped Fourier gate `T_mn = e^{iπ(m−n)²/d} / √d`.
///
/// Equivalent to the plain Fourier gate up to diagonal phase rotations
/// (`T = D_out · F · D_in` with unimodular diagonals), so any
/// fidelity/success pair against `T` maps to the same pair against `F`
/// after free phase corrections on the input and output modes.
pub fn chirped_dft(dim: usize) -> Result<TransferMatrix, QfpError> {
    if dim == 0 {
        return Err(QfpError::InvalidDimension(
            "gate dimension must be at least 1".into(),
        ));
    }
    let scale = 1.0 / (dim as f64).sqrt();
    let mut entries = Array2::zeros((dim, dim));
    for m in 0..dim {
        for n in 0..dim {
            let diff = m as i64 - n as i64;
            // Reduce (m-n)² modulo 2d before multiplying by π/d so the angle
            // stays small and exact.
            let reduced = (diff * diff).rem_euclid(2 * dim as i64) as f64;
            let angle = PI * reduced / dim as f64;
            entries[(m, n)] = C64::from_polar(scale, angle);
        }
    }
    TransferMatrix::from_entries(entries, MatrixScope::Computational)
}

/// The analytic single-modulator success cap for dimension `d`.
pub fn single_eom_cap(dim: usize) -> f64 {
    dim as f64 / (2.0 * dim as f64 - 1.0)
}

/// Maximizes single-modulator success probability at fidelity ≥
/// [`SINGLE_EOM_FIDELITY_FLOOR`] and reports it beside the analytic cap.
///
/// The search drives one modulator with `d + 1` tones (enough to saturate
/// the cap) through a flat shaper, with the second modulator off. The
/// returned `achieved_fidelity` may sit below the floor if the optimizer
/// budget was too small; callers should check it before trusting
/// `achieved_success`.
pub fn single_eom_bound_check(
    dim: usize,
    settings: &PsoSettings,
) -> Result<SingleEomCheck, SynthError> {
    let target = chirped_dft(dim).map_err(SynthError::Core)?;
    let harmonics = dim + 1;

    // Reuse the space machinery for the amplitude ceiling; coordinates are
    // (amp, phase) pairs only, since the shaper is flat and the second
    // modulator is off.
    let amp_max = SearchSpace::new(dim, dim, harmonics, true)?.amp_max();
    let mut coords = Vec::with_capacity(2 * harmonics);
    for _ in 0..harmonics {
        coords.push(Coordinate::Bounded {
            lo: 0.0,
            hi: amp_max,
        });
        coords.push(Coordinate::Periodic);
    }

    let score = |params: &[f64]| -> f64 {
        match single_eom_metrics(dim, params, &target, false) {
            // Feasibility-first objective: until the fidelity floor is met,
            // descend on the fidelity gap; after that, maximize success.
            Ok(m) => {
                if m.fidelity < SINGLE_EOM_FIDELITY_FLOOR {
                    1.0 + (SINGLE_EOM_FIDELITY_FLOOR - m.fidelity)
                } else {
                    -m.success_prob
                }
            }
            Err(_) => 2e3,
        }
    };

    let outcome = minimize(&coords, score, settings)?;
    let metrics = single_eom_metrics(dim, &outcome.best_position, &target, true)?;
    let drive = drive_from_flat(&outcome.best_position).map_err(SynthError::Core)?;

    Ok(SingleEomCheck {
        dim,
        achieved_success: metrics.success_prob,
        achieved_fidelity: metrics.fidelity,
        analytic_bound: single_eom_cap(dim),
        drive,
    })
}

fn drive_from_flat(params: &[f64]) -> Result<RfDrive, QfpError> {
    let harmonics = params
        .chunks_exact(2)
        .map(|pair| qfp_core::Harmonic {
            amplitude: pair[0],
            phase: pair[1],
        })
        .collect();
    RfDrive::new(harmonics)
}

fn single_eom_metrics(
    dim: usize,
    params: &[f64],
    target: &TransferMatrix,
    default_sampling: bool,
) -> Result<GateMetrics, SynthError> {
    let lattice = ModeLattice::centered(dim).map_err(SynthError::Core)?;
    let shaper = ShaperConfig::flat_centered(dim, &lattice).map_err(SynthError::Core)?;
    let drive = drive_from_flat(params).map_err(SynthError::Core)?;
    let config =
        QfpConfig::new(drive, shaper, RfDrive::off(), lattice).map_err(SynthError::Core)?;
    let transfer = if default_sampling {
        assemble_transfer(&config).map_err(SynthError::Core)?
    } else {
        assemble_transfer_with(&config, &sampling_for(&config)).map_err(SynthError::Core)?
    };
    gate_metrics(&transfer, target).map_err(SynthError::Core)
}
