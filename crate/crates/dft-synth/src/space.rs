//! Parameterization of the synthesis search space.
//!
//! A candidate gate is described by a flat parameter vector that the swarm
//! optimizer can move through. The layout is:
//!
//! ```text
//! [ shaper phases (B entries)
//! , input-modulator tones: amp_1, phase_1, ..., amp_P, phase_P
//! , output-modulator tones: amp_1, phase_1, ..., amp_P, phase_P ]  (omitted in symmetric mode)
//! ```
//!
//! Phases are periodic coordinates on `[0, 2π)`; amplitudes are bounded
//! coordinates on `[0, amp_max]`. In symmetric mode the output modulator is
//! not searched over: it is pinned to the time-reversed copy of the input
//! drive, which halves the modulator degrees of freedom.

use std::f64::consts::TAU;

use qfp_core::{Harmonic, ModeLattice, QfpConfig, RfDrive, ShaperConfig};
use serde::{Deserialize, Serialize};

use crate::error::SynthError;

/// Default ceiling for tone amplitudes, in radians of phase modulation.
///
/// Four half-turns of modulation depth is comfortably beyond what the
/// synthesized gates need while keeping the spectral support of each
/// modulator well inside the mode lattice.
pub const DEFAULT_AMP_MAX: f64 = 4.0 * std::f64::consts::PI;

/// Geometry of one optimizer coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coordinate {
    /// An angle on `[0, 2π)`; positions wrap and displacements take the
    /// shortest arc.
    Periodic,
    /// A real value confined to `[lo, hi]`; the boundary absorbs particles
    /// (position clamps, velocity zeroes).
    Bounded { lo: f64, hi: f64 },
}

impl Coordinate {
    /// Width of the coordinate's range, used to scale velocity clamps.
    pub fn range(&self) -> f64 {
        match *self {
            Coordinate::Periodic => TAU,
            Coordinate::Bounded { lo, hi } => hi - lo,
        }
    }
}

/// The searchable configuration family for one synthesis problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    dim: usize,
    bandwidth: usize,
    harmonics: usize,
    symmetric: bool,
    amp_max: f64,
}

impl SearchSpace {
    /// Creates a search space for a `dim x dim` gate using `bandwidth` shaper
    /// channels and `harmonics` tones per modulator.
    ///
    /// `symmetric` pins the output modulator to the time-reversed input
    /// drive instead of searching over it independently.
    pub fn new(
        dim: usize,
        bandwidth: usize,
        harmonics: usize,
        symmetric: bool,
    ) -> Result<Self, SynthError> {
        if dim == 0 {
            return Err(SynthError::InvalidSpace(
                "gate dimension must be at least 1".into(),
            ));
        }
        if harmonics == 0 {
            return Err(SynthError::InvalidSpace(
                "each modulator needs at least one tone".into(),
            ));
        }
        // Validate the geometry once up front: centered lattice, centered
        // shaper band, computational band inside it.
        let lattice = ModeLattice::centered(dim).map_err(SynthError::Core)?;
        ShaperConfig::flat_centered(bandwidth, &lattice).map_err(SynthError::Core)?;
        Ok(Self {
            dim,
            bandwidth,
            harmonics,
            symmetric,
            amp_max: DEFAULT_AMP_MAX,
        })
    }

    /// Replaces the amplitude ceiling (default [`DEFAULT_AMP_MAX`]).
    pub fn with_amp_max(mut self, amp_max: f64) -> Result<Self, SynthError> {
        if !amp_max.is_finite() || amp_max <= 0.0 {
            return Err(SynthError::InvalidSpace(format!(
                "amplitude ceiling must be finite and positive, got {amp_max}"
            )));
        }
        self.amp_max = amp_max;
        Ok(self)
    }

    /// Gate dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of shaper channels searched over.
    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    /// Number of tones per modulator.
    pub fn harmonics(&self) -> usize {
        self.harmonics
    }

    /// Whether the output modulator is pinned to the time-reversed input.
    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    /// Amplitude ceiling for modulator tones.
    pub fn amp_max(&self) -> f64 {
        self.amp_max
    }

    /// The mode lattice all candidates live on.
    pub fn lattice(&self) -> ModeLattice {
        // Validated in `new`, so this cannot fail.
        ModeLattice::centered(self.dim).expect("space geometry validated at construction")
    }

    /// Total number of optimizer coordinates.
    pub fn dof(&self) -> usize {
        let modulators = if self.symmetric { 1 } else { 2 };
        self.bandwidth + modulators * 2 * self.harmonics
    }

    /// Coordinate geometry for each entry of the parameter vector, in layout
    /// order.
    pub fn coordinates(&self) -> Vec<Coordinate> {
        let mut coords = Vec::with_capacity(self.dof());
        coords.extend(std::iter::repeat(Coordinate::Periodic).take(self.bandwidth));
        let modulators = if self.symmetric { 1 } else { 2 };
        for _ in 0..modulators {
            for _ in 0..self.harmonics {
                coords.push(Coordinate::Bounded {
                    lo: 0.0,
                    hi: self.amp_max,
                });
                coords.push(Coordinate::Periodic);
            }
        }
        coords
    }

    /// Builds the hardware configuration described by a parameter vector.
    pub fn decode(&self, params: &[f64]) -> Result<QfpConfig, SynthError> {
        if params.len() != self.dof() {
            return Err(SynthError::DimensionMismatch {
                expected: self.dof(),
                got: params.len(),
            });
        }
        let lattice = self.lattice();
        let shaper = ShaperConfig::centered(params[..self.bandwidth].to_vec(), &lattice)
            .map_err(SynthError::Core)?;

        let drive_a =
            drive_from_pairs(&params[self.bandwidth..self.bandwidth + 2 * self.harmonics])
                .map_err(SynthError::Core)?;
        let drive_b = if self.symmetric {
            drive_a.time_reversed()
        } else {
            let start = self.bandwidth + 2 * self.harmonics;
            drive_from_pairs(&params[start..start + 2 * self.harmonics])
                .map_err(SynthError::Core)?
        };

        QfpConfig::new(drive_a, shaper, drive_b, lattice).map_err(SynthError::Core)
    }

    /// Flattens a configuration back into a parameter vector.
    ///
    /// Inverse of [`decode`](Self::decode) for configurations that fit this
    /// space: matching dimension, bandwidth, tone count, and (in symmetric
    /// mode) an output drive that is the time-reversed input drive.
    pub fn encode(&self, config: &QfpConfig) -> Result<Vec<f64>, SynthError> {
        if config.lattice().comp_dim() != self.dim {
            return Err(SynthError::InvalidSpace(format!(
                "configuration is {}-dimensional, space is {}-dimensional",
                config.lattice().comp_dim(),
                self.dim
            )));
        }
        if config.shaper().phases().len() != self.bandwidth {
            return Err(SynthError::InvalidSpace(format!(
                "configuration uses {} shaper channels, space uses {}",
                config.shaper().phases().len(),
                self.bandwidth
            )));
        }
        if config.drive_a().tone_count() != self.harmonics
            || (!self.symmetric && config.drive_b().tone_count() != self.harmonics)
        {
            return Err(SynthError::InvalidSpace(format!(
                "configuration tone counts ({}, {}) do not match the space ({})",
                config.drive_a().tone_count(),
                config.drive_b().tone_count(),
                self.harmonics
            )));
        }
        if self.symmetric && !drives_close(config.drive_b(), &config.drive_a().time_reversed()) {
            return Err(SynthError::InvalidSpace(
                "symmetric space requires the output drive to be the time-reversed input drive"
                    .into(),
            ));
        }

        let mut params = Vec::with_capacity(self.dof());
        params.extend_from_slice(config.shaper().phases());
        push_pairs(&mut params, config.drive_a());
        if !self.symmetric {
            push_pairs(&mut params, config.drive_b());
        }
        for (value, coord) in params.iter().zip(self.coordinates()) {
            if let Coordinate::Bounded { lo, hi } = coord {
                if *value < lo || *value > hi {
                    return Err(SynthError::InvalidSpace(format!(
                        "tone amplitude {value} exceeds the space ceiling {hi}"
                    )));
                }
            }
        }
        Ok(params)
    }
}

fn drive_from_pairs(pairs: &[f64]) -> Result<RfDrive, qfp_core::QfpError> {
    let harmonics: Vec<Harmonic> = pairs
        .chunks_exact(2)
        .map(|pair| Harmonic {
            amplitude: pair[0],
            phase: pair[1],
        })
        .collect();
    RfDrive::new(harmonics)
}

fn push_pairs(params: &mut Vec<f64>, drive: &RfDrive) {
    for tone in drive.harmonics() {
        params.push(tone.amplitude);
        params.push(tone.phase);
    }
}

/// Loose equality for drives; wrapping `2π - γ` twice can differ from the
/// original phase by a rounding ulp, so exact comparison is too strict.
fn drives_close(a: &RfDrive, b: &RfDrive) -> bool {
    if a.tone_count() != b.tone_count() {
        return false;
    }
    a.harmonics().iter().zip(b.harmonics()).all(|(x, y)| {
        (x.amplitude - y.amplitude).abs() <= 1e-12 && angle_distance(x.phase, y.phase) <= 1e-12
    })
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let diff = (a - b).rem_euclid(TAU);
    diff.min(TAU - diff)
}
