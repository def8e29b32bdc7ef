use std::f64::consts::TAU;

use crate::error::QfpError;

/// Wrap an angle to [0, 2π). `rem_euclid` alone can round up to exactly 2π
/// for tiny negative inputs, hence the extra guard.
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// One RF tone of a phase-modulation waveform: `amplitude · cos(p·θ + phase)`
/// where `p` is the tone's position in the drive (1-based) and θ advances by
/// 2π over one modulation period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Harmonic {
    /// Modulation depth in radians; finite and non-negative.
    pub amplitude: f64,
    /// Tone phase in radians, stored wrapped to [0, 2π).
    pub phase: f64,
}

/// Periodic phase-modulation drive applied by one electro-optic modulator.
///
/// The waveform is `A(θ) = Σ_p amplitude_p · cos(p·θ + phase_p)` with the
/// harmonic index `p` running 1..=P over consecutive multiples of the bin
/// spacing. An empty drive leaves the modulator off.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RfDrive {
    harmonics: Vec<Harmonic>,
}

impl RfDrive {
    /// Validates amplitudes (finite, non-negative) and wraps phases to [0, 2π).
    pub fn new(harmonics: Vec<Harmonic>) -> Result<Self, QfpError> {
        let mut checked = Vec::with_capacity(harmonics.len());
        for (i, h) in harmonics.into_iter().enumerate() {
            if !h.amplitude.is_finite() || h.amplitude < 0.0 {
                return Err(QfpError::InvalidDrive(format!(
                    "harmonic {} has amplitude {}, expected finite and non-negative",
                    i + 1,
                    h.amplitude
                )));
            }
            if !h.phase.is_finite() {
                return Err(QfpError::InvalidDrive(format!(
                    "harmonic {} has non-finite phase",
                    i + 1
                )));
            }
            checked.push(Harmonic {
                amplitude: h.amplitude,
                phase: wrap_angle(h.phase),
            });
        }
        Ok(Self { harmonics: checked })
    }

    /// Modulator off: no tones, scattering is the identity.
    pub fn off() -> Self {
        Self::default()
    }

    pub fn single_tone(amplitude: f64, phase: f64) -> Result<Self, QfpError> {
        Self::new(vec![Harmonic { amplitude, phase }])
    }

    pub fn tone_count(&self) -> usize {
        self.harmonics.len()
    }

    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    pub fn is_off(&self) -> bool {
        self.harmonics.iter().all(|h| h.amplitude == 0.0)
    }

    /// Drive that produces the time-reversed waveform A(−θ): every tone phase
    /// maps to (2π − phase) mod 2π. Its scattering coefficients are the
    /// index-reversed coefficients of `self`.
    pub fn time_reversed(&self) -> Self {
        Self {
            harmonics: self
                .harmonics
                .iter()
                .map(|h| Harmonic {
                    amplitude: h.amplitude,
                    phase: wrap_angle(TAU - h.phase),
                })
                .collect(),
        }
    }

    /// Temporal phase A(θ) in radians at dimensionless time θ = Δω·t.
    pub fn phase_at(&self, theta: f64) -> f64 {
        self.harmonics
            .iter()
            .enumerate()
            .map(|(i, h)| h.amplitude * ((i + 1) as f64 * theta + h.phase).cos())
            .sum()
    }

    /// Upper bound Σ p·amplitude_p on |dA/dθ|, i.e. the maximum instantaneous
    /// frequency excursion in units of the bin spacing. Scattering amplitudes
    /// decay superexponentially beyond this radius.
    pub fn bandwidth_bound(&self) -> f64 {
        self.harmonics
            .iter()
            .enumerate()
            .map(|(i, h)| (i + 1) as f64 * h.amplitude)
            .sum()
    }
}
