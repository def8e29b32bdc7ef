use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::BiphotonError;

/// Tolerance on the squared norm of a state's amplitude table.
pub const STATE_NORM_TOL: f64 = 1e-12;

/// Pure two-photon state over a d×d grid of frequency-bin pairs.
///
/// `amplitudes[[k, l]]` is the amplitude for the idler photon in bin `k`
/// and the signal photon in bin `l`. The table is held normalized:
/// Σ|ψ_{kl}|² = 1 within [`STATE_NORM_TOL`].
#[derive(Clone, Debug)]
pub struct BiphotonState {
    amplitudes: Array2<C64>,
}

impl BiphotonState {
    /// Wraps an amplitude table, enforcing shape, finiteness, and norm.
    pub fn new(amplitudes: Array2<C64>) -> Result<Self, BiphotonError> {
        if amplitudes.nrows() != amplitudes.ncols() {
            return Err(BiphotonError::InvalidState(format!(
                "amplitude table must be square, got {}×{}",
                amplitudes.nrows(),
                amplitudes.ncols()
            )));
        }
        if amplitudes.nrows() == 0 {
            return Err(BiphotonError::InvalidState(
                "amplitude table must be at least 1×1".into(),
            ));
        }
        if amplitudes
            .iter()
            .any(|amp| !amp.re.is_finite() || !amp.im.is_finite())
        {
            return Err(BiphotonError::InvalidState(
                "amplitude table contains a non-finite entry".into(),
            ));
        }
        let norm_sq: f64 = amplitudes.iter().map(|amp| amp.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > STATE_NORM_TOL {
            return Err(BiphotonError::InvalidState(format!(
                "squared norm {norm_sq} differs from 1 by more than {STATE_NORM_TOL}"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Number of frequency bins per photon.
    pub fn dim(&self) -> usize {
        self.amplitudes.nrows()
    }

    /// Amplitude table, idler index first.
    pub fn amplitudes(&self) -> &Array2<C64> {
        &self.amplitudes
    }

    /// The state with per-bin phases applied locally to each photon:
    /// ψ_{kl} → e^{iα_k} e^{iβ_l} ψ_{kl}.
    ///
    /// Local phases are unobservable in bin-resolved coincidence
    /// measurements without a basis change; this exists to let tests and
    /// callers exercise exactly that covariance.
    pub fn with_local_phases(&self, idler: &[f64], signal: &[f64]) -> Result<Self, BiphotonError> {
        let d = self.dim();
        if idler.len() != d {
            return Err(BiphotonError::DimensionMismatch {
                expected: d,
                got: idler.len(),
            });
        }
        if signal.len() != d {
            return Err(BiphotonError::DimensionMismatch {
                expected: d,
                got: signal.len(),
            });
        }
        let mut amplitudes = self.amplitudes.clone();
        for ((k, l), amp) in amplitudes.indexed_iter_mut() {
            *amp *= C64::from_polar(1.0, idler[k] + signal[l]);
        }
        Self::new(amplitudes)
    }
}

/// The uniform-phase maximally entangled state on `d` bins per photon:
/// ψ_{k, d−1−k} = d^{−1/2} on the anti-diagonal (energy-matched bin
/// pairs), zero elsewhere.
pub fn maximally_entangled(d: usize) -> Result<BiphotonState, BiphotonError> {
    if d == 0 {
        return Err(BiphotonError::InvalidState(
            "maximally entangled state needs d ≥ 1".into(),
        ));
    }
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut amplitudes = Array2::zeros((d, d));
    for k in 0..d {
        amplitudes[[k, d - 1 - k]] = amp;
    }
    BiphotonState::new(amplitudes)
}

/// The qutrit phase family: amplitudes 3^{−1/2}·(1, e^{iφ}, e^{2iφ}) on
/// the anti-diagonal pairs (idler, signal) = (0,2), (1,1), (2,0).
pub fn prepare_phi_state(phi: f64) -> BiphotonState {
    let scale = 1.0 / 3.0_f64.sqrt();
    let mut amplitudes = Array2::zeros((3, 3));
    for k in 0..3 {
        amplitudes[[k, 2 - k]] = C64::from_polar(scale, phi * k as f64);
    }
    BiphotonState::new(amplitudes).expect("three equal-modulus amplitudes are normalized")
}
