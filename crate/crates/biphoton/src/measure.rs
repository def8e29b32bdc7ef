use ndarray::Array2;
use qfp_core::TransferMatrix;

use crate::error::BiphotonError;
use crate::state::BiphotonState;

/// Tolerance on total probability (table mass plus escape mass).
pub const DIST_SUM_TOL: f64 = 1e-9;

/// Joint outcome distribution of a bin-resolved coincidence measurement.
///
/// `probs[[m, n]]` is the probability of detecting the idler photon in bin
/// `m` and the signal photon in bin `n`; `escape_mass` is the probability
/// that at least one photon scattered outside the computational band (the
/// cascades are not unitary on that band when their success probability is
/// below one).
#[derive(Clone, Debug)]
pub struct JointDistribution {
    probs: Array2<f64>,
    escape_mass: f64,
}

impl JointDistribution {
    /// Wraps a probability table and its escape mass, enforcing
    /// non-negativity and unit total mass within [`DIST_SUM_TOL`].
    pub fn new(probs: Array2<f64>, escape_mass: f64) -> Result<Self, BiphotonError> {
        if probs.nrows() != probs.ncols() || probs.nrows() == 0 {
            return Err(BiphotonError::InvalidDistribution(format!(
                "probability table must be square and non-empty, got {}×{}",
                probs.nrows(),
                probs.ncols()
            )));
        }
        for &p in probs.iter() {
            if !p.is_finite() || p < 0.0 {
                return Err(BiphotonError::InvalidDistribution(format!(
                    "probabilities must be finite and non-negative, got {p}"
                )));
            }
        }
        if !escape_mass.is_finite() || escape_mass < 0.0 {
            return Err(BiphotonError::InvalidDistribution(format!(
                "escape mass must be finite and non-negative, got {escape_mass}"
            )));
        }
        let total: f64 = probs.iter().sum::<f64>() + escape_mass;
        if (total - 1.0).abs() > DIST_SUM_TOL {
            return Err(BiphotonError::InvalidDistribution(format!(
                "total mass {total} differs from 1 by more than {DIST_SUM_TOL}"
            )));
        }
        Ok(Self { probs, escape_mass })
    }

    /// Wraps a probability table, assigning all missing mass to escape.
    pub fn from_probs(probs: Array2<f64>) -> Result<Self, BiphotonError> {
        let table_mass: f64 = probs.iter().sum();
        Self::new(probs, (1.0 - table_mass).max(0.0))
    }

    /// Number of bins per photon.
    pub fn dim(&self) -> usize {
        self.probs.nrows()
    }

    /// Probability table, idler index first.
    pub fn probs(&self) -> &Array2<f64> {
        &self.probs
    }

    /// Probability of the idler-bin/signal-bin pair `(m, n)`.
    pub fn prob(&self, m: usize, n: usize) -> f64 {
        self.probs[[m, n]]
    }

    /// Probability that the photon pair left the computational band.
    pub fn escape_mass(&self) -> f64 {
        self.escape_mass
    }

    /// Probability mass retained inside the d×d outcome table.
    pub fn table_mass(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Outcome distribution of measuring `state` with gate `w_i` on the idler
/// arm and `w_s` on the signal arm, each followed by bin-resolved
/// detection: p(m, n) = |Σ_{k,l} (W_I)_{mk} (W_S)_{nl} ψ_{kl}|².
///
/// The gates need not be unitary; any probability they scatter outside the
/// computational band shows up as escape mass.
pub fn joint_distribution(
    state: &BiphotonState,
    w_i: &TransferMatrix,
    w_s: &TransferMatrix,
) -> Result<JointDistribution, BiphotonError> {
    let d = state.dim();
    if w_i.dim() != d {
        return Err(BiphotonError::DimensionMismatch {
            expected: d,
            got: w_i.dim(),
        });
    }
    if w_s.dim() != d {
        return Err(BiphotonError::DimensionMismatch {
            expected: d,
            got: w_s.dim(),
        });
    }
    // Amplitude of outcome (m, n): (W_I · Ψ · W_Sᵀ)_{mn}.
    let transformed = w_i
        .entries()
        .dot(state.amplitudes())
        .dot(&w_s.entries().t());
    let probs = transformed.mapv(|amp| amp.norm_sqr());
    // Tiny negative escape from rounding on unitary gates is flushed to 0
    // so the non-negativity invariant holds exactly.
    let table_mass: f64 = probs.iter().sum();
    JointDistribution::new(probs, (1.0 - table_mass).max(0.0))
}
