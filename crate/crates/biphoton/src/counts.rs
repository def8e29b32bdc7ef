use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::BiphotonError;
use crate::measure::JointDistribution;

/// Acquisition model for turning a joint distribution into detector counts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum DwellModel {
    /// Fixed-total coincidence acquisition: `total` events distributed over
    /// the d² outcomes, post-selected on both photons staying inside the
    /// computational band (escape mass is renormalized away).
    Multinomial { total: u64 },
    /// Raster-scanned acquisition: each outcome is watched for `dwell`
    /// seconds at pair flux `flux` (pairs/second), giving independent
    /// Poisson counts with mean `flux · dwell · p(m, n)`. Absolute rates
    /// are kept, so lossy gates reduce counts instead of being
    /// renormalized away.
    Poisson { flux: f64, dwell: f64 },
}

impl DwellModel {
    fn validate(&self) -> Result<(), BiphotonError> {
        match self {
            DwellModel::Multinomial { .. } => Ok(()),
            DwellModel::Poisson { flux, dwell } => {
                for (name, value) in [("flux", *flux), ("dwell", *dwell)] {
                    if !value.is_finite() || value < 0.0 {
                        return Err(BiphotonError::InvalidModel(format!(
                            "{name} must be finite and non-negative, got {value}"
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Integer coincidence counts per idler-bin/signal-bin pair, together with
/// the acquisition model that produced them.
#[derive(Clone, Debug)]
pub struct CountsTable {
    counts: Array2<u64>,
    model: DwellModel,
}

impl CountsTable {
    /// Wraps a count table, checking shape and (for fixed-total
    /// acquisition) that the counts actually sum to the advertised total.
    pub fn new(counts: Array2<u64>, model: DwellModel) -> Result<Self, BiphotonError> {
        if counts.nrows() != counts.ncols() || counts.nrows() == 0 {
            return Err(BiphotonError::MalformedTable(format!(
                "count table must be square and non-empty, got {}×{}",
                counts.nrows(),
                counts.ncols()
            )));
        }
        model.validate()?;
        if let DwellModel::Multinomial { total } = model {
            let sum: u64 = counts.iter().sum();
            if sum != total {
                return Err(BiphotonError::MalformedTable(format!(
                    "counts sum to {sum} but the fixed-total model says {total}"
                )));
            }
        }
        Ok(Self { counts, model })
    }

    /// Number of bins per photon.
    pub fn dim(&self) -> usize {
        self.counts.nrows()
    }

    /// Count table, idler index first.
    pub fn counts(&self) -> &Array2<u64> {
        &self.counts
    }

    /// Acquisition model the table was generated (or imported) under.
    pub fn model(&self) -> DwellModel {
        self.model
    }

    /// Total number of recorded events.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Draws a synthetic count table from `dist` under the given acquisition
/// model. Deterministic in `seed`: the generator is seeded explicitly and
/// cells are visited in row-major order.
pub fn sample_counts(
    dist: &JointDistribution,
    model: DwellModel,
    seed: u64,
) -> Result<CountsTable, BiphotonError> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = dist.dim();
    let mut counts = Array2::zeros((d, d));
    match model {
        DwellModel::Multinomial { total } => {
            let table_mass = dist.table_mass();
            if table_mass <= 0.0 {
                return Err(BiphotonError::EmptySupport(
                    "the distribution puts no probability inside the outcome table".into(),
                ));
            }
            // Conditional-binomial chain: cell i receives
            // Binomial(remaining, p_i / rest) events, where `rest` is the
            // mass not yet visited. Equivalent to one multinomial draw.
            // The last supported cell takes every remaining event outright
            // so rounding in `rest` can neither leak events nor push them
            // into zero-probability cells.
            let mut last_support = None;
            for (index, &p) in dist.probs().iter().enumerate() {
                if p > 0.0 {
                    last_support = Some(index);
                }
            }
            let last_support =
                last_support.expect("table mass is positive, so some cell has support");
            let mut remaining = total;
            let mut rest = table_mass;
            for (index, (cell, &p)) in counts.iter_mut().zip(dist.probs()).enumerate() {
                if p <= 0.0 {
                    continue;
                }
                if remaining == 0 {
                    break;
                }
                let drawn = if index == last_support {
                    remaining
                } else {
                    let ratio = (p / rest).clamp(0.0, 1.0);
                    Binomial::new(remaining, ratio)
                        .expect("ratio is clamped to [0, 1]")
                        .sample(&mut rng)
                };
                *cell = drawn;
                remaining -= drawn;
                rest -= p;
            }
        }
        DwellModel::Poisson { flux, dwell } => {
            for (cell, &p) in counts.iter_mut().zip(dist.probs()) {
                let mean = flux * dwell * p;
                if !mean.is_finite() {
                    return Err(BiphotonError::InvalidModel(format!(
                        "Poisson mean overflowed: flux {flux} × dwell {dwell} × p {p}"
                    )));
                }
                if mean > 0.0 {
                    let drawn: f64 = Poisson::new(mean)
                        .expect("mean is positive and finite")
                        .sample(&mut rng);
                    *cell = drawn as u64;
                }
            }
        }
    }
    CountsTable::new(counts, model)
}
