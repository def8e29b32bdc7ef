use biphoton::{CountsTable, JointDistribution};

use crate::error::InferenceError;

/// Tolerance on simplex membership (sum of entries vs 1).
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Flattened joint probability distribution over a d×d outcome grid.
///
/// Entry `k·d + l` is the probability of idler bin `k` with signal bin `l`
/// — row-major in the idler index, matching the layout
/// (p₀₀, p₀₁, …, p₍d−1₎₍d−1₎).
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    values: Vec<f64>,
    dim: usize,
}

impl ProbabilityVector {
    /// Wraps a flattened d×d table, enforcing shape, non-negativity, and
    /// unit sum within [`SIMPLEX_TOL`].
    pub fn new(values: Vec<f64>, dim: usize) -> Result<Self, InferenceError> {
        if dim == 0 {
            return Err(InferenceError::InvalidProbability(
                "outcome grid must be at least 1×1".into(),
            ));
        }
        if values.len() != dim * dim {
            return Err(InferenceError::DimensionMismatch {
                expected: dim * dim,
                got: values.len(),
            });
        }
        for &value in &values {
            if !value.is_finite() || value < 0.0 {
                return Err(InferenceError::InvalidProbability(format!(
                    "entries must be finite and non-negative, got {value}"
                )));
            }
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(InferenceError::InvalidProbability(format!(
                "entries sum to {total}, not 1 within {SIMPLEX_TOL}"
            )));
        }
        Ok(Self { values, dim })
    }

    /// Empirical frequencies of a count table.
    pub fn from_counts(table: &CountsTable) -> Result<Self, InferenceError> {
        let total = table.total();
        if total == 0 {
            return Err(InferenceError::InvalidProbability(
                "cannot normalize an all-zero count table".into(),
            ));
        }
        let values = table
            .counts()
            .iter()
            .map(|&count| count as f64 / total as f64)
            .collect();
        Self::new_renormalized(values, table.dim())
    }

    /// The outcome-table part of a joint distribution, renormalized to
    /// exclude escape mass (post-selected on coincidences).
    pub fn from_distribution(dist: &JointDistribution) -> Result<Self, InferenceError> {
        let mass = dist.table_mass();
        if mass <= 0.0 {
            return Err(InferenceError::InvalidProbability(
                "distribution has no mass inside the outcome table".into(),
            ));
        }
        let values = dist.probs().iter().map(|&p| p / mass).collect();
        Self::new_renormalized(values, dist.dim())
    }

    /// Wraps values that are normalized up to float rounding, rescaling by
    /// their exact sum so the simplex invariant holds.
    fn new_renormalized(mut values: Vec<f64>, dim: usize) -> Result<Self, InferenceError> {
        let total: f64 = values.iter().sum();
        if total > 0.0 {
            for value in &mut values {
                *value /= total;
            }
        }
        Self::new(values, dim)
    }

    /// Number of bins per photon.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flattened probabilities, idler-major.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// p(idler = k, signal = l).
    pub fn prob(&self, k: usize, l: usize) -> f64 {
        self.values[k * self.dim + l]
    }
}

/// Shannon entropy −Σ x log₂ x in bits, with 0·log 0 = 0.
fn entropy_bits(values: impl Iterator<Item = f64>) -> f64 {
    values.filter(|&x| x > 0.0).map(|x| -x * x.log2()).sum()
}

/// Conditional entropy H(A|B) = H(AB) − H(B) in bits, where A is the idler
/// outcome and B the signal outcome (conditioning on the signal marginal).
pub fn conditional_entropy(p: &ProbabilityVector) -> f64 {
    let d = p.dim();
    let joint = entropy_bits(p.values().iter().copied());
    let signal_marginal = (0..d).map(|l| (0..d).map(|k| p.prob(k, l)).sum::<f64>());
    joint - entropy_bits(signal_marginal)
}
