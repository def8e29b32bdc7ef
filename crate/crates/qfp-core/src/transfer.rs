use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::coefficients::{eom_coefficients_with, SamplingSettings};
use crate::config::QfpConfig;
use crate::error::QfpError;
use crate::lattice::ModeLattice;

/// Whether a matrix covers the whole lattice or just the computational band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixScope {
    Computational,
    FullLattice,
}

/// Modal transfer matrix W: output amplitude on bin m for unit input on
/// bin n. Not unitary in general; column norms can fall below 1 when power
/// scatters outside the represented window.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    entries: Array2<C64>,
    scope: MatrixScope,
}

impl TransferMatrix {
    pub fn from_entries(entries: Array2<C64>, scope: MatrixScope) -> Result<Self, QfpError> {
        if entries.nrows() != entries.ncols() {
            return Err(QfpError::DimensionMismatch(format!(
                "transfer matrix must be square, got {}×{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.nrows() == 0 {
            return Err(QfpError::InvalidDimension(
                "transfer matrix must be at least 1×1".into(),
            ));
        }
        if entries
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(QfpError::NonFinite("transfer matrix entry".into()));
        }
        Ok(Self { entries, scope })
    }

    pub fn identity(dim: usize) -> Result<Self, QfpError> {
        if dim == 0 {
            return Err(QfpError::InvalidDimension(
                "identity needs dimension ≥ 1".into(),
            ));
        }
        Ok(Self {
            entries: Array2::eye(dim),
            scope: MatrixScope::Computational,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn scope(&self) -> MatrixScope {
        self.scope
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    /// ℓ² norm of each column: survival amplitude of each input bin within
    /// the represented window. Bounded by 1 up to truncation noise.
    pub fn column_norms(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|n| {
                self.entries
                    .column(n)
                    .iter()
                    .map(|c| c.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    /// Restriction of a full-lattice matrix to the computational band.
    pub fn computational_block(&self, lattice: &ModeLattice) -> Result<TransferMatrix, QfpError> {
        if self.scope != MatrixScope::FullLattice {
            return Err(QfpError::DimensionMismatch(
                "computational_block expects a full-lattice matrix".into(),
            ));
        }
        if self.dim() != lattice.total_modes() {
            return Err(QfpError::DimensionMismatch(format!(
                "matrix dimension {} does not match lattice size {}",
                self.dim(),
                lattice.total_modes()
            )));
        }
        let r = lattice.comp_range();
        let block = self.entries.slice(ndarray::s![r.clone(), r]).to_owned();
        TransferMatrix::from_entries(block, MatrixScope::Computational)
    }
}

/// Shared assembly context: per-EOM coefficients and the shaper phasors.
struct Parts {
    ca: crate::coefficients::EomCoefficients,
    cb: crate::coefficients::EomCoefficients,
    phasors: Vec<C64>,
}

fn parts(config: &QfpConfig, settings: &SamplingSettings) -> Result<Parts, QfpError> {
    // Keeping coefficients out to the full lattice width covers every index
    // the mode sum below can request; the truncation gate inside
    // eom_coefficients_with then bounds the power lost beyond the lattice.
    let hw = config.lattice().total_modes();
    let ca = eom_coefficients_with(config.drive_a(), hw, settings)?;
    let cb = eom_coefficients_with(config.drive_b(), hw, settings)?;
    let phasors = (0..config.lattice().total_modes())
        .map(|k| {
            let (s, c) = config.shaper().phase_at(k).sin_cos();
            C64::new(c, s)
        })
        .collect();
    Ok(Parts { ca, cb, phasors })
}

/// W_mn = Σ_k cb_{m−k} · e^{iφ_k} · ca_{k−n}, the mode sum running over the
/// whole lattice, restricted to the computational band. Default sampling.
pub fn assemble_transfer(config: &QfpConfig) -> Result<TransferMatrix, QfpError> {
    assemble_transfer_with(config, &SamplingSettings::default())
}

pub fn assemble_transfer_with(
    config: &QfpConfig,
    settings: &SamplingSettings,
) -> Result<TransferMatrix, QfpError> {
    let p = parts(config, settings)?;
    let range = config.lattice().comp_range();
    let d = config.lattice().comp_dim();
    let m_total = config.lattice().total_modes();

    let mut w = Array2::zeros((d, d));
    for (mi, m) in range.clone().enumerate() {
        for (ni, x) in range.clone().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..m_total {
                let b = p.cb.get(m as i64 - k as i64);
                if b == C64::new(0.0, 0.0) {
                    continue;
                }
                acc += b * p.phasors[k] * p.ca.get(k as i64 - x as i64);
            }
            w[(mi, ni)] = acc;
        }
    }
    TransferMatrix::from_entries(w, MatrixScope::Computational)
}

/// Full M×M transfer matrix over the lattice. Default sampling.
pub fn assemble_transfer_full(config: &QfpConfig) -> Result<TransferMatrix, QfpError> {
    assemble_transfer_full_with(config, &SamplingSettings::default())
}

pub fn assemble_transfer_full_with(
    config: &QfpConfig,
    settings: &SamplingSettings,
) -> Result<TransferMatrix, QfpError> {
    let p = parts(config, settings)?;
    let m_total = config.lattice().total_modes();

    let mut w = Array2::zeros((m_total, m_total));
    for m in 0..m_total {
        for x in 0..m_total {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..m_total {
                let b = p.cb.get(m as i64 - k as i64);
                if b == C64::new(0.0, 0.0) {
                    continue;
                }
                acc += b * p.phasors[k] * p.ca.get(k as i64 - x as i64);
            }
            w[(m, x)] = acc;
        }
    }
    TransferMatrix::from_entries(w, MatrixScope::FullLattice)
}
