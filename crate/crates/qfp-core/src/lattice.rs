use crate::error::QfpError;

/// Default number of simulated frequency bins. Wide enough that scattering
/// off the lattice edge is negligible for drives of practical strength.
pub const DEFAULT_LATTICE_MODES: usize = 64;

/// Finite window of equally spaced frequency bins, with a designated
/// computational band of `comp_dim` consecutive bins inside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeLattice {
    total_modes: usize,
    comp_dim: usize,
    comp_offset: usize,
}

impl ModeLattice {
    pub fn new(total_modes: usize, comp_dim: usize, comp_offset: usize) -> Result<Self, QfpError> {
        if comp_dim < 1 {
            return Err(QfpError::InvalidLattice(
                "computational dimension must be at least 1".into(),
            ));
        }
        if total_modes < comp_dim {
            return Err(QfpError::InvalidLattice(format!(
                "lattice of {total_modes} modes cannot hold a {comp_dim}-bin computational band"
            )));
        }
        if comp_offset + comp_dim > total_modes {
            return Err(QfpError::InvalidLattice(format!(
                "computational band [{comp_offset}, {}) exceeds the {total_modes}-mode lattice",
                comp_offset + comp_dim
            )));
        }
        Ok(Self {
            total_modes,
            comp_dim,
            comp_offset,
        })
    }

    /// Computational band centered in the default 64-mode lattice.
    pub fn centered(comp_dim: usize) -> Result<Self, QfpError> {
        Self::centered_in(DEFAULT_LATTICE_MODES, comp_dim)
    }

    /// Computational band centered in a lattice of `total_modes` bins,
    /// offset = ⌊(M − d)/2⌋.
    pub fn centered_in(total_modes: usize, comp_dim: usize) -> Result<Self, QfpError> {
        if comp_dim < 1 || total_modes < comp_dim {
            return Err(QfpError::InvalidLattice(format!(
                "cannot center a {comp_dim}-bin band in {total_modes} modes"
            )));
        }
        Self::new(total_modes, comp_dim, (total_modes - comp_dim) / 2)
    }

    pub fn total_modes(&self) -> usize {
        self.total_modes
    }

    pub fn comp_dim(&self) -> usize {
        self.comp_dim
    }

    pub fn comp_offset(&self) -> usize {
        self.comp_offset
    }

    pub fn comp_range(&self) -> std::ops::Range<usize> {
        self.comp_offset..self.comp_offset + self.comp_dim
    }
}
