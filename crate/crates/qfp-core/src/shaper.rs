use crate::drive::wrap_angle;
use crate::error::QfpError;
use crate::lattice::ModeLattice;

/// Line-by-line phase mask applied between the two modulators. Only
/// `phases.len()` consecutive lattice bins starting at `channel_offset` are
/// shaped; every bin outside that band gets phase 0 (ideal transmission).
#[derive(Clone, Debug, PartialEq)]
pub struct ShaperConfig {
    phases: Vec<f64>,
    channel_offset: usize,
}

impl ShaperConfig {
    /// Validates finiteness and wraps every phase to [0, 2π).
    pub fn new(phases: Vec<f64>, channel_offset: usize) -> Result<Self, QfpError> {
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(QfpError::InvalidShaper("non-finite shaper phase".into()));
        }
        Ok(Self {
            phases: phases.into_iter().map(wrap_angle).collect(),
            channel_offset,
        })
    }

    /// All-zero mask over `bandwidth` channels (no shaping).
    pub fn flat(bandwidth: usize, channel_offset: usize) -> Self {
        Self {
            phases: vec![0.0; bandwidth],
            channel_offset,
        }
    }

    /// Mask centered on the computational band:
    /// offset = comp_offset − ⌊(B − d)/2⌋.
    pub fn centered(phases: Vec<f64>, lattice: &ModeLattice) -> Result<Self, QfpError> {
        let b = phases.len();
        let d = lattice.comp_dim();
        if b < d {
            return Err(QfpError::InvalidShaper(format!(
                "bandwidth {b} smaller than the {d}-bin computational band"
            )));
        }
        let lead = (b - d) / 2;
        let offset = lattice.comp_offset().checked_sub(lead).ok_or_else(|| {
            QfpError::InvalidShaper(format!(
                "bandwidth {b} does not fit left of the computational band"
            ))
        })?;
        if offset + b > lattice.total_modes() {
            return Err(QfpError::InvalidShaper(format!(
                "shaped band [{offset}, {}) exceeds the {}-mode lattice",
                offset + b,
                lattice.total_modes()
            )));
        }
        Self::new(phases, offset)
    }

    pub fn flat_centered(bandwidth: usize, lattice: &ModeLattice) -> Result<Self, QfpError> {
        Self::centered(vec![0.0; bandwidth], lattice)
    }

    pub fn bandwidth(&self) -> usize {
        self.phases.len()
    }

    pub fn channel_offset(&self) -> usize {
        self.channel_offset
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Phase applied to a lattice bin; 0 outside the shaped band.
    pub fn phase_at(&self, mode: usize) -> f64 {
        if mode >= self.channel_offset && mode < self.channel_offset + self.phases.len() {
            self.phases[mode - self.channel_offset]
        } else {
            0.0
        }
    }
}
