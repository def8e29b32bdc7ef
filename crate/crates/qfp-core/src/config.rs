use crate::drive::RfDrive;
use crate::error::QfpError;
use crate::lattice::ModeLattice;
use crate::shaper::ShaperConfig;

/// Complete processor setting: modulator A, phase mask, modulator B, applied
/// in that order to a state on the mode lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct QfpConfig {
    drive_a: RfDrive,
    shaper: ShaperConfig,
    drive_b: RfDrive,
    lattice: ModeLattice,
}

impl QfpConfig {
    /// Geometry requirements: d ≤ B ≤ M, the shaped band inside the lattice,
    /// and the computational band inside the shaped band.
    pub fn new(
        drive_a: RfDrive,
        shaper: ShaperConfig,
        drive_b: RfDrive,
        lattice: ModeLattice,
    ) -> Result<Self, QfpError> {
        let d = lattice.comp_dim();
        let b = shaper.bandwidth();
        let m = lattice.total_modes();
        if b < d || b > m {
            return Err(QfpError::Geometry(format!(
                "bandwidth {b} outside [{d}, {m}]"
            )));
        }
        let lo = shaper.channel_offset();
        let hi = lo + b;
        if hi > m {
            return Err(QfpError::Geometry(format!(
                "shaped band [{lo}, {hi}) exceeds the {m}-mode lattice"
            )));
        }
        let range = lattice.comp_range();
        if range.start < lo || range.end > hi {
            return Err(QfpError::Geometry(format!(
                "computational band [{}, {}) not inside shaped band [{lo}, {hi})",
                range.start, range.end
            )));
        }
        Ok(Self {
            drive_a,
            shaper,
            drive_b,
            lattice,
        })
    }

    pub fn drive_a(&self) -> &RfDrive {
        &self.drive_a
    }

    pub fn shaper(&self) -> &ShaperConfig {
        &self.shaper
    }

    pub fn drive_b(&self) -> &RfDrive {
        &self.drive_b
    }

    pub fn lattice(&self) -> &ModeLattice {
        &self.lattice
    }
}
