//! Two-photon frequency-bin simulation: entangled input states measured
//! through a gate cascade on each photon, yielding joint outcome
//! distributions and synthetic coincidence-count records.
//!
//! The pipeline is `BiphotonState` → [`joint_distribution`] (with one
//! transfer matrix per photon, unitary or not) → [`sample_counts`] under a
//! fixed-total or raster-scan acquisition model → CSV interchange via
//! [`io`]. Everything is pure; sampling takes an explicit seed.

mod counts;
mod error;
pub mod io;
mod measure;
mod state;

pub use counts::{sample_counts, CountsTable, DwellModel};
pub use error::BiphotonError;
pub use measure::{joint_distribution, JointDistribution, DIST_SUM_TOL};
pub use state::{maximally_entangled, prepare_phi_state, BiphotonState, STATE_NORM_TOL};
