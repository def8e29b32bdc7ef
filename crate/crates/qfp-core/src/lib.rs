//! Frequency-bin processor core: a cascade of two electro-optic phase
//! modulators around a line-by-line phase mask, acting on a finite lattice of
//! equally spaced frequency bins.
//!
//! The crate models the cascade's modal transfer matrix. Each modulator,
//! driven by a periodic RF waveform A(θ), scatters bin n to bin m with the
//! Fourier coefficient c_{m−n} of e^{iA(θ)}; the mask multiplies each bin by
//! a programmable phase. Assembling the product over a finite lattice and
//! scoring the computational block against a unitary target (fidelity,
//! success probability, aggregate cost) is the basis for gate synthesis in
//! the companion crates.

mod coefficients;
mod config;
mod drive;
mod error;
mod lattice;
mod metrics;
mod shaper;
mod transfer;

pub use coefficients::{
    adaptive_samples, eom_coefficients, eom_coefficients_with, EomCoefficients, SamplingSettings,
    DEFAULT_COEFF_SAMPLES, DEFAULT_TRUNCATION_TOL,
};
pub use config::QfpConfig;
pub use drive::{Harmonic, RfDrive};
pub use error::QfpError;
pub use lattice::{ModeLattice, DEFAULT_LATTICE_MODES};
pub use metrics::{
    clamped_cost, dft_matrix, gate_metrics, GateMetrics, DEFAULT_FIDELITY_CLAMP,
    TARGET_UNITARITY_TOL,
};
pub use shaper::ShaperConfig;
pub use transfer::{
    assemble_transfer, assemble_transfer_full, assemble_transfer_full_with, assemble_transfer_with,
    MatrixScope, TransferMatrix,
};
