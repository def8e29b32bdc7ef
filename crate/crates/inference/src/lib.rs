//! Entanglement quantification from two-basis coincidence data.
//!
//! Two complementary measures of the photon pair's entanglement:
//!
//! - a Bayesian **lower** bound on distillable entanglement from logical-
//!   and Fourier-basis coincidence counts ([`entropic_bound_posterior`]),
//!   via conditional entropies under a flat-prior Dirichlet posterior;
//! - the **upper**-bounding log-negativity of a supplied density matrix
//!   ([`log_negativity`]), plus the overlap with the ideal qutrit phase
//!   states ([`state_fidelity`]).
//!
//! All sampling is deterministic in an explicit seed and independent of
//! thread count.

mod density;
mod error;
mod posterior;
mod prob;

pub use density::{
    log_negativity, state_fidelity, DensityMatrix, EIGENVALUE_FLOOR, HERMITICITY_TOL, TRACE_TOL,
};
pub use error::InferenceError;
pub use posterior::{entropic_bound_posterior, PosteriorSummary, DEFAULT_POSTERIOR_SAMPLES};
pub use prob::{conditional_entropy, ProbabilityVector, SIMPLEX_TOL};
