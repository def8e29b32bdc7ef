use biphoton::BiphotonState;
use nalgebra::{Complex, DMatrix};
use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::InferenceError;
use crate::prob::SIMPLEX_TOL;

/// Tolerance on Hermiticity (ρ vs ρ†, entrywise).
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Tolerance on unit trace.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative admissible eigenvalue (rounding slack on positivity).
pub const EIGENVALUE_FLOOR: f64 = -1e-9;

/// Mixed state of the photon pair on the d·d-dimensional bipartite space,
/// basis-ordered idler-major: composite index k·d + l for idler bin k and
/// signal bin l.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    rho: Array2<C64>,
    dim: usize,
}

impl DensityMatrix {
    /// Wraps a d²×d² table, enforcing Hermiticity within
    /// [`HERMITICITY_TOL`], unit trace within [`TRACE_TOL`], and
    /// eigenvalues above [`EIGENVALUE_FLOOR`].
    pub fn new(rho: Array2<C64>, dim: usize) -> Result<Self, InferenceError> {
        let n = dim * dim;
        if dim == 0 {
            return Err(InferenceError::InvalidDensity(
                "bipartite space needs d ≥ 1".into(),
            ));
        }
        if rho.nrows() != n || rho.ncols() != n {
            return Err(InferenceError::DimensionMismatch {
                expected: n,
                got: rho.nrows().max(rho.ncols()),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let gap = (rho[[i, j]] - rho[[j, i]].conj()).norm();
                if !gap.is_finite() || gap > HERMITICITY_TOL {
                    return Err(InferenceError::InvalidDensity(format!(
                        "not Hermitian at ({i}, {j}): asymmetry {gap}"
                    )));
                }
            }
        }
        let trace: C64 = (0..n).map(|i| rho[[i, i]]).sum();
        if (trace - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(InferenceError::InvalidDensity(format!(
                "trace {trace} differs from 1 beyond {TRACE_TOL}"
            )));
        }
        let min_eig = hermitian_eigenvalues(&rho)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < EIGENVALUE_FLOOR {
            return Err(InferenceError::InvalidDensity(format!(
                "negative eigenvalue {min_eig} below the {EIGENVALUE_FLOOR} floor"
            )));
        }
        Ok(Self { rho, dim })
    }

    /// The projector |ψ⟩⟨ψ| of a pure two-photon state.
    pub fn pure(state: &BiphotonState) -> Self {
        let d = state.dim();
        let n = d * d;
        let flat: Vec<C64> = state.amplitudes().iter().copied().collect();
        let rho = Array2::from_shape_fn((n, n), |(i, j)| flat[i] * flat[j].conj());
        Self::new(rho, d).expect("a normalized pure state projects to a valid density matrix")
    }

    /// The maximally mixed state 1/d² on the bipartite space.
    pub fn maximally_mixed(dim: usize) -> Result<Self, InferenceError> {
        if dim == 0 {
            return Err(InferenceError::InvalidDensity(
                "bipartite space needs d ≥ 1".into(),
            ));
        }
        let n = dim * dim;
        let rho = Array2::eye(n).mapv(|x: f64| C64::new(x / n as f64, 0.0));
        Self::new(rho, dim)
    }

    /// A convex mixture Σ wᵢ ρᵢ of states on the same space.
    pub fn mixture(components: &[(f64, DensityMatrix)]) -> Result<Self, InferenceError> {
        let Some((_, first)) = components.first() else {
            return Err(InferenceError::InvalidDensity(
                "mixture needs at least one component".into(),
            ));
        };
        let dim = first.dim;
        let n = dim * dim;
        let weight_sum: f64 = components.iter().map(|(w, _)| w).sum();
        if (weight_sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(InferenceError::InvalidDensity(format!(
                "mixture weights sum to {weight_sum}, not 1"
            )));
        }
        let mut rho = Array2::zeros((n, n));
        for (weight, component) in components {
            if component.dim != dim {
                return Err(InferenceError::DimensionMismatch {
                    expected: dim,
                    got: component.dim,
                });
            }
            if *weight < 0.0 {
                return Err(InferenceError::InvalidDensity(format!(
                    "negative mixture weight {weight}"
                )));
            }
            rho = rho + component.rho.mapv(|x| x * *weight);
        }
        Self::new(rho, dim)
    }

    /// Number of bins per photon.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The matrix itself, idler-major composite indices.
    pub fn entries(&self) -> &Array2<C64> {
        &self.rho
    }
}

/// Real eigenvalues of a Hermitian complex matrix.
fn hermitian_eigenvalues(matrix: &Array2<C64>) -> Vec<f64> {
    let n = matrix.nrows();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let z = matrix[[i, j]];
        Complex::new(z.re, z.im)
    });
    m.symmetric_eigen().eigenvalues.iter().copied().collect()
}

/// Log-negativity E_N = log₂‖ρ^{T_I}‖₁: the base-2 log of the trace norm
/// of the partial transpose over the idler subsystem. Zero for states with
/// positive partial transpose (all separable states); log₂d for the
/// maximally entangled state.
///
/// The partial transpose is Hermitian, so its trace norm is the sum of
/// absolute eigenvalues. Rounding can leave the sum a hair under 1 for
/// separable states; the result is clamped to the E_N ≥ 0 range.
pub fn log_negativity(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let entries = rho.entries();
    // (ρ^{T_I})[(k,l),(k',l')] = ρ[(k',l),(k,l')]
    let transposed = Array2::from_shape_fn((d * d, d * d), |(row, col)| {
        let (k, l) = (row / d, row % d);
        let (kp, lp) = (col / d, col % d);
        entries[[kp * d + l, k * d + lp]]
    });
    let trace_norm: f64 = hermitian_eigenvalues(&transposed)
        .into_iter()
        .map(f64::abs)
        .sum();
    trace_norm.log2().max(0.0)
}

/// Overlap ⟨φ|ρ|φ⟩ with the qutrit phase state |φ⟩ of angle `phi`
/// (see `biphoton::prepare_phi_state`). Requires a 3×3-bin space.
pub fn state_fidelity(rho: &DensityMatrix, phi: f64) -> Result<f64, InferenceError> {
    if rho.dim() != 3 {
        return Err(InferenceError::DimensionMismatch {
            expected: 3,
            got: rho.dim(),
        });
    }
    let state = biphoton::prepare_phi_state(phi);
    let flat: Vec<C64> = state.amplitudes().iter().copied().collect();
    let n = flat.len();
    let mut overlap = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            overlap += flat[i].conj() * rho.entries()[[i, j]] * flat[j];
        }
    }
    Ok(overlap.re)
}
