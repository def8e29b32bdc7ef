use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::QfpError;
use crate::transfer::{MatrixScope, TransferMatrix};

/// Fidelities are clamped to 1 − DEFAULT_FIDELITY_CLAMP inside the cost so a
/// perfect gate scores a finite floor instead of −∞.
pub const DEFAULT_FIDELITY_CLAMP: f64 = 1e-12;

/// Maximum entrywise deviation of T†T from the identity tolerated in a
/// comparison target.
pub const TARGET_UNITARITY_TOL: f64 = 1e-9;

/// Quality summary of a transfer matrix against a unitary target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateMetrics {
    /// Modal fidelity |Tr(W†T)|² / (d²·P), in [0, 1].
    pub fidelity: f64,
    /// Success probability P = Tr(W†W)/d, in [0, 1].
    pub success_prob: f64,
    /// success_prob · log₁₀(1 − fidelity), clamped; ≤ 0.
    pub cost: f64,
}

/// d-point discrete Fourier transform gate, entries d^{−1/2} e^{−2πi·mn/d}.
pub fn dft_matrix(d: usize) -> Result<TransferMatrix, QfpError> {
    if d < 1 {
        return Err(QfpError::InvalidDimension(
            "DFT dimension must be at least 1".into(),
        ));
    }
    let norm = 1.0 / (d as f64).sqrt();
    let mut f = Array2::zeros((d, d));
    for m in 0..d {
        for n in 0..d {
            // Reduce mn mod d before the trig call to keep the angle small.
            let mn = (m * n) % d;
            let angle = -std::f64::consts::TAU * mn as f64 / d as f64;
            let (s, c) = angle.sin_cos();
            f[(m, n)] = C64::new(norm * c, norm * s);
        }
    }
    TransferMatrix::from_entries(f, MatrixScope::Computational)
}

/// Aggregate cost: success_prob · log₁₀(1 − fidelity) with the fidelity
/// clamped at 1 − clamp. More negative is better; (F = 1, P = 1) scores
/// log₁₀(clamp).
pub fn clamped_cost(fidelity: f64, success_prob: f64, clamp: f64) -> f64 {
    let f = fidelity.min(1.0 - clamp);
    success_prob * (1.0 - f).log10()
}

/// Evaluates fidelity, success probability and cost of `w` against the
/// unitary `target`. Both matrices must share the same dimension.
pub fn gate_metrics(w: &TransferMatrix, target: &TransferMatrix) -> Result<GateMetrics, QfpError> {
    let d = w.dim();
    if target.dim() != d {
        return Err(QfpError::DimensionMismatch(format!(
            "transfer is {d}×{d} but target is {t}×{t}",
            t = target.dim()
        )));
    }

    let mut deviation = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..d {
                acc += target.entries()[(k, i)].conj() * target.entries()[(k, j)];
            }
            let expect = if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            deviation = deviation.max((acc - expect).norm());
        }
    }
    if deviation > TARGET_UNITARITY_TOL {
        return Err(QfpError::NonUnitaryTarget { deviation });
    }

    let power: f64 = w.entries().iter().map(|c| c.norm_sqr()).sum();
    let success = power / d as f64;
    if success == 0.0 {
        return Err(QfpError::DegenerateTransfer);
    }
    if success > 1.0 + 1e-9 {
        return Err(QfpError::NonPhysical(format!(
            "success probability {success} exceeds 1"
        )));
    }

    let mut tr = C64::new(0.0, 0.0);
    for m in 0..d {
        for n in 0..d {
            tr += w.entries()[(m, n)].conj() * target.entries()[(m, n)];
        }
    }
    let fidelity = (tr.norm_sqr() / (d as f64 * d as f64 * success)).clamp(0.0, 1.0);
    let success = success.clamp(0.0, 1.0);

    Ok(GateMetrics {
        fidelity,
        success_prob: success,
        cost: clamped_cost(fidelity, success, DEFAULT_FIDELITY_CLAMP),
    })
}

#[cfg(test)]
mod tests {
    // Index loops below mirror the (m, n) matrix notation.
    #![allow(clippy::needless_range_loop)]

    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::Array2;

    #[test]
    fn dft_small_cases_are_exact() {
        let f1 = dft_matrix(1).unwrap();
        assert!((f1.entries()[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);

        let f2 = dft_matrix(2).unwrap();
        let r = 1.0 / 2.0f64.sqrt();
        let expect = [[r, r], [r, -r]];
        for m in 0..2 {
            for n in 0..2 {
                assert!((f2.entries()[(m, n)] - C64::new(expect[m][n], 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn dft_rejects_zero_dimension() {
        assert!(dft_matrix(0).is_err());
    }

    #[test]
    fn perfect_gate_scores_the_clamp_floor() {
        let f3 = dft_matrix(3).unwrap();
        let m = gate_metrics(&f3, &f3).unwrap();
        assert_abs_diff_eq!(m.fidelity, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.success_prob, 1.0, epsilon = 1e-12);
        // The clamp difference 1 − (1 − 1e-12) carries float quantization at
        // the 1e-5 relative level.
        assert_abs_diff_eq!(m.cost, -12.0, epsilon = 1e-4);
    }

    #[test]
    fn uniform_attenuation_costs_success_only() {
        let f3 = dft_matrix(3).unwrap();
        let half = TransferMatrix::from_entries(
            f3.entries() * C64::new(0.5, 0.0),
            MatrixScope::Computational,
        )
        .unwrap();
        let m = gate_metrics(&half, &f3).unwrap();
        assert_abs_diff_eq!(m.fidelity, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.success_prob, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(m.cost, 0.25 * (1e-12f64).log10(), epsilon = 1e-4);
    }

    #[test]
    fn rejects_non_unitary_target() {
        let t = TransferMatrix::from_entries(
            Array2::from_elem((2, 2), C64::new(0.5, 0.0)),
            MatrixScope::Computational,
        )
        .unwrap();
        let w = TransferMatrix::identity(2).unwrap();
        assert!(matches!(
            gate_metrics(&w, &t),
            Err(QfpError::NonUnitaryTarget { .. })
        ));
    }

    #[test]
    fn rejects_zero_transfer() {
        let w = TransferMatrix::from_entries(
            Array2::from_elem((2, 2), C64::new(0.0, 0.0)),
            MatrixScope::Computational,
        )
        .unwrap();
        let f2 = dft_matrix(2).unwrap();
        assert!(matches!(
            gate_metrics(&w, &f2),
            Err(QfpError::DegenerateTransfer)
        ));
    }

    #[test]
    fn cost_clamp_is_monotone() {
        assert_abs_diff_eq!(clamped_cost(0.9, 1.0, 1e-12), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(clamped_cost(0.99, 0.5, 1e-12), -1.0, epsilon = 1e-12);
        assert!(clamped_cost(1.0, 1.0, 1e-12) <= clamped_cost(0.999999, 1.0, 1e-12));
    }
}
