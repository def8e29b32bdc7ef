//! Reference evaluators used to cross-check the production code path.
//! Deliberately independent of the crate's FFT implementation: Bessel values
//! come from the power series, integrals from composite Simpson quadrature.
//!
//! Each integration-test target compiles its own copy, so not every helper
//! is used everywhere.
#![allow(dead_code)]

use num_complex::Complex64 as C64;
use qfp_core::RfDrive;

/// Bessel function of the first kind, integer order n ≥ 0, by power series.
/// Accurate to ~1e-13 for the |x| ≤ 10 range exercised in tests.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // Leading coefficient (x/2)^n / n!
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let mut acc = term;
    let mut k = 1.0;
    loop {
        term *= -(half * half) / (k * (k + n as f64));
        acc += term;
        if term.abs() < 1e-18 * acc.abs().max(1e-30) || k > 80.0 {
            break;
        }
        k += 1.0;
    }
    acc
}

/// Signed-order Bessel via J_{−n} = (−1)^n J_n.
pub fn bessel_j_signed(n: i64, x: f64) -> f64 {
    let v = bessel_j(n.unsigned_abs() as u32, x);
    if n < 0 && n % 2 != 0 {
        -v
    } else {
        v
    }
}

/// Fourier coefficient c_n = (1/2π)∫ e^{iA(θ)} e^{inθ} dθ by composite
/// Simpson quadrature with `intervals` subdivisions (must be even).
pub fn coefficient_by_quadrature(drive: &RfDrive, n: i64, intervals: usize) -> C64 {
    assert!(intervals % 2 == 0);
    let h = std::f64::consts::TAU / intervals as f64;
    let f = |theta: f64| -> C64 {
        let a = drive.phase_at(theta);
        let (sa, ca) = a.sin_cos();
        let (sn, cn) = (n as f64 * theta).sin_cos();
        C64::new(ca, sa) * C64::new(cn, sn)
    };
    let mut acc = f(0.0) + f(std::f64::consts::TAU);
    for j in 1..intervals {
        let weight = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(j as f64 * h) * weight;
    }
    acc * (h / 3.0) / std::f64::consts::TAU
}

#[allow(dead_code)]
pub fn max_entry_distance(a: &ndarray::Array2<C64>, b: &ndarray::Array2<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
