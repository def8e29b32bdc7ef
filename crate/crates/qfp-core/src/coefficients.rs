use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::drive::RfDrive;
use crate::error::QfpError;

/// Default number of uniform samples per modulation period.
pub const DEFAULT_COEFF_SAMPLES: usize = 4096;

/// Default ceiling on the scattering power allowed to fall outside the kept
/// coefficient window.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-10;

/// Knobs for the period-sampling evaluation of scattering coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingSettings {
    /// Uniform samples per period (also the DFT length).
    pub samples: usize,
    /// Maximum admissible truncation residual.
    pub truncation_tol: f64,
}

impl Default for SamplingSettings {
    fn default() -> Self {
        Self {
            samples: DEFAULT_COEFF_SAMPLES,
            truncation_tol: DEFAULT_TRUNCATION_TOL,
        }
    }
}

/// Fourier coefficients c_n of e^{iA(θ)} over one period, indexed
/// n = −half_width..=half_width. The drive scatters input bin n to output
/// bin m with amplitude c_{m−n}; a unit-modulus waveform makes the full
/// sequence satisfy Σ|c_n|² = 1.
#[derive(Clone, Debug)]
pub struct EomCoefficients {
    values: Vec<C64>,
    half_width: usize,
    truncation_residual: f64,
}

impl EomCoefficients {
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Coefficient at signed index n; zero outside the kept window.
    pub fn get(&self, n: i64) -> C64 {
        let hw = self.half_width as i64;
        if n < -hw || n > hw {
            C64::new(0.0, 0.0)
        } else {
            self.values[(n + hw) as usize]
        }
    }

    /// Kept coefficients in index order −half_width..=half_width.
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Σ|c_n|² over the kept window.
    pub fn total_power(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Scattering power outside the kept window, measured on the full DFT.
    pub fn truncation_residual(&self) -> f64 {
        self.truncation_residual
    }
}

/// Per-resolution sampling grid: one shared cos/sin table serves every
/// harmonic through index striding, plus the DFT plan for that length.
struct Grid {
    cos: Vec<f64>,
    sin: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
}

fn grid(samples: usize) -> Arc<Grid> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Grid>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(g) = cache.read().expect("grid cache poisoned").get(&samples) {
        return Arc::clone(g);
    }
    let mut cos = Vec::with_capacity(samples);
    let mut sin = Vec::with_capacity(samples);
    for j in 0..samples {
        let (s, c) = (TAU * j as f64 / samples as f64).sin_cos();
        cos.push(c);
        sin.push(s);
    }
    let fft = FftPlanner::new().plan_fft_inverse(samples);
    let g = Arc::new(Grid { cos, sin, fft });
    Arc::clone(
        cache
            .write()
            .expect("grid cache poisoned")
            .entry(samples)
            .or_insert(g),
    )
}

/// Smallest power-of-two sample count that keeps aliasing in the kept window
/// below ~1e-12 for this drive: twice the instantaneous-frequency bound plus
/// an Airy-tail guard, clamped to [256, DEFAULT_COEFF_SAMPLES]. Useful when
/// coefficients are evaluated in bulk; the result never differs from the
/// default resolution beyond float noise.
pub fn adaptive_samples(drive: &RfDrive) -> usize {
    let s = drive.bandwidth_bound();
    let needed = 2.0 * (1.02 * s + 6.0 * s.cbrt() + 80.0);
    let mut n = 256usize;
    while (n as f64) < needed && n < DEFAULT_COEFF_SAMPLES {
        n *= 2;
    }
    n
}

/// Scattering coefficients with the default sampling settings.
pub fn eom_coefficients(drive: &RfDrive, half_width: usize) -> Result<EomCoefficients, QfpError> {
    eom_coefficients_with(drive, half_width, &SamplingSettings::default())
}

/// Coefficients c_n = (1/N) Σ_j e^{iA(θ_j)} e^{+i n θ_j} over θ_j = 2πj/N,
/// kept for |n| ≤ half_width. Fails if the scattering power outside the kept
/// window exceeds `settings.truncation_tol`.
pub fn eom_coefficients_with(
    drive: &RfDrive,
    half_width: usize,
    settings: &SamplingSettings,
) -> Result<EomCoefficients, QfpError> {
    let n = settings.samples;
    if n < 2 * half_width + 2 {
        return Err(QfpError::InvalidSampling(format!(
            "{n} samples cannot resolve half-width {half_width}"
        )));
    }
    if !settings.truncation_tol.is_finite() || settings.truncation_tol <= 0.0 {
        return Err(QfpError::InvalidSampling(
            "truncation tolerance must be positive and finite".into(),
        ));
    }

    let g = grid(n);

    thread_local! {
        static WORK: RefCell<(Vec<C64>, Vec<C64>)> = const { RefCell::new((Vec::new(), Vec::new())) };
    }

    thread_local! {
        static WAVE: RefCell<Vec<f64>> = const { RefCell::new(Vec::new()) };
    }

    WORK.with(|work| {
        let (signal, scratch) = &mut *work.borrow_mut();
        signal.clear();
        signal.resize(n, C64::new(1.0, 0.0));

        if !drive.is_off() {
            WAVE.with(|wave| {
                let a = &mut *wave.borrow_mut();
                a.clear();
                a.resize(n, 0.0);
                for (i, h) in drive.harmonics().iter().enumerate() {
                    // cos(pθ_j + γ) expanded so one shared table serves every
                    // harmonic via stride p = i + 1.
                    let (sg, cg) = h.phase.sin_cos();
                    let (kc, ks) = (h.amplitude * cg, h.amplitude * sg);
                    let stride = (i + 1) % n;
                    let mut idx = 0usize;
                    for slot in a.iter_mut() {
                        *slot += kc * g.cos[idx] - ks * g.sin[idx];
                        idx += stride;
                        if idx >= n {
                            idx -= n;
                        }
                    }
                }
                for (z, &aj) in signal.iter_mut().zip(a.iter()) {
                    let (s, c) = aj.sin_cos();
                    *z = C64::new(c, s);
                }
            });
        }

        scratch.resize(g.fft.get_inplace_scratch_len(), C64::new(0.0, 0.0));
        g.fft.process_with_scratch(signal, scratch);

        let scale = 1.0 / n as f64;
        let total: f64 = signal.iter().map(|c| c.norm_sqr()).sum::<f64>() * scale * scale;

        let mut values = Vec::with_capacity(2 * half_width + 1);
        let mut kept = 0.0;
        for off in -(half_width as i64)..=half_width as i64 {
            let bin = off.rem_euclid(n as i64) as usize;
            let c = signal[bin] * scale;
            kept += c.norm_sqr();
            values.push(c);
        }

        let residual = (total - kept).max(0.0);
        if residual > settings.truncation_tol {
            return Err(QfpError::TruncationLoss {
                residual,
                tolerance: settings.truncation_tol,
                half_width,
            });
        }

        Ok(EomCoefficients {
            values,
            half_width,
            truncation_residual: residual,
        })
    })
}
