//! Particle-swarm minimizer over mixed periodic/bounded coordinates.
//!
//! The swarm uses the standard constriction coefficients (inertia 0.729,
//! cognitive and social weights 1.49445), synchronous global-best updates,
//! and absorbing box boundaries. Periodic coordinates wrap and attraction
//! terms take the shortest arc, so phase parameters never see an artificial
//! boundary at 0/2π.
//!
//! Runs are deterministic for a fixed seed regardless of thread count:
//! every particle of every restart draws from its own counter-derived RNG
//! stream, candidate evaluations are collected in index order, and all
//! reductions (personal bests, global best, best restart) are sequential
//! with exact comparisons. Cost ties break toward the lexicographically
//! smaller position vector so "first best wins" never depends on scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::SynthError;
use crate::space::Coordinate;

/// Knobs for the swarm optimizer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsoSettings {
    /// Particles per restart.
    pub swarm_size: usize,
    /// Velocity/position updates per restart.
    pub iterations: usize,
    /// Inertia weight on the previous velocity.
    pub inertia: f64,
    /// Attraction toward each particle's personal best.
    pub cognitive: f64,
    /// Attraction toward the swarm's global best.
    pub social: f64,
    /// Per-coordinate speed limit as a fraction of the coordinate's range.
    pub velocity_clamp: f64,
    /// Independent swarm launches; the best result wins.
    pub restarts: usize,
    /// Master seed; all randomness derives from it.
    pub seed: u64,
}

impl Default for PsoSettings {
    fn default() -> Self {
        Self {
            swarm_size: 100,
            iterations: 2000,
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            velocity_clamp: 0.2,
            restarts: 8,
            seed: 0,
        }
    }
}

impl PsoSettings {
    /// Default settings with the given master seed.
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), SynthError> {
        if self.swarm_size < 2 {
            return Err(SynthError::InvalidSettings(
                "swarm needs at least two particles".into(),
            ));
        }
        if self.iterations == 0 || self.restarts == 0 {
            return Err(SynthError::InvalidSettings(
                "iterations and restarts must be positive".into(),
            ));
        }
        for (name, value) in [
            ("inertia", self.inertia),
            ("cognitive", self.cognitive),
            ("social", self.social),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(SynthError::InvalidSettings(format!(
                    "{name} must be finite and non-negative, got {value}"
                )));
            }
        }
        if !(self.velocity_clamp > 0.0 && self.velocity_clamp <= 1.0) {
            return Err(SynthError::InvalidSettings(format!(
                "velocity clamp must lie in (0, 1], got {}",
                self.velocity_clamp
            )));
        }
        Ok(())
    }
}

/// Outcome of one independent swarm launch.
#[derive(Clone, Debug)]
pub struct RestartOutcome {
    /// Best objective value the restart reached.
    pub best_cost: f64,
    /// Position achieving `best_cost`.
    pub best_position: Vec<f64>,
    /// Global-best cost after each iteration (length = iterations).
    pub trace: Vec<f64>,
}

/// Combined outcome across all restarts.
#[derive(Clone, Debug)]
pub struct PsoOutcome {
    /// Best objective value found.
    pub best_cost: f64,
    /// Position achieving `best_cost`.
    pub best_position: Vec<f64>,
    /// Iterations actually executed per restart.
    pub iterations_used: usize,
    /// Per-restart results, in restart order.
    pub restarts: Vec<RestartOutcome>,
}

/// Minimizes `objective` over the box/torus described by `coords`.
///
/// The objective must be pure (same input, same output) for determinism and
/// is called from worker threads; it must never return NaN — use large
/// finite penalties for infeasible inputs.
pub fn minimize<F>(
    coords: &[Coordinate],
    objective: F,
    settings: &PsoSettings,
) -> Result<PsoOutcome, SynthError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    settings.validate()?;
    if coords.is_empty() {
        return Err(SynthError::InvalidSettings(
            "search space has no coordinates".into(),
        ));
    }
    for coord in coords {
        if let Coordinate::Bounded { lo, hi } = coord {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(SynthError::InvalidSettings(format!(
                    "bounded coordinate needs finite lo < hi, got [{lo}, {hi}]"
                )));
            }
        }
    }

    let restarts: Vec<RestartOutcome> = (0..settings.restarts)
        .map(|r| run_restart(coords, &objective, settings, r as u64))
        .collect();

    let mut best = 0usize;
    for i in 1..restarts.len() {
        if improves(
            restarts[i].best_cost,
            &restarts[i].best_position,
            restarts[best].best_cost,
            &restarts[best].best_position,
        ) {
            best = i;
        }
    }
    Ok(PsoOutcome {
        best_cost: restarts[best].best_cost,
        best_position: restarts[best].best_position.clone(),
        iterations_used: settings.iterations,
        restarts,
    })
}

struct Particle {
    position: Vec<f64>,
    velocity: Vec<f64>,
    best_position: Vec<f64>,
    best_cost: f64,
    rng: ChaCha8Rng,
}

fn run_restart<F>(
    coords: &[Coordinate],
    objective: &F,
    settings: &PsoSettings,
    restart: u64,
) -> RestartOutcome
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let vmax: Vec<f64> = coords
        .iter()
        .map(|c| settings.velocity_clamp * c.range())
        .collect();

    let mut particles: Vec<Particle> = (0..settings.swarm_size)
        .map(|p| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(settings.seed, restart, p as u64));
            let position: Vec<f64> = coords
                .iter()
                .map(|c| match *c {
                    Coordinate::Periodic => rng.random_range(0.0..TAU),
                    Coordinate::Bounded { lo, hi } => rng.random_range(lo..hi),
                })
                .collect();
            let velocity: Vec<f64> = vmax.iter().map(|&v| rng.random_range(-v..v)).collect();
            Particle {
                best_position: position.clone(),
                position,
                velocity,
                best_cost: f64::INFINITY,
                rng,
            }
        })
        .collect();

    let mut global_best = vec![0.0; coords.len()];
    let mut global_cost = f64::INFINITY;
    let mut trace = Vec::with_capacity(settings.iterations);

    for _ in 0..settings.iterations {
        // Evaluate in parallel, reduce sequentially in particle order.
        let costs: Vec<f64> = particles
            .par_iter()
            .map(|particle| objective(&particle.position))
            .collect();
        for (particle, &cost) in particles.iter_mut().zip(&costs) {
            debug_assert!(!cost.is_nan(), "objective returned NaN");
            if improves(
                cost,
                &particle.position,
                particle.best_cost,
                &particle.best_position,
            ) {
                particle.best_cost = cost;
                particle.best_position.clone_from(&particle.position);
            }
        }
        for particle in &particles {
            if improves(
                particle.best_cost,
                &particle.best_position,
                global_cost,
                &global_best,
            ) {
                global_cost = particle.best_cost;
                global_best.clone_from(&particle.best_position);
            }
        }
        trace.push(global_cost);

        let inertia = settings.inertia;
        let cognitive = settings.cognitive;
        let social = settings.social;
        let global = &global_best;
        particles.par_iter_mut().for_each(|particle| {
            for i in 0..coords.len() {
                let r1: f64 = particle.rng.random_range(0.0..1.0);
                let r2: f64 = particle.rng.random_range(0.0..1.0);
                let to_best =
                    displacement(particle.position[i], particle.best_position[i], coords[i]);
                let to_global = displacement(particle.position[i], global[i], coords[i]);
                let mut v = inertia * particle.velocity[i]
                    + cognitive * r1 * to_best
                    + social * r2 * to_global;
                v = v.clamp(-vmax[i], vmax[i]);
                let mut x = particle.position[i] + v;
                match coords[i] {
                    Coordinate::Periodic => x = x.rem_euclid(TAU),
                    Coordinate::Bounded { lo, hi } => {
                        if x < lo {
                            x = lo;
                            v = 0.0;
                        } else if x > hi {
                            x = hi;
                            v = 0.0;
                        }
                    }
                }
                particle.velocity[i] = v;
                particle.position[i] = x;
            }
        });
    }

    RestartOutcome {
        best_cost: global_cost,
        best_position: global_best,
        trace,
    }
}

/// Shortest displacement from `from` toward `to` respecting the coordinate's
/// topology: straight-line for bounded coordinates, shortest arc in (−π, π]
/// for periodic ones.
fn displacement(from: f64, to: f64, coord: Coordinate) -> f64 {
    match coord {
        Coordinate::Bounded { .. } => to - from,
        Coordinate::Periodic => {
            let mut delta = (to - from).rem_euclid(TAU);
            if delta > PI {
                delta -= TAU;
            }
            delta
        }
    }
}

/// Strict improvement test with a deterministic tie-break: equal costs fall
/// back to lexicographic comparison of positions.
fn improves(cost: f64, position: &[f64], incumbent_cost: f64, incumbent_position: &[f64]) -> bool {
    if cost < incumbent_cost {
        return true;
    }
    if cost > incumbent_cost {
        return false;
    }
    position < incumbent_position
}

/// Counter-derived seed stream: splitmix64 over (master, restart, particle).
/// Distinct indices give statistically independent ChaCha streams while
/// keeping the whole run reproducible from the single master seed.
fn derive_seed(master: u64, restart: u64, particle: u64) -> u64 {
    splitmix64(splitmix64(master.wrapping_add(splitmix64(restart))).wrapping_add(particle))
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
