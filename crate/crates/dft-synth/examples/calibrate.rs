//! Scratch calibration harness: objective throughput and optimizer quality
//! at various budgets. Not part of the test suite.

use std::time::Instant;

use dft_synth::{pso_optimize, Evaluator, PsoSettings, SearchSpace};
use rand::Rng;
use rand::SeedableRng;

fn throughput(dim: usize, bandwidth: usize, harmonics: usize, symmetric: bool) {
    let space = SearchSpace::new(dim, bandwidth, harmonics, symmetric).unwrap();
    let evaluator = Evaluator::new(space).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let coords = space.coordinates();
    let vectors: Vec<Vec<f64>> = (0..1000)
        .map(|_| {
            coords
                .iter()
                .map(|c| match *c {
                    dft_synth::Coordinate::Periodic => rng.random_range(0.0..std::f64::consts::TAU),
                    dft_synth::Coordinate::Bounded { lo, hi } => rng.random_range(lo..hi),
                })
                .collect()
        })
        .collect();
    let t = Instant::now();
    let mut acc = 0.0;
    for v in &vectors {
        acc += evaluator.cost_of(v);
    }
    let dt = t.elapsed().as_secs_f64();
    println!(
        "d={dim} B={bandwidth} P={harmonics} sym={symmetric}: {:.1} us/eval (acc {acc:.3})",
        dt / 1000.0 * 1e6
    );
}

fn run(dim: usize, bandwidth: usize, harmonics: usize, symmetric: bool, settings: PsoSettings) {
    let space = SearchSpace::new(dim, bandwidth, harmonics, symmetric).unwrap();
    let t = Instant::now();
    let r = pso_optimize(&space, &settings).unwrap();
    println!(
        "d={dim} B={bandwidth} P={harmonics} sym={symmetric} swarm={} iters={} restarts={} seed={}: \
         F={:.6} P={:.4} cost={:.4} in {:.1}s",
        settings.swarm_size,
        settings.iterations,
        settings.restarts,
        settings.seed,
        r.metrics.fidelity,
        r.metrics.success_prob,
        r.metrics.cost,
        t.elapsed().as_secs_f64()
    );
    let mut costs: Vec<f64> = r.restarts.iter().map(|x| x.best_cost).collect();
    costs.sort_by(f64::total_cmp);
    println!("  restart costs: {costs:.3?}");
    let amps: Vec<f64> = r
        .config
        .drive_a()
        .harmonics()
        .iter()
        .map(|h| h.amplitude)
        .collect();
    let amps_b: Vec<f64> = r
        .config
        .drive_b()
        .harmonics()
        .iter()
        .map(|h| h.amplitude)
        .collect();
    println!("  eom1 amps {amps:.3?}  eom2 amps {amps_b:.3?}");
    println!("  shaper phases {:.3?}", r.config.shaper().phases());
}

// Maximize success probability subject to a fidelity floor.
fn frontier(
    dim: usize,
    bandwidth: usize,
    harmonics: usize,
    symmetric: bool,
    floor: f64,
    settings: PsoSettings,
) {
    let space = SearchSpace::new(dim, bandwidth, harmonics, symmetric).unwrap();
    let evaluator = Evaluator::new(space).unwrap();
    let score = |v: &[f64]| match evaluator.metrics_of(v) {
        Ok(m) => {
            if m.fidelity < floor {
                1.0 + (floor - m.fidelity)
            } else {
                -m.success_prob
            }
        }
        Err(_) => 2e3,
    };
    let t = Instant::now();
    let out = dft_synth::minimize(&space.coordinates(), score, &settings).unwrap();
    let m = evaluator.metrics_of(&out.best_position).unwrap();
    println!(
        "frontier d={dim} B={bandwidth} P={harmonics} sym={symmetric} floor={floor:e}: \
         F={:.14} P={:.6} in {:.1}s",
        m.fidelity,
        m.success_prob,
        t.elapsed().as_secs_f64()
    );
    let mut bests: Vec<f64> = out.restarts.iter().map(|r| -r.best_cost).collect();
    bests.sort_by(f64::total_cmp);
    println!("  restart P values: {bests:.4?}");
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.first().map(String::as_str) {
        Some("throughput") => {
            throughput(2, 8, 1, false);
            throughput(3, 12, 2, false);
            throughput(3, 12, 2, true);
            throughput(4, 16, 3, false);
            throughput(5, 20, 4, false);
            throughput(10, 36, 9, false);
        }
        Some("run") => {
            // run d B P sym swarm iters restarts seed
            let u = |i: usize| args[i].parse::<usize>().unwrap();
            let settings = PsoSettings {
                swarm_size: u(5),
                iterations: u(6),
                restarts: u(7),
                seed: args[8].parse().unwrap(),
                ..PsoSettings::default()
            };
            run(u(1), u(2), u(3), args[4] == "sym", settings);
        }
        Some("frontier") => {
            // frontier d B P sym floor swarm iters restarts seed
            let u = |i: usize| args[i].parse::<usize>().unwrap();
            let settings = PsoSettings {
                swarm_size: u(6),
                iterations: u(7),
                restarts: u(8),
                seed: args[9].parse().unwrap(),
                ..PsoSettings::default()
            };
            frontier(
                u(1),
                u(2),
                u(3),
                args[4] == "sym",
                args[5].parse().unwrap(),
                settings,
            );
        }
        Some("sweep") => {
            // sweep d seed
            let d: usize = args[1].parse().unwrap();
            let seed: u64 = args[2].parse().unwrap();
            let grid: Vec<usize> = (1..=6).map(|i| 4 * i).collect();
            let t = Instant::now();
            let r = dft_synth::bandwidth_sweep(d, &grid, &PsoSettings::with_seed(seed)).unwrap();
            println!(
                "sweep d={d} seed={seed}: min_bandwidth={} in {:.0}s",
                r.min_bandwidth,
                t.elapsed().as_secs_f64()
            );
            for p in &r.points {
                println!(
                    "  B={:<3} cost={:+.5} F={:.6} P={:.4}",
                    p.bandwidth, p.cost, p.fidelity, p.success_prob
                );
            }
        }
        Some("bound") => {
            // bound d seed
            let d: usize = args[1].parse().unwrap();
            let seed: u64 = args[2].parse().unwrap();
            let t = Instant::now();
            let c = dft_synth::single_eom_bound_check(d, &PsoSettings::with_seed(seed)).unwrap();
            println!(
                "bound d={d}: F={:.6} P={:.6} cap={:.6} margin={:+.2e} in {:.0}s",
                c.achieved_fidelity,
                c.achieved_success,
                c.analytic_bound,
                c.analytic_bound - c.achieved_success,
                t.elapsed().as_secs_f64()
            );
        }
        _ => eprintln!(
            "usage: calibrate throughput | run d B P sym|gen swarm iters restarts seed | sweep d seed | bound d seed"
        ),
    }
}
