//! End-to-end behavior of the synthesis pipeline: determinism, mode
//! consistency, resource monotonicity, and the solution registry.

use approx::assert_abs_diff_eq;
use dft_synth::{
    bandwidth_sweep, pso_optimize, Evaluator, PsoSettings, SearchSpace, SolutionRecord, SynthError,
};

fn small_budget(seed: u64) -> PsoSettings {
    PsoSettings {
        swarm_size: 16,
        iterations: 60,
        restarts: 2,
        ..PsoSettings::with_seed(seed)
    }
}

/// The same master seed must reproduce the entire run bit for bit,
/// including per-restart traces — determinism is the reproducibility story
/// for every stored solution.
#[test]
fn same_seed_reproduces_the_run_bitwise() {
    let space = SearchSpace::new(2, 4, 1, false).unwrap();
    let settings = small_budget(42);
    let first = pso_optimize(&space, &settings).unwrap();
    let second = pso_optimize(&space, &settings).unwrap();

    assert_eq!(first.iterations_used, second.iterations_used);
    assert_eq!(first.best_position.len(), second.best_position.len());
    for (a, b) in first.best_position.iter().zip(&second.best_position) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
    assert_eq!(
        first.metrics.fidelity.to_bits(),
        second.metrics.fidelity.to_bits()
    );
    assert_eq!(
        first.metrics.success_prob.to_bits(),
        second.metrics.success_prob.to_bits()
    );
    assert_eq!(first.restarts.len(), second.restarts.len());
    for (ra, rb) in first.restarts.iter().zip(&second.restarts) {
        assert_eq!(ra.best_cost.to_bits(), rb.best_cost.to_bits());
        assert_eq!(ra.trace.len(), rb.trace.len());
        for (ta, tb) in ra.trace.iter().zip(&rb.trace) {
            assert_eq!(ta.to_bits(), tb.to_bits());
        }
    }
}

/// Different seeds must actually change the search.
#[test]
fn different_seeds_explore_differently() {
    let space = SearchSpace::new(2, 4, 1, false).unwrap();
    let first = pso_optimize(&space, &small_budget(1)).unwrap();
    let second = pso_optimize(&space, &small_budget(2)).unwrap();
    let identical = first
        .best_position
        .iter()
        .zip(&second.best_position)
        .all(|(a, b)| a.to_bits() == b.to_bits());
    assert!(!identical, "independent seeds landed on the same position");
}

/// A solution found in the symmetric (time-reversed output drive) mode must
/// evaluate to the same metrics when expanded into the general
/// two-independent-drives parameterization.
#[test]
fn symmetric_solutions_expand_to_general_mode() {
    let symmetric = SearchSpace::new(2, 8, 1, true).unwrap();
    let general = SearchSpace::new(2, 8, 1, false).unwrap();
    // An arbitrary in-range symmetric vector: 8 shaper phases + one tone.
    let params = vec![0.3, 1.1, 2.9, 4.0, 5.5, 0.2, 3.3, 1.7, 0.9, 2.2];
    assert_eq!(params.len(), symmetric.dof());

    let config = symmetric.decode(&params).unwrap();
    let expanded = general.encode(&config).unwrap();
    assert_eq!(expanded.len(), general.dof());

    let sym_metrics = Evaluator::new(symmetric)
        .unwrap()
        .metrics_of(&params)
        .unwrap();
    let gen_metrics = Evaluator::new(general)
        .unwrap()
        .metrics_of(&expanded)
        .unwrap();
    assert_abs_diff_eq!(sym_metrics.fidelity, gen_metrics.fidelity, epsilon = 1e-12);
    assert_abs_diff_eq!(
        sym_metrics.success_prob,
        gen_metrics.success_prob,
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(sym_metrics.cost, gen_metrics.cost, epsilon = 1e-12);
}

/// Widening the shaper band adds degrees of freedom, so at a fixed search
/// budget the achievable cost should not get worse. Compared over restart
/// medians with slack to absorb optimizer noise.
#[test]
fn wider_band_does_not_hurt_at_fixed_budget() {
    let settings = PsoSettings {
        swarm_size: 40,
        iterations: 400,
        restarts: 5,
        ..PsoSettings::with_seed(9)
    };
    let median_cost = |bandwidth: usize| -> f64 {
        let space = SearchSpace::new(2, bandwidth, 1, true).unwrap();
        let evaluator = Evaluator::new(space).unwrap();
        let result = pso_optimize(&space, &settings).unwrap();
        let mut costs: Vec<f64> = result
            .restarts
            .iter()
            .map(|restart| evaluator.cost_of(&restart.best_position))
            .collect();
        costs.sort_by(|a, b| a.total_cmp(b));
        costs[costs.len() / 2]
    };
    let narrow = median_cost(4);
    let wide = median_cost(8);
    assert!(
        wide <= narrow + 0.05 * narrow.abs(),
        "B = 8 median cost {wide} worse than B = 4 median cost {narrow}"
    );
}

/// A toy two-point sweep must keep the grid order, produce finite
/// non-positive costs, and pick its plateau start from the grid.
#[test]
fn sweep_reports_points_in_grid_order() {
    let settings = PsoSettings {
        swarm_size: 20,
        iterations: 150,
        restarts: 2,
        ..PsoSettings::with_seed(5)
    };
    let sweep = bandwidth_sweep(2, &[4, 8], &settings).unwrap();
    assert_eq!(sweep.dim, 2);
    assert_eq!(sweep.points.len(), 2);
    assert_eq!(sweep.points[0].bandwidth, 4);
    assert_eq!(sweep.points[1].bandwidth, 8);
    for point in &sweep.points {
        assert!(point.cost.is_finite() && point.cost <= 0.0);
        assert!((0.0..=1.0).contains(&point.fidelity));
        assert!((0.0..=1.0).contains(&point.success_prob));
    }
    assert!(sweep.min_bandwidth == 4 || sweep.min_bandwidth == 8);
}

/// Solutions survive the JSON registry bit for bit, and a stored file whose
/// claimed metrics disagree with its own configuration is rejected on load.
#[test]
fn registry_round_trips_and_rejects_tampering() {
    let space = SearchSpace::new(2, 4, 1, true).unwrap();
    let settings = PsoSettings {
        swarm_size: 16,
        iterations: 80,
        restarts: 1,
        ..PsoSettings::with_seed(7)
    };
    let result = pso_optimize(&space, &settings).unwrap();
    let record = SolutionRecord::from_result(&result);

    // JSON round-trip keeps every float exactly.
    let text = record.to_json().unwrap();
    let reparsed = SolutionRecord::from_json(&text).unwrap();
    assert_eq!(record.fidelity.to_bits(), reparsed.fidelity.to_bits());
    assert_eq!(
        record.success_prob.to_bits(),
        reparsed.success_prob.to_bits()
    );
    assert_eq!(record.cost.to_bits(), reparsed.cost.to_bits());
    assert_eq!(record.shaper_phases.len(), reparsed.shaper_phases.len());
    for (a, b) in record.shaper_phases.iter().zip(&reparsed.shaper_phases) {
        assert_eq!(a.to_bits(), b.to_bits());
    }

    // Disk round-trip re-validates the stored metrics against the stored
    // configuration.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("solution.json");
    record.save(&path).unwrap();
    let loaded = SolutionRecord::load(&path).unwrap();
    assert_eq!(loaded.fidelity.to_bits(), record.fidelity.to_bits());

    // Tamper with the claimed fidelity: load must fail self-validation.
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["fidelity"] = serde_json::json!(record.fidelity - 0.05);
    let tampered_path = dir.path().join("tampered.json");
    std::fs::write(&tampered_path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    match SolutionRecord::load(&tampered_path) {
        Err(SynthError::SelfValidation { field, .. }) => assert_eq!(field, "fidelity"),
        other => panic!("expected self-validation failure, got {other:?}"),
    }
}
