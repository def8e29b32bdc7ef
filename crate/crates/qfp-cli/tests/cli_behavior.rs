//! Black-box tests of the `qfp` binary: exit codes, stderr error records,
//! artifact determinism, and seed recording.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qfp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary launches")
}

fn run_ok(dir: &Path, args: &[&str]) -> Output {
    let output = qfp(dir, args);
    assert_eq!(
        output.status.code(),
        Some(0),
        "command {args:?} failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr),
    );
    output
}

fn stderr_record(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stderr).unwrap_or_else(|_| {
        panic!(
            "stderr is not a JSON error record: {}",
            String::from_utf8_lossy(&output.stderr)
        )
    })
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).expect("file exists")).expect("valid JSON")
}

/// Small but real synthesis budget: enough to reach fidelity ≈ 1e-4 at
/// d = 2 in well under a second.
const TINY_SYNTH: &[&str] = &[
    "synth",
    "--dim",
    "2",
    "--symmetric",
    "--swarm-size",
    "16",
    "--iterations",
    "80",
    "--restarts",
    "1",
];

#[test]
fn pipeline_produces_artifacts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    let mut synth_args = TINY_SYNTH.to_vec();
    synth_args.extend(["--seed", "7", "--out", "gate"]);
    run_ok(root, &synth_args);
    for name in [
        "solution.json",
        "waveform.csv",
        "shaper-phases.csv",
        "run-record.json",
    ] {
        assert!(root.join("gate").join(name).is_file(), "missing {name}");
    }

    run_ok(
        root,
        &[
            "correlate",
            "--state",
            "maxent:2",
            "--gate-idler",
            "solution:gate/solution.json",
            "--gate-signal",
            "solution:gate/solution.json",
            "--out",
            "dft-basis",
        ],
    );
    run_ok(
        root,
        &[
            "correlate",
            "--state",
            "maxent:2",
            "--gate-idler",
            "identity:2",
            "--gate-signal",
            "identity:2",
            "--out",
            "logical-basis",
        ],
    );
    for basis in ["dft-basis", "logical-basis"] {
        run_ok(
            root,
            &[
                "counts",
                "--dist",
                &format!("{basis}/distribution.csv"),
                "--model",
                "multinomial",
                "--events",
                "4000",
                "--seed",
                "3",
                "--out",
                &format!("{basis}-counts"),
            ],
        );
    }
    run_ok(
        root,
        &[
            "bound",
            "--logical",
            "logical-basis-counts/counts.csv",
            "--dft",
            "dft-basis-counts/counts.csv",
            "--samples",
            "1024",
            "--seed",
            "11",
            "--out",
            "certificate",
        ],
    );

    let bound = read_json(&root.join("certificate/bound.json"));
    assert_eq!(bound["n_samples"], 1024);
    assert_eq!(bound["seed"], 11);
    let mean = bound["mean"].as_f64().unwrap();
    // A 1e-4-infidelity d = 2 gate certifies most of the available ebit.
    assert!(
        mean > 0.8 && mean <= 1.0 + 1e-9,
        "implausible certified bound {mean}"
    );

    let record = read_json(&root.join("certificate/run-record.json"));
    assert_eq!(record["command"], "bound");
    assert_eq!(record["schema_version"], 1);
    assert_eq!(record["seed"], 11);
    assert_eq!(record["params"]["samples"], 1024);
    assert_eq!(record["outputs"]["bound"], "bound.json");
}

#[test]
fn same_seed_reproduces_identical_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    for out in ["a", "b"] {
        let mut args = TINY_SYNTH.to_vec();
        args.extend(["--seed", "99", "--out", out]);
        run_ok(root, &args);
    }
    // Waveform and shaper tables are pure functions of the solution, so an
    // identical seed must reproduce them byte for byte.
    for name in ["waveform.csv", "shaper-phases.csv"] {
        assert_eq!(
            fs::read(root.join("a").join(name)).unwrap(),
            fs::read(root.join("b").join(name)).unwrap(),
            "{name} differs between identically seeded runs"
        );
    }
    // The solution file embeds its own wall time; everything else matches.
    let mut first = read_json(&root.join("a/solution.json"));
    let mut second = read_json(&root.join("b/solution.json"));
    for doc in [&mut first, &mut second] {
        doc.as_object_mut().unwrap().remove("wall_time_s");
    }
    assert_eq!(first, second);

    run_ok(
        root,
        &[
            "correlate",
            "--state",
            "phi:0.75",
            "--gate-idler",
            "ideal-dft:3",
            "--gate-signal",
            "ideal-dft:3",
            "--out",
            "dist",
        ],
    );
    for out in ["ca", "cb"] {
        run_ok(
            root,
            &[
                "counts",
                "--dist",
                "dist/distribution.csv",
                "--model",
                "poisson",
                "--flux",
                "2000",
                "--dwell",
                "0.5",
                "--seed",
                "5",
                "--out",
                out,
            ],
        );
    }
    assert_eq!(
        fs::read(root.join("ca/counts.csv")).unwrap(),
        fs::read(root.join("cb/counts.csv")).unwrap(),
        "identically seeded count draws differ"
    );
}

#[test]
fn omitted_seed_is_generated_recorded_and_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    run_ok(
        root,
        &[
            "correlate",
            "--state",
            "maxent:2",
            "--gate-idler",
            "ideal-dft:2",
            "--gate-signal",
            "ideal-dft:2",
            "--out",
            "dist",
        ],
    );
    // The correlate record carries no seed: the computation is deterministic.
    let correlate_record = read_json(&root.join("dist/run-record.json"));
    assert!(correlate_record["seed"].is_null());

    run_ok(
        root,
        &[
            "counts",
            "--dist",
            "dist/distribution.csv",
            "--model",
            "multinomial",
            "--events",
            "1000",
            "--out",
            "first",
        ],
    );
    let record = read_json(&root.join("first/run-record.json"));
    let seed = record["seed"].as_u64().expect("generated seed is recorded");

    run_ok(
        root,
        &[
            "counts",
            "--dist",
            "dist/distribution.csv",
            "--model",
            "multinomial",
            "--events",
            "1000",
            "--seed",
            &seed.to_string(),
            "--out",
            "replay",
        ],
    );
    assert_eq!(
        fs::read(root.join("first/counts.csv")).unwrap(),
        fs::read(root.join("replay/counts.csv")).unwrap(),
        "recorded seed does not reproduce the original draw"
    );
}

#[test]
fn validation_failures_exit_2_with_a_json_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    // Unknown gate alias.
    let output = qfp(
        root,
        &[
            "correlate",
            "--state",
            "maxent:2",
            "--gate-idler",
            "warp:2",
            "--gate-signal",
            "identity:2",
        ],
    );
    assert_eq!(output.status.code(), Some(2));
    let record = stderr_record(&output);
    assert_eq!(record["error"]["kind"], "validation");
    assert_eq!(record["error"]["exit_code"], 2);

    // Dimension without a preset bandwidth.
    let output = qfp(root, &["synth", "--dim", "77"]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_record(&output)["error"]["kind"], "validation");

    // Model/flag mismatch.
    let output = qfp(
        root,
        &[
            "counts",
            "--dist",
            "nowhere.csv",
            "--model",
            "multinomial",
            "--flux",
            "10",
        ],
    );
    assert_eq!(output.status.code(), Some(2));

    // Missing input file.
    let output = qfp(
        root,
        &["bound", "--logical", "no-such.csv", "--dft", "no-such.csv"],
    );
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_record(&output)["error"]["kind"], "validation");

    // Usage errors from the argument parser share the validation exit code.
    let output = qfp(root, &["synth"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn corrupted_solution_files_exit_3_as_numerical_failures() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    let mut args = TINY_SYNTH.to_vec();
    args.extend(["--seed", "7", "--out", "gate"]);
    run_ok(root, &args);

    let path = root.join("gate/solution.json");
    let mut doc = read_json(&path);
    let stored = doc["fidelity"].as_f64().unwrap();
    doc["fidelity"] = serde_json::json!(stored - 0.05);
    fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let output = qfp(
        root,
        &[
            "correlate",
            "--state",
            "maxent:2",
            "--gate-idler",
            "solution:gate/solution.json",
            "--gate-signal",
            "identity:2",
        ],
    );
    assert_eq!(output.status.code(), Some(3));
    let record = stderr_record(&output);
    assert_eq!(record["error"]["kind"], "numerical");
    assert_eq!(record["error"]["exit_code"], 3);
}

#[test]
fn config_file_supplies_defaults_and_explicit_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    fs::write(
        root.join("config.json"),
        r#"{
            "seed": 21,
            "pso": {"swarm-size": 16, "iterations": 60, "restarts": 1}
        }"#,
    )
    .unwrap();

    run_ok(
        root,
        &[
            "synth",
            "--dim",
            "2",
            "--symmetric",
            "--config",
            "config.json",
            "--out",
            "from-config",
        ],
    );
    let record = read_json(&root.join("from-config/run-record.json"));
    assert_eq!(record["seed"], 21);
    assert_eq!(record["params"]["swarm-size"], 16);
    assert_eq!(record["params"]["iterations"], 60);
    assert_eq!(record["params"]["restarts"], 1);

    run_ok(
        root,
        &[
            "synth",
            "--dim",
            "2",
            "--symmetric",
            "--config",
            "config.json",
            "--restarts",
            "2",
            "--seed",
            "34",
            "--out",
            "overridden",
        ],
    );
    let record = read_json(&root.join("overridden/run-record.json"));
    assert_eq!(record["seed"], 34);
    assert_eq!(record["params"]["swarm-size"], 16);
    assert_eq!(record["params"]["restarts"], 2);

    // Typos in the config are rejected rather than silently ignored.
    fs::write(root.join("bad.json"), r#"{"sede": 3}"#).unwrap();
    let output = qfp(
        root,
        &["synth", "--dim", "2", "--config", "bad.json", "--out", "x"],
    );
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn count_tables_respect_the_distribution_support() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    // Identity gates on both arms keep the anti-diagonal correlations of
    // the source, so counts may only land on the anti-diagonal.
    run_ok(
        root,
        &[
            "correlate",
            "--state",
            "maxent:2",
            "--gate-idler",
            "identity:2",
            "--gate-signal",
            "identity:2",
            "--out",
            "dist",
        ],
    );
    run_ok(
        root,
        &[
            "counts",
            "--dist",
            "dist/distribution.csv",
            "--model",
            "multinomial",
            "--events",
            "1000",
            "--seed",
            "17",
            "--out",
            "tally",
        ],
    );

    let text = fs::read_to_string(root.join("tally/counts.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s0,s1"));
    let row0: Vec<u64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    let row1: Vec<u64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(row0[0], 0, "diagonal cell should be empty");
    assert_eq!(row1[1], 0, "diagonal cell should be empty");
    assert_eq!(row0[1] + row1[0], 1000, "all events on the anti-diagonal");
}

#[test]
fn nested_output_directories_are_created() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    run_ok(
        root,
        &[
            "correlate",
            "--state",
            "maxent:2",
            "--gate-idler",
            "identity:2",
            "--gate-signal",
            "identity:2",
            "--out",
            "a/b/c",
        ],
    );
    assert!(root.join("a/b/c/distribution.csv").is_file());
    assert!(root.join("a/b/c/run-record.json").is_file());
}

#[test]
fn dimensions_without_a_preset_accept_an_explicit_bandwidth() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let output = qfp(
        root,
        &[
            "synth",
            "--dim",
            "11",
            "--bandwidth",
            "40",
            "--harmonics",
            "1",
            "--symmetric",
            "--swarm-size",
            "8",
            "--iterations",
            "5",
            "--restarts",
            "1",
            "--seed",
            "1",
            "--out",
            "big",
        ],
    );
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let record = read_json(&root.join("big/run-record.json"));
    assert_eq!(record["params"]["bandwidth"], 40);
}
