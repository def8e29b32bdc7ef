//! `qfp` — frequency-bin photonic gate synthesis and entanglement
//! certification from the command line.
//!
//! Exit codes: 0 success, 2 validation error (bad flags, malformed files,
//! impossible requests), 3 numerical failure (a computation that started
//! but could not produce trustworthy numbers). Errors print a single JSON
//! record on stderr; artifacts and a replayable `run-record.json` land in
//! the output directory.

mod alias;
mod args;
mod commands;
mod config;
mod error;
mod record;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::config::Context;
use crate::error::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let ctx = Context::resolve(&cli.global)?;
    let started = Instant::now();
    let mut record = match &cli.command {
        Command::Synth(args) => commands::run_synth(args, &ctx)?,
        Command::Sweep(args) => commands::run_sweep(args, &ctx)?,
        Command::Correlate(args) => commands::run_correlate(args, &ctx)?,
        Command::Counts(args) => commands::run_counts(args, &ctx)?,
        Command::Bound(args) => commands::run_bound(args, &ctx)?,
    };
    record.wall_time_s = started.elapsed().as_secs_f64();
    let record_path = ctx.out_dir.join("run-record.json");
    record.save(&record_path)?;
    println!("run record: {}", record_path.display());
    Ok(())
}
