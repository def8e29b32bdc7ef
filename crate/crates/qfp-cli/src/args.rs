//! Command-line surface of the `qfp` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Frequency-bin photonic gate toolbox: synthesize Fourier gates from
/// modulator drives, simulate two-photon correlations, and certify
/// entanglement from the resulting count tables.
#[derive(Debug, Parser)]
#[command(name = "qfp", version, about, max_term_width = 100)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Master seed for all randomness; generated and recorded when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Directory for output artifacts (created if missing; default ".").
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// JSON config file supplying defaults for seed, out, and optimizer
    /// settings; explicit flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Searches modulator drives and shaper phases realizing the
    /// d-dimensional Fourier gate, then stores the best solution.
    Synth(SynthArgs),
    /// Re-runs the synthesis over a grid of shaper bandwidths and reports
    /// the smallest bandwidth reaching the cost plateau.
    Sweep(SweepArgs),
    /// Computes the joint detection distribution of an entangled photon
    /// pair after per-arm gates.
    Correlate(CorrelateArgs),
    /// Draws a synthetic coincidence-count table from a stored joint
    /// distribution.
    Counts(CountsArgs),
    /// Turns two-basis count tables into a posterior lower bound on
    /// distillable entanglement.
    Bound(BoundArgs),
}

/// Optimizer knobs shared by `synth` and `sweep`. Unset fields fall back to
/// the config file, then to the built-in defaults.
#[derive(Debug, Default, Args)]
pub struct PsoArgs {
    /// Particles per swarm restart.
    #[arg(long)]
    pub swarm_size: Option<usize>,

    /// Velocity/position updates per restart.
    #[arg(long)]
    pub iterations: Option<usize>,

    /// Inertia weight on the previous velocity.
    #[arg(long)]
    pub inertia: Option<f64>,

    /// Attraction toward each particle's personal best.
    #[arg(long)]
    pub cognitive: Option<f64>,

    /// Attraction toward the swarm's global best.
    #[arg(long)]
    pub social: Option<f64>,

    /// Per-coordinate speed limit as a fraction of the coordinate's range.
    #[arg(long)]
    pub velocity_clamp: Option<f64>,

    /// Independent swarm launches; the best result wins.
    #[arg(long)]
    pub restarts: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Gate dimension d.
    #[arg(long)]
    pub dim: usize,

    /// Shaper bandwidth B, in modes (default: per-dimension preset).
    #[arg(long)]
    pub bandwidth: Option<usize>,

    /// Harmonic tones per modulator drive (default: max(d - 1, 1)).
    #[arg(long)]
    pub harmonics: Option<usize>,

    /// Constrain the output modulator drive to the time reverse of the
    /// input one, halving the search dimension.
    #[arg(long)]
    pub symmetric: bool,

    /// Upper bound on drive tone amplitudes, radians (default: 4π).
    #[arg(long)]
    pub amp_max: Option<f64>,

    #[command(flatten)]
    pub pso: PsoArgs,

    /// Samples per modulation period in the emitted waveform table.
    #[arg(long, default_value_t = 512)]
    pub waveform_points: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Gate dimension d.
    #[arg(long)]
    pub dim: usize,

    /// Comma-separated shaper bandwidths to test, ascending (e.g. 4,8,12).
    #[arg(long, value_delimiter = ',', required = true, value_name = "B,B,...")]
    pub grid: Vec<usize>,

    #[command(flatten)]
    pub pso: PsoArgs,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Input biphoton state: maxent:<d> or phi:<radians> (d = 3 phase
    /// family).
    #[arg(long)]
    pub state: String,

    /// Idler-arm gate: ideal-dft:<d>, identity:<d>, or solution:<file>.
    #[arg(long)]
    pub gate_idler: String,

    /// Signal-arm gate: ideal-dft:<d>, identity:<d>, or solution:<file>.
    #[arg(long)]
    pub gate_signal: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// Fixed total number of post-selected coincidences.
    Multinomial,
    /// Independent per-outcome Poisson counts at an absolute rate.
    Poisson,
}

#[derive(Debug, Args)]
pub struct CountsArgs {
    /// Joint distribution CSV produced by `correlate`.
    #[arg(long, value_name = "FILE")]
    pub dist: PathBuf,

    /// Acquisition model.
    #[arg(long, value_enum)]
    pub model: ModelKind,

    /// Total detected events (multinomial model only).
    #[arg(long)]
    pub events: Option<u64>,

    /// Pair flux in events per unit time (poisson model only).
    #[arg(long)]
    pub flux: Option<f64>,

    /// Dwell time per outcome in the same units as --flux (poisson model
    /// only).
    #[arg(long)]
    pub dwell: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Counts CSV measured in the logical (identity) basis.
    #[arg(long, value_name = "FILE")]
    pub logical: PathBuf,

    /// Counts CSV measured in the Fourier basis.
    #[arg(long, value_name = "FILE")]
    pub dft: PathBuf,

    /// Posterior draws used for the mean and standard deviation.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parses_comma_separated_values() {
        let cli = Cli::try_parse_from(["qfp", "sweep", "--dim", "3", "--grid", "4,8,12"]).unwrap();
        match cli.command {
            Command::Sweep(args) => assert_eq!(args.grid, vec![4, 8, 12]),
            _ => panic!("parsed into the wrong subcommand"),
        }
    }

    #[test]
    fn global_flags_work_after_the_subcommand() {
        let cli = Cli::try_parse_from(["qfp", "synth", "--dim", "2", "--seed", "11", "--out", "x"])
            .unwrap();
        assert_eq!(cli.global.seed, Some(11));
        assert_eq!(cli.global.out.as_deref(), Some(std::path::Path::new("x")));
    }

    #[test]
    fn debug_asserts_hold_for_the_whole_command_tree() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
