use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use purify_core::Dimension;

#[derive(Debug, Parser)]
#[command(name = "purify", version, about = "Swap-test purification experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Root seed for every random stream.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for trial loops (default: all cores). Does not change results.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate (i, delta_i, p_i) for one or more dimensions.
    Recurrence(RecurrenceArgs),
    /// Level counts and sample-complexity estimates for one setting.
    Bounds(BoundsArgs),
    /// Outer boundary of the region where one gadget improves both inputs.
    Region(RegionArgs),
    /// Monte Carlo runs of the stack machine.
    Simulate(SimulateArgs),
    /// Check the closed-form gadget against dense density matrices.
    Verify(VerifyArgs),
    /// Simon's problem with a depolarizing oracle.
    Simon(SimonArgs),
    /// Mixedness testing of depolarized states.
    Mixedness(MixednessArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct RecurrenceArgs {
    /// Comma-separated dimensions; `inf` for the infinite-dimensional limit.
    #[arg(long = "dim", value_delimiter = ',', default_value = "20,50,100,inf")]
    pub dims: Vec<Dimension>,
    #[arg(long, default_value_t = 0.99)]
    pub delta0: f64,
    #[arg(long, default_value_t = 60)]
    pub iters: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long = "dim", default_value = "2")]
    pub dim: Dimension,
    #[arg(long, default_value_t = 0.9)]
    pub delta0: f64,
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct RegionArgs {
    #[arg(long = "dim", value_delimiter = ',', default_value = "2,3,6,1000000")]
    pub dims: Vec<Dimension>,
    /// The delta1 grid is i/resolution for 0 < i < resolution.
    #[arg(long, default_value_t = 200)]
    pub resolution: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long = "dim", default_value = "2")]
    pub dim: Dimension,
    #[arg(long, default_value_t = 0.3)]
    pub delta0: f64,
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    #[arg(long, default_value_t = 100_000)]
    pub runs: u64,
    /// Also write one CSV row per run to this file.
    #[arg(long)]
    pub per_run: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long = "dim", default_value = "2")]
    pub dim: Dimension,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SimonArgs {
    /// Comma-separated numbers of input bits.
    #[arg(long = "m", value_delimiter = ',', default_value = "2,3,4,5")]
    pub m: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    /// Target error after purification (default 1/(10m)).
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    /// Purified samples allowed per trial.
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MixednessCase {
    Mixed,
    Far,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct MixednessArgs {
    #[arg(long = "dim", default_value = "2")]
    pub dim: Dimension,
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    #[arg(long = "case", value_enum, default_value_t = MixednessCase::Both)]
    pub case: MixednessCase,
    /// Error parameter of the far class.
    #[arg(long, default_value_t = 0.5)]
    pub far_delta: f64,
    #[arg(long, default_value_t = 20)]
    pub reps: u64,
    #[arg(long, default_value_t = 400)]
    pub trials: u64,
    #[arg(long, default_value_t = 0.875)]
    pub tau: f64,
}
