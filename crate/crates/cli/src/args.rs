use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "aztec", version, about = "Gamma-disordered Aztec diamond sampler and verifier")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample matchings by domino shuffling and record turning points.
    Sample(SampleArgs),
    /// Draw a matching, or the symmetric difference of two, as SVG.
    Render(RenderArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Sample stationary polymer midpoints or random-walk endpoints.
    Polymer(PolymerArgs),
    /// Free-energy formulas, optionally with Monte Carlo replicas.
    FreeEnergy(FreeEnergyArgs),
    /// Shuffle-independence probe and its lognormal negative control.
    Characterize(CharacterizeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Master seed; replica r uses stream (seed, r).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = all cores). Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Run directory; replaced only if it holds a previous run.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Weights {
    #[arg(long, conflicts_with = "params", allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, conflicts_with = "params", allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Parameter set as inline JSON or a path to a JSON file.
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub weights: Weights,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub replicas: usize,
    /// Add the vertical slice sets to each row.
    #[arg(long)]
    pub slices: bool,
    /// Skip the per-replica matching files.
    #[arg(long)]
    pub no_dumps: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Matching files (text format); two with --double-dimer.
    #[arg(long = "input")]
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub weights: Weights,
    /// Size of a freshly sampled matching when no input is given.
    #[arg(long)]
    pub n: Option<usize>,
    /// Overlay two matchings and draw only their symmetric difference.
    #[arg(long)]
    pub double_dimer: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Named suite.
    #[arg(long, required_unless_present = "config")]
    pub suite: Option<String>,
    /// Suite config JSON (test ids, sizes, replicas, seed).
    #[arg(long, conflicts_with = "suite")]
    pub config: Option<PathBuf>,
    /// Overrides the suite's Monte Carlo sample size.
    #[arg(long)]
    pub replicas: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    StatLoggamma,
    StatStrictweak,
    BetaRwre,
}

#[derive(Debug, Args)]
pub struct PolymerArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long, conflicts_with = "sizes")]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// Independent environments per size.
    #[arg(long, default_value_t = 10_000)]
    pub envs: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct FreeEnergyArgs {
    #[command(flatten)]
    pub weights: Weights,
    #[arg(long, conflicts_with = "sizes")]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// Temperatures; comma separated.
    #[arg(long = "T", value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    pub temps: Vec<f64>,
    /// Monte Carlo replicas; 0 evaluates the formulas only.
    #[arg(long, default_value_t = 0)]
    pub replicas: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Control {
    /// Gamma preservation only.
    None,
    /// Lognormal negative control only.
    Lognormal,
    Both,
}

#[derive(Debug, Args)]
pub struct CharacterizeArgs {
    #[arg(long, value_enum, default_value_t = Control::Both)]
    pub control: Control,
    #[arg(long, default_value_t = 100_000)]
    pub replicas: usize,
    #[command(flatten)]
    pub common: Common,
}
