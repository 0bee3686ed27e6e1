//! Command-line surface. Parsed arguments are turned into a
//! [`RunConfig`](crate::RunConfig) before anything runs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "rpr", version, about = "Finite searches for (Ramsey) partition regularity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an equation with the syntactic criteria.
    Decide(DecideArgs),
    /// Find a block-monochromatic solution under a coloring.
    Witness(WitnessArgs),
    /// Least N at which every r-coloring of [1..N] contains a solution.
    Force(ForceArgs),
    /// An r-coloring of [1..N] without solutions.
    Avoid(ForceArgs),
    /// Largest finite Ramsey set under one or more colorings.
    #[command(name = "ramsey-h")]
    RamseyH(RamseyArgs),
    /// Search a descriptor family for a coloring separating f(a,b) from g(a,b).
    Separate(SeparateArgs),
    /// Run a verification corpus.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Node limit per search.
    #[arg(long, env = "RPR_BUDGET")]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[arg(long)]
    pub equation: String,
    /// pr, ramsey or ramsey-separate.
    #[arg(long, default_value = "pr")]
    pub question: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// Catalog name, path to a configuration file, or inline configuration.
    #[arg(long)]
    pub config: String,
    #[arg(long)]
    pub coloring: String,
    #[arg(long)]
    pub bound: u64,
    /// `BIG:SMALL:F` requires BIG > F * SMALL. Repeatable.
    #[arg(long = "ratio")]
    pub ratios: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ForceArgs {
    #[arg(long)]
    pub config: String,
    #[arg(long)]
    pub colors: u32,
    #[arg(long)]
    pub bound: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct RamseyArgs {
    #[arg(long)]
    pub config: String,
    /// Coloring spec; `{seed}` is replaced by each seed.
    #[arg(long, required_unless_present = "threshold")]
    pub coloring: Option<String>,
    /// One or more bounds, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub bound: Vec<u64>,
    #[arg(long, default_value = "uniform")]
    pub mode: String,
    /// auto, full or a number.
    #[arg(long = "h-cap", default_value = "auto")]
    pub h_cap: String,
    /// Seeds, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub seed: Vec<u64>,
    /// Instead of one coloring, find the least N at which every coloring
    /// with `--colors` colors has a Ramsey set of this size.
    #[arg(long, conflicts_with = "coloring", requires = "colors")]
    pub threshold: Option<usize>,
    #[arg(long)]
    pub colors: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SeparateArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    #[arg(long, default_value_t = 1)]
    pub lo: u64,
    #[arg(long)]
    pub hi: u64,
    /// all, power:K, exp2 or linear:K.
    #[arg(long, default_value = "all")]
    pub regime: String,
    /// Descriptors to try, semicolon separated; defaults to the shipped family.
    #[arg(long, value_delimiter = ';')]
    pub family: Vec<String>,
    /// Configuration supplying function declarations used by f and g.
    #[arg(long)]
    pub config: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Corpus JSON file; the shipped corpus when absent.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Run only the entry with this name.
    #[arg(long)]
    pub only: Option<String>,
    #[command(flatten)]
    pub common: Common,
}
