//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "cogrowth",
    version,
    about = "Cogrowth of finitely generated semigroups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "command")]
pub enum Command {
    /// Local and global cogrowth counts and rate estimates.
    Cogrowth(CogrowthArgs),
    /// Markov operator bounds and the walk identity check.
    Operator(OperatorArgs),
    /// Finite structure predicates, Følner defects and ball export.
    Structure(StructureArgs),
    /// Random-walk estimates checked against exact counts.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct InputArgs {
    /// Semigroup spec file.
    #[arg(long, conflicts_with = "family")]
    pub spec: Option<PathBuf>,
    /// Built-in family: free, free_commutative, bicyclic, integer_lattice.
    #[arg(long, required_unless_present = "spec")]
    pub family: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Generator choice: `sym:word` over the default generators, or
    /// `name:vector` such as `a:+1` or `v:(1,-1)` for lattices.
    #[arg(long, num_args = 1..)]
    pub gens: Vec<String>,
    /// Add a generator for the identity of S¹.
    #[arg(long)]
    pub adjoin_identity: bool,
    /// Use all words of this length as generators (monoids only).
    #[arg(long, default_value_t = 1)]
    pub power: usize,
    /// Work in the opposite semigroup.
    #[arg(long)]
    pub opposite: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CommonArgs {
    /// Cap on the number of distinct elements explored.
    #[arg(long, default_value_t = cogrowth::DEFAULT_ELEMENT_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write report files into this directory instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CogrowthArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Horizon: word length N.
    #[arg(short = 'N', long = "horizon", default_value_t = 10)]
    pub horizon: usize,
    /// Elements whose local cogrowth is reported, as words (`1` is the
    /// identity). Defaults to the identity and the generators.
    #[arg(long, num_args = 1..)]
    pub track: Vec<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OperatorArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(short = 'N', long = "horizon", default_value_t = 10)]
    pub horizon: usize,
    /// Ball radius for power iteration and random vectors.
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
    #[arg(long, default_value_t = 20)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0)]
    pub rayleigh_samples: usize,
    #[arg(long, default_value_t = 50)]
    pub max_support: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct StructureArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Følner defect of the ball of this radius against the generators.
    #[arg(long)]
    pub folner_radius: Option<usize>,
    /// Export the Cayley ball of this radius (needs --out).
    #[arg(long)]
    pub export_ball: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    /// One walk ends at the tracked element.
    Local,
    /// Two independent walks end at the same element.
    Coincidence,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Largest walk length; rows are n = 1..=N.
    #[arg(short = 'N', long = "horizon", default_value_t = 6)]
    pub horizon: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Event::Local)]
    pub event: Event,
    /// Target element for local estimates.
    #[arg(long, default_value = "1")]
    pub track: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Cogrowth(a) => &a.common,
            Command::Operator(a) => &a.common,
            Command::Structure(a) => &a.common,
            Command::Simulate(a) => &a.common,
        }
    }

    pub fn input(&self) -> &InputArgs {
        match self {
            Command::Cogrowth(a) => &a.input,
            Command::Operator(a) => &a.input,
            Command::Structure(a) => &a.input,
            Command::Simulate(a) => &a.input,
        }
    }
}
