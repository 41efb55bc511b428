//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "meanlab", version, about = "Power means, axiom checks and exponent recovery")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate M(w, x).
    Eval(EvalArgs),
    /// Run every axiom and derived-property check.
    Axioms(AxiomArgs),
    /// Recover the exponent p from θ(s) = M((s, 1 - s), (1, 0)).
    Recover(RecoverArgs),
    /// Recover p, then compare M with M_p on uniform, rational and irrational weights.
    Characterize(CharacterizeArgs),
    /// Bracket M(w, x) between two rational weightings within delta of w.
    Sandwich(SandwichArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Built-in power mean, e.g. `p=2`, `0.5`, `inf`, `-inf`.
    #[arg(
        long,
        value_name = "P",
        conflicts_with = "dsl",
        required_unless_present = "dsl",
        allow_hyphen_values = true
    )]
    pub builtin: Option<String>,
    /// Mean given as a formula over w and x, e.g. `sum(w*x^2)^0.5`.
    #[arg(long, value_name = "SOURCE", allow_hyphen_values = true)]
    pub dsl: Option<String>,
    /// Only strictly positive weights; functoriality only along surjections.
    #[arg(long)]
    pub positive_weights: bool,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Weights as comma-separated decimals.
    #[arg(long, value_name = "W", allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Values as comma-separated decimals.
    #[arg(long, value_name = "X", allow_hyphen_values = true)]
    pub x: Option<String>,
    /// JSON file of the form {"w": [...], "x": [...]}.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["w", "x"])]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    #[arg(long, env = "MEANLAB_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Largest index-set size the generators draw.
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Relative tolerance for equalities.
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Scaled additive slack for inequalities.
    #[arg(long, default_value_t = 1e-12)]
    pub slack: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AxiomArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Run only these checks (repeatable).
    #[arg(long = "check", value_name = "NAME")]
    pub checks: Vec<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, env = "MEANLAB_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Random (s, s') pairs used to test θ(ss') = θ(s)θ(s').
    #[arg(long, default_value_t = 31)]
    pub samples: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CharacterizeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SandwichArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 1e-3)]
    pub delta: f64,
    /// Scaled slack allowed when checking the ordering.
    #[arg(long, default_value_t = 1e-12)]
    pub slack: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}
