use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "betanum", version, about = "Exact positive- and negative-base numeration tools")]
pub struct Cli {
    #[command(flatten)]
    pub base: BaseArgs,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report to a file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    /// Orbit cap for digit maps.
    #[arg(long, global = true, default_value_t = betanum::expansion::DEFAULT_CAP)]
    pub cap: usize,

    /// Include wall-clock timing (kept outside the hashed payload).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct BaseArgs {
    /// Monic integer polynomial, coefficients constant term first: `-1,-1,-1,1`.
    #[arg(long, global = true, allow_hyphen_values = true, conflicts_with = "confluent")]
    pub poly: Option<String>,

    /// Confluent parameters `d,m,n` for `x^d - m x^{d-1} - ... - m x - n`.
    #[arg(long, global = true)]
    pub confluent: Option<String>,

    /// Rational interval `lo,hi` selecting the root when several exceed one.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub root_hint: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SignArgs {
    /// Positive base β (default).
    #[arg(long, conflicts_with = "neg")]
    pub pos: bool,
    /// Negative base -β.
    #[arg(long)]
    pub neg: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expansions of 1 and ℓ with their class tags.
    Classify,
    /// Expansion of an exact value such as `-b+3` or `21/10`.
    Expand {
        #[command(flatten)]
        sign: SignArgs,
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Windowed (±β)-integers with their gap word.
    Integers {
        #[command(flatten)]
        sign: SignArgs,
        /// Window `lo,hi`; defaults to `-10,10` (negative base) or `0,10`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Windowed spectrum compared against the integers of the same base.
    Spectrum {
        #[command(flatten)]
        sign: SignArgs,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Largest digit for the positive spectrum.
        #[arg(long)]
        digit_max: Option<u32>,
    },
    /// The canonical morphism, the antimorphism, their squares and conjugacy.
    Morphism {
        /// Letters used to build the antimorphism.
        #[arg(long)]
        letters: Option<usize>,
        #[arg(long)]
        w_cap: Option<usize>,
    },
    /// The three equivalent conditions on a base.
    Verify {
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Runs verify over a grid of confluent bases.
    Sweep {
        #[arg(long, default_value_t = 5)]
        max_d: usize,
        #[arg(long, default_value_t = 3)]
        max_m: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ReportArgs {
    /// Window `[-radius, radius]` for the set comparison.
    #[arg(long, default_value_t = 10)]
    pub radius: i64,
    #[arg(long, default_value_t = 8)]
    pub factor_length: usize,
    #[arg(long)]
    pub w_cap: Option<usize>,
}
