//! `qapery`: verification campaigns for the q-analogue odd-zeta identities.

mod commands;
mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grid::{IntSet, RationalList};

#[derive(Parser, Debug)]
#[command(name = "qapery", version, about = "Exact and numeric verification of q-analogue odd-zeta identities")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Directory for per-check JSON reports and summaries.
    #[arg(long, global = true, env = "QAPERY_OUT", default_value = "qapery-out")]
    pub out: PathBuf,
    /// Format of the table printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Working precision in bits for numeric checks (default: digits + 15 guard digits).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(32..=1_000_000))]
    pub precision: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Exact check of the truncated identity over an (N, r) grid.
    VerifyFinite {
        /// Truncation lengths, e.g. `1..10` or `2,4,6`.
        #[arg(long, default_value = "1..10")]
        n: IntSet,
        #[arg(long, default_value = "0..4")]
        r: IntSet,
        /// Largest polynomial degree a partial sum may reach before the cell
        /// is reported as a resource-cap failure.
        #[arg(long, default_value_t = 20_000)]
        max_degree: usize,
        #[arg(long, hide = true, default_value = "none")]
        sabotage: String,
    },
    /// Exact checks of the individual proof steps.
    VerifyProof {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "combination,k-telescope,partial-fraction,s-telescope")]
        steps: Vec<Step>,
        #[arg(long, default_value = "2..8")]
        n: IntSet,
        /// Depths for the combination (s >= 1 only) and k-telescope steps.
        #[arg(long, default_value = "0..3")]
        s: IntSet,
        /// Outer depths for the s-telescope step.
        #[arg(long, default_value = "1..4")]
        r: IntSet,
        #[arg(long, hide = true, default_value = "none")]
        sabotage: String,
    },
    /// Numeric agreement of both sides of an infinite identity.
    Numeric {
        #[arg(long, value_enum)]
        identity: NumericIdentity,
        #[arg(long, default_value = "1/2")]
        q: RationalList,
        #[arg(long, default_value = "1/2")]
        x: RationalList,
        /// Parameter r for `r-family`.
        #[arg(long, default_value = "0")]
        r: IntSet,
        /// Parameter a for `markov-parametric`.
        #[arg(long, default_value = "0..3")]
        a: IntSet,
        /// Truncation of the zeta generating function for `kl-classical`.
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        /// Each side is summed to 10^-digits.
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u32).range(1..=1000))]
        digits: u32,
        /// Residual bound 10^-check_digits (default: digits - 2).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1000))]
        check_digits: Option<u32>,
    },
    /// Terms needed by plain and accelerated series at a fixed tolerance.
    Converge {
        #[arg(long, value_enum, default_value_t = ConvergeIdentity::RFamily)]
        identity: ConvergeIdentity,
        #[arg(long, default_value = "1/2")]
        q: RationalList,
        #[arg(long, default_value = "0")]
        r: IntSet,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..=1000))]
        digits: u32,
    },
    /// Classical (q = 1) accelerated series against a direct-summation oracle.
    LimitCheck {
        /// Check the accelerated series for zeta(2r+3) for these r.
        #[arg(long)]
        r: Option<IntSet>,
        /// Check the parametric zeta(3) identity for these a.
        #[arg(long)]
        markov_a: Option<IntSet>,
        /// Check the classical generating-function identity at these x.
        #[arg(long)]
        kl_x: Option<RationalList>,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=30))]
        digits: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyFinite { .. } => "verify-finite",
            Command::VerifyProof { .. } => "verify-proof",
            Command::Numeric { .. } => "numeric",
            Command::Converge { .. } => "converge",
            Command::LimitCheck { .. } => "limit-check",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Step {
    Combination,
    KTelescope,
    PartialFraction,
    STelescope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumericIdentity {
    QEven,
    QEvenX0,
    MainBivariate,
    RFamily,
    KlClassical,
    MarkovParametric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvergeIdentity {
    RFamily,
    MarkovAperyClassical,
}

/// Exit status of a run.
pub enum Outcome {
    AllPassed,
    SomeFailed,
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome::AllPassed) => ExitCode::SUCCESS,
        Ok(Outcome::SomeFailed) => ExitCode::from(1),
        Ok(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
