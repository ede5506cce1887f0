//! `braided-fock`: identity checks, normal ordering and Heisenberg
//! commutators on the command line.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 usage error, 3 rewrite
//! budget exceeded.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use braided_fock::modealg::{RuleVariant, DEFAULT_BUDGET};
use braided_fock::Error;

#[derive(Parser, Debug)]
#[command(name = "braided-fock", version, about = "Exact fermionic q-Fock space engine")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: Config,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Config {
    /// Dimension of the fundamental representation (default 2).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,

    /// Exchange rules between modes.
    #[arg(long, global = true, value_enum, default_value_t = Rules::Theorem21)]
    rules: Rules,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Pair-rewrite limit for one run.
    #[arg(
        long,
        global = true,
        env = "BRAIDED_FOCK_BUDGET",
        default_value_t = DEFAULT_BUDGET,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    budget: u64,

    /// R-matrix as operator JSON instead of the standard one.
    #[arg(long, global = true)]
    matrix: Option<PathBuf>,

    /// List the Leibniz terms dropped by the pruning test.
    #[arg(long, global = true)]
    log_pruned: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rules {
    /// Full exchange relations with descendant terms.
    Theorem21,
    /// Braided tensor product of the modes.
    Gerv,
}

impl From<Rules> for RuleVariant {
    fn from(r: Rules) -> Self {
        match r {
            Rules::Theorem21 => RuleVariant::Full,
            Rules::Gerv => RuleVariant::BraidedTensor,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Hecke,
    Ybe,
    Pybe,
    Unitarity,
    Moderel,
    Modeind,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify an identity; mode checks sweep a window unless --i/--j are given.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[arg(long, allow_negative_numbers = true)]
        i: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        j: Option<i64>,
    },
    /// Normal form of a word such as "t[1]_1 t[0]_2" ("t2" is t[0]_2).
    Nf { expr: String },
    /// [b_i, b_{-j}] on the vacuum, 1 <= i, j <= 3.
    Heisenberg {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
        i: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
        j: i64,
    },
    /// b2 b-2 on the first vacuum column, and the shifted second term.
    Lemma33,
    /// Dimensions of the one-mode exterior algebra by degree.
    Dims,
    /// Timings of the main computations.
    Bench,
}

/// Result of a command: pass flag plus both renderings.
pub struct Outcome {
    pub pass: bool,
    pub text: String,
    pub json: serde_json::Value,
}

pub enum Failure {
    Usage(String),
    Math(Error),
    Budget(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e),
            Error::Parse { .. } | Error::Format(_) | Error::ZeroShift => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Math(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { kind, i, j } => commands::check(&cli.config, kind, i, j),
        Command::Nf { ref expr } => commands::normal_form(&cli.config, expr),
        Command::Heisenberg { i, j } => commands::heisenberg(&cli.config, i, j),
        Command::Lemma33 => commands::lemma33(&cli.config),
        Command::Dims => commands::dims(&cli.config),
        Command::Bench => commands::bench(&cli.config),
    };
    match result {
        Ok(out) => {
            let rendered = match cli.config.output {
                Output::Text => out.text,
                Output::Json => serde_json::to_string_pretty(&out.json).expect("serialisable"),
            };
            let _ = writeln!(std::io::stdout().lock(), "{rendered}");
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
