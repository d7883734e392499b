//! `bincover` command-line front end.
//!
//! Exit codes: 0 ok, 2 parse, 3 validation, 4 budget, 5 I/O. Failures print
//! a JSON error object on stderr.

mod commands;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::failure::Failure;

#[derive(Parser)]
#[command(name = "bincover", version, about = "Exact solvers and baselines for bin covering with delivery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    Uniform,
    Bounded,
    Batch,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file and report every violated invariant.
    Validate {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance and write the solution JSON.
    Solve {
        instance: PathBuf,
        /// dp, brute, dnf or greedy:<t>
        #[arg(long, default_value = "dp")]
        algorithm: String,
        /// Max DP states / enumerated sequences.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance from a config file.
    Generate {
        #[arg(value_enum)]
        kind: GeneratorKind,
        config: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the hidden partition of a batch instance; defaults
        /// to `<out stem>.partition.json`.
        #[arg(long)]
        partition_out: Option<PathBuf>,
    },
    /// Run algorithms over instance files and write one CSV row per pair.
    Compare {
        /// Glob patterns for instance files.
        #[arg(required = true)]
        instances: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "dp,dnf")]
        algorithms: Vec<String>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-item DP state counts against the general bound.
    ProfileStates {
        instance: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the layered transition digraph and its heaviest path.
    HardnessDigraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// OPT, Dual Next Fit and the longest-path bound on a batch instance.
    GapReport {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { instance, out } => commands::validate(&instance, out.as_deref()),
        Command::Solve {
            instance,
            algorithm,
            budget,
            out,
        } => commands::solve(&instance, &algorithm, budget, out.as_deref()),
        Command::Generate {
            kind,
            config,
            seed,
            out,
            partition_out,
        } => commands::generate(kind, &config, seed, out.as_deref(), partition_out.as_deref()),
        Command::Compare {
            instances,
            algorithms,
            budget,
            out,
        } => commands::compare(&instances, &algorithms, budget, out.as_deref()),
        Command::ProfileStates {
            instance,
            budget,
            format,
            out,
        } => commands::profile(&instance, budget, format, out.as_deref()),
        Command::HardnessDigraph { n, out } => commands::digraph(n, out.as_deref()),
        Command::GapReport {
            config,
            seed,
            budget,
            format,
            out,
        } => commands::gap(&config, seed, budget, format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("{}", failure.to_json());
            ExitCode::from(failure.exit_code())
        }
    }
}
