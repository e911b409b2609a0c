//! `chccomp`: check, normalize, deduplicate, rate, select, score and report
//! CHC benchmarks.
//!
//! Exit status: 0 on success, 1 on a domain failure (nonconformant input,
//! conflicting results under the abort policy), 2 on usage or I/O errors.

mod commands;
mod config;
mod formats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "chccomp", version, about = "CHC benchmark curation and competition scoring")]
pub struct Cli {
    /// key = value configuration file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check files against the fragment and print `<path> <ok|fail> <track>`.
    Check { paths: Vec<PathBuf> },
    /// Merge or split queries and write canonical benchmarks.
    Normalize {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        paths: Vec<PathBuf>,
    },
    /// Drop benchmarks whose canonical form was already seen.
    Dedup {
        /// Manifest of kept benchmarks: `<digest> <path>` per line.
        #[arg(long)]
        out: Option<PathBuf>,
        paths: Vec<PathBuf>,
    },
    /// Rate benchmarks A/B/C from probe results.
    Rate {
        /// Lines `<benchmark> <repository> <solver> <solved|unsolved>`.
        #[arg(long)]
        probes: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Select benchmarks per repository quota.
    Select {
        /// Lines `<benchmark> <repository> <A|B|C>`.
        #[arg(long)]
        ratings: PathBuf,
        /// Lines `<repository> <quota>`.
        #[arg(long)]
        quotas: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Take every rated benchmark, ignoring quotas.
        #[arg(long)]
        whole_track: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score run records; writes scorecards.csv and consistency.txt.
    Score {
        #[command(flatten)]
        scoring: ScoringArgs,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Render table.md, cactus.csv and cactus.svg from run records.
    Report {
        #[command(flatten)]
        scoring: ScoringArgs,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TimeArg::Cpu)]
        time: TimeArg,
        /// Logarithmic time axis.
        #[arg(long)]
        log: bool,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value = "")]
        title: String,
    },
}

#[derive(Args, Debug)]
pub struct ScoringArgs {
    /// CSV `solver,config,benchmark,result,cpu_seconds,wall_seconds`.
    #[arg(long)]
    pub runs: PathBuf,
    /// Solver entered hors concours; repeatable.
    #[arg(long = "hors-concours")]
    pub hors_concours: Vec<String>,
    #[arg(long, value_enum)]
    pub policy: Option<PolicyArg>,
    #[arg(long)]
    pub cpu_budget: Option<String>,
    #[arg(long)]
    pub wall_budget: Option<String>,
    #[arg(long)]
    pub memory_gb: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Merge,
    Split,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PolicyArg {
    Exclude,
    Abort,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TimeArg {
    Cpu,
    Wall,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Domain(m) | Failure::Usage(m) if !m.is_empty() => eprintln!("chccomp: {m}"),
                _ => {}
            }
            ExitCode::from(f.code())
        }
    }
}
