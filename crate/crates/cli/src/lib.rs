//! The `gcomb` command line: experiment configs in TOML, reports in JSON
//! or CSV.
//!
//! Exit codes: 0 success, 1 property violation, 2 usage or config error,
//! 3 resource cap.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gcomb_core::algebra::AlgebraError;
use gcomb_core::group::GroupError;
use gcomb_core::{CombingError, SpectralError};
use thiserror::Error;

pub use output::Outcome;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("resource cap: {0}")]
    Resource(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }

    pub fn from_combing(e: CombingError) -> Self {
        match e {
            CombingError::EnumerationCap { .. } => CliError::Resource(e.to_string()),
            e => CliError::Config(e.to_string()),
        }
    }

    pub fn from_spectral(e: SpectralError) -> Self {
        if e.is_resource_cap() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }

    pub fn from_algebra(e: AlgebraError) -> Self {
        match e {
            AlgebraError::SupportCapExceeded { .. } => CliError::Resource(e.to_string()),
            e => CliError::Config(e.to_string()),
        }
    }

    pub fn from_group(e: GroupError) -> Self {
        match e {
            GroupError::BallTooLarge(_) => CliError::Resource(e.to_string()),
            e => CliError::Config(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gcomb",
    version,
    about = "Combing audits and spectral reports for group algebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Experiment config (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized commands; overrides `run.seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for report files; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetry, equivariance, triple intersection, |C(1,s)| bound, growth
    /// domination and free-semigroup checks.
    Audit,
    /// Norm bounds, ℓ² power norms and compression lower bounds for an element.
    Spectral {
        /// Name of an element in `[elements]`.
        #[arg(long)]
        element: String,
    },
    /// Relative distance d̂(h1, h2) in the configured alphabet.
    Dhat {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long, default_value_t = 30)]
        bound: u64,
    },
    /// Sampled growth functions against the certified bounds.
    Growth,
    /// Canonical geodesic of a word in the configured alphabet.
    Geodesic {
        #[arg(long)]
        word: String,
    },
    /// Freeness of the semigroup generated by tF, or membership of a word.
    Semigroup {
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        member: Option<String>,
    },
    /// The ℓ² product inequality on seeded random positive pairs.
    RplusFuzz,
}

/// Runs `cli` on a dedicated pool with `--threads` workers.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.common.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    pool.install(|| commands::dispatch(cli))
}

/// Parses `args` (including the program name), runs, writes the outcome and
/// returns the exit code. Errors are printed to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli).and_then(|o| o.write(cli.common.out.as_deref()).map(|_| o.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gcomb: {e}");
            e.exit_code()
        }
    }
}
