//! Command-line front end for `jsr-core`.
//!
//! Reports go to stdout as JSON, diagnostics to stderr. Exit codes:
//! 0 ok or CONFIRMED, 1 usage or parse error, 2 INCONCLUSIVE, 3 REFUTED,
//! 4 enumeration budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jsr_core::NormSpec;

pub mod commands;
pub mod document;
pub mod report;

pub use document::{example, Family, FamilyParams, InputDocument};
pub use report::RunReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Write(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] jsr_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(jsr_core::Error::Budget { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jsr", version, about = "Joint spectral radius bounds, theorem checks and exact p-adic runs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every randomized step (sampling, trajectory restarts).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Maximum number of words any enumeration may visit.
    #[arg(long, global = true, default_value_t = jsr_core::DEFAULT_WORD_CAP)]
    pub cap: u64,

    /// Append a one-line CSV summary of the run to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,

    /// Suppress diagnostics on stderr. Errors are still printed.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket the joint spectral radius of a COMPLEX document.
    Estimate(EstimateArgs),
    /// Check one of the quantitative theorems against a computed interval.
    Certify(CertifyArgs),
    /// Exact spectral radius of a RATIONAL_PADIC document.
    Padic(PadicArgs),
    /// Print the input document of a built-in family.
    Examples(ExamplesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Spectral,
    Rowsum,
    Colsum,
}

impl NormArg {
    pub fn spec(self) -> NormSpec {
        match self {
            NormArg::Spectral => NormSpec::Spectral,
            NormArg::Rowsum => NormSpec::MaxRowSum,
            NormArg::Colsum => NormSpec::MaxColSum,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Polbd,
    Boca,
    Bgel,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = NormArg::Spectral)]
    pub norm: NormArg,
    /// Stop deepening once the interval is this narrow.
    #[arg(long)]
    pub target_width: Option<f64>,
    /// Also run the conjugation search for this many iterations.
    #[arg(long, value_name = "ITERATIONS")]
    pub conjugation: Option<usize>,
    /// Also build the polytope norm from products up to this length and
    /// report its slack.
    #[arg(long, value_name = "DEPTH")]
    pub barabanov: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    /// Depth of the interval the check is run against.
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = NormArg::Spectral)]
    pub norm: NormArg,
    /// Precision for `bgel`.
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    /// Trajectory length for `bgel` when `d >= 2`.
    #[arg(long, default_value_t = 64)]
    pub maxlen: usize,
}

#[derive(Debug, Args)]
pub struct PadicArgs {
    pub input: PathBuf,
    /// Use this prime instead of the document's.
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ExamplesArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Scale of the unitary samples in `eps-identity`.
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    /// Number of sampled unitaries.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    /// Diagonal of the contraction in `unitary-mix`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alphas: Option<Vec<f64>>,
}

/// Parses `args` and runs the command, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
