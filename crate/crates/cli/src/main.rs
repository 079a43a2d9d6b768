mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nfbertrand::ErrorKind;

/// Ideal counts, prime-ideal gaps and explicit Bertrand-type bounds for number fields.
#[derive(Parser, Debug)]
#[command(name = "nfbertrand", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Field definition JSON files.
    #[arg(long, global = true, num_args = 1.., value_name = "PATH")]
    pub fields: Vec<PathBuf>,

    /// Table limit X.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub limit: u64,

    /// Comma-separated evaluation points for `count`.
    #[arg(long, global = true, value_delimiter = ',', value_name = "X,...")]
    pub grid: Vec<f64>,

    /// Exponent alpha for envelope fits and the general-case threshold.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,

    /// delta for the zeta-based bound on log B_K; overrides the constants file.
    #[arg(long, global = true)]
    pub delta: Option<f64>,

    /// Effective constants as a JSON object, e.g. '{"cA": 10, "kappa": 1}'.
    #[arg(long, global = true, value_name = "JSON")]
    pub constants: Option<String>,

    /// Output directory; results go to stdout when omitted.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Directory for cached coefficient tables.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,

    /// Worker threads for table construction.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Seed for randomized root finding and sampled checks.
    #[arg(long, global = true, default_value_t = nfbertrand::splitting::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Print invariants, residue, Minkowski margin and Friedman ratio.
    FieldInfo,
    /// Emit ideal-count and prime-ideal statistics as CSV.
    Count,
    /// Scan prime-ideal norm gaps for an empirical lower bound on B_K.
    Gaps,
    /// Evaluate the explicit bound expressions.
    Bounds,
    /// Run the property suite.
    Verify,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<nfbertrand::Error>() {
            return match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Computation => 3,
                ErrorKind::Io => 4,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 4;
        }
        if cause.downcast_ref::<commands::Failed>().is_some() {
            return 3;
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
