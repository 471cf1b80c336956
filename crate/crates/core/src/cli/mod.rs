//! Command-line surface: verification suites, parameter sweeps, spectral-side
//! evaluation against ingested eigendata, and value tables.
//!
//! Exit codes are a stable contract: 0 every tolerance met, 1 a tolerance
//! failed, 2 usage or configuration error.

pub mod dataset;
pub mod report;
pub mod spectral;
pub mod sweep;
pub mod table;
pub mod verify;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "specrec",
    version,
    about = "Numerical verification toolkit for spectral summation formulas and their dual-moment transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a named verification suite and write a JSON report.
    Verify {
        /// One of: arith-exact, mellin-closed-forms, sears-titchmarsh,
        /// envelopes-5.2, envelopes-5.4, envelopes-7.3, h-asymptotic,
        /// stat-phase, afe-weights
        suite: String,
        /// Tolerance override for suites with a single headline tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Seed for the randomised identity draws.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Report output path (defaults to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an envelope parameter sweep from a JSON config and emit CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path (overrides the config's `out`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the spectral side of a summation formula over a dataset and,
    /// for the continuous-weight case, the geometric side with a truncation
    /// estimate.
    SpectralSide {
        /// CSV of cusp-form records: t_f,eps_f,l1_adf,lambda_1,...
        #[arg(long)]
        data: Option<PathBuf>,
        /// Optional CSV of holomorphic records: k_f,l1_adf,lambda_1,...
        #[arg(long)]
        hol_data: Option<PathBuf>,
        /// Generate a synthetic dataset with this many records instead of
        /// reading one (clearly labelled synthetic in the report).
        #[arg(long)]
        synthetic: Option<usize>,
        /// Weight spec: gauss-minus:CENTER:WIDTH, gauss-plus:CENTER:WIDTH,
        /// triple1:M:T, triple2:M:T, triple4:M:T:U, or big-h:TG
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a table of values for one operation.
    Table {
        /// Operation name; see `table --op help`.
        #[arg(long)]
        op: String,
        /// Operation arguments as key=value pairs.
        #[arg(long = "arg", value_name = "KEY=VALUE")]
        args: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Verify {
            suite,
            tol,
            seed,
            out,
        } => match verify::run_suite(&suite, tol, seed) {
            Ok(report) => {
                let pass = report.pass;
                if let Err(e) = report::emit_json(&report, out.as_deref()) {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
                if pass {
                    EXIT_PASS
                } else {
                    EXIT_TOLERANCE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Command::Sweep { config, out } => match sweep::run_from_path(&config, out.as_deref()) {
            Ok(()) => EXIT_PASS,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Command::SpectralSide {
            data,
            hol_data,
            synthetic,
            weight,
            m,
            n,
            seed,
            out,
        } => match spectral::run(
            data.as_deref(),
            hol_data.as_deref(),
            synthetic,
            &weight,
            m,
            n,
            seed,
            out.as_deref(),
        ) {
            Ok(pass) => {
                if pass {
                    EXIT_PASS
                } else {
                    EXIT_TOLERANCE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Command::Table { op, args, out } => match table::run(&op, &args, out.as_deref()) {
            Ok(()) => EXIT_PASS,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
    }
}
