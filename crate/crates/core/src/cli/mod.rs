//! Command-line driver. Every subcommand prints a text summary, or with
//! `--json` the JSON report it summarises.

mod commands;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use verify::{verify_all, CriterionResult};

/// Exit code when every check passed.
pub const EXIT_OK: i32 = 0;
/// Exit code when a mathematical check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit code for malformed invocations and unreadable inputs.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "modalwb", version, about = "Bimodal Kripke workbench")]
pub struct Cli {
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Truth set of a formula in a finite model.
    Eval {
        /// A model file.
        #[arg(long)]
        model: PathBuf,
        /// Inline formula, @FILE, or corpus:NAME.
        #[arg(long)]
        formula: String,
    },
    /// Frame-condition verdicts with counterexamples.
    Props {
        /// A frame file.
        #[arg(long, required_unless_present = "model", conflicts_with = "model")]
        frame: Option<PathBuf>,
        /// A model file; needed for the model-relative conditions.
        #[arg(long)]
        model: Option<PathBuf>,
        /// World at which the model-relative conditions are checked.
        #[arg(long, requires = "model")]
        root: Option<usize>,
        /// Comma-separated condition names.
        #[arg(long, value_delimiter = ',', required = true)]
        conditions: Vec<String>,
    },
    /// Search a frame class for finite models of a formula.
    Probe {
        /// Inline formula, @FILE, or corpus:NAME.
        #[arg(long)]
        formula: String,
        /// Comma-separated frame conditions, e.g. wcon0,lcom.
        #[arg(long, value_delimiter = ',', required = true)]
        class: Vec<String>,
        /// Largest world count, or largest component size with --product-only.
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        /// Enumerate product frames; single-relation conditions apply to the components.
        #[arg(long)]
        product_only: bool,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        /// In-class samples per size (random mode).
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "MODALWB_JOBS")]
        jobs: Option<usize>,
        /// Keep one frame per isomorphism class.
        #[arg(long)]
        iso: bool,
    },
    /// Exact evaluation on a built-in infinite witness model.
    Witness {
        /// Built-in witness name, e.g. lemma_satone.
        #[arg(long)]
        name: String,
        /// Defaults to the formula the witness was built for.
        #[arg(long)]
        formula: Option<String>,
        /// A point such as '{"m":"omega","k":0}'; defaults to the witness's own target.
        #[arg(long)]
        target: Option<String>,
    },
    /// Random-model campaign for one claim, or `all`.
    Claims {
        /// trans, wcon, comm_l, comm_r, comm_c, dia_semantics or all.
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "MODALWB_JOBS")]
        jobs: Option<usize>,
    },
    /// Follow the point sequences forced by phi_inf or psi_inf.
    Extract {
        #[arg(long)]
        name: String,
        /// phi or psi.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        steps: usize,
        /// Starting point; defaults to the witness's own target.
        #[arg(long)]
        root: Option<String>,
    },
    /// Compare exact evaluation with three-valued evaluation on a finite window.
    Crosscheck {
        #[arg(long)]
        name: String,
        #[arg(long)]
        formula: Option<String>,
        #[arg(long, default_value_t = 30)]
        window: u64,
    },
    /// Run every acceptance check.
    VerifyAll {
        #[arg(long, env = "MODALWB_JOBS")]
        jobs: Option<usize>,
    },
}

/// Runs the CLI on `argv` (including the program name) with the process streams.
pub fn run(argv: Vec<String>) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run_with(argv: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(report) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("report serialises") + "\n"
            } else {
                report.text
            };
            let _ = out.write_all(text.as_bytes());
            if report.ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
