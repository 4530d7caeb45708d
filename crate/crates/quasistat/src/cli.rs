//! Command-line front end. Exit codes are a stable contract:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success |
//! | 1    | axiom failure (`validate`) |
//! | 2    | input or usage error |
//! | 3    | enumeration limit exceeded |
//! | 4    | infeasible targets |
//! | 5    | bose-einstein pole |
//! | 6    | solver did not converge |

use std::io::Read;

use clap::{Parser, Subcommand};

use crate::format;
use crate::maxent::{self, SolveError, SolveOptions};
use crate::qset::Kind;
use crate::report::{self, OutputFormat};
use crate::stats;
use crate::system::{preset_helium, preset_sodium};

pub const EXIT_OK: i32 = 0;
pub const EXIT_AXIOM_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_POLE: i32 = 5;
pub const EXIT_NO_CONVERGENCE: i32 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "quasistat",
    version,
    about = "Occupation statistics for indistinguishable particles",
    after_help = "Input paths accept '-' for standard input."
)]
struct Cli {
    /// Output format: table, csv or json.
    #[arg(long, global = true, default_value = "table")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a system description against the ten axioms.
    Validate { path: String },

    /// List the occupation configurations of nu particles over k states.
    Enumerate {
        nu: u64,
        k: u64,
        kind: String,
        /// Maximum number of rows to emit.
        #[arg(long)]
        limit: Option<u64>,
    },

    /// Count the occupation configurations without listing them.
    Count { nu: u64, k: u64, kind: String },

    /// Fit Lagrange parameters to a problem description.
    Solve {
        path: String,
        /// Relative tolerance on the constraint residuals.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_iter: Option<u32>,
    },

    /// Show a bundled atomic model: na (sodium) or he (helium).
    Atom { name: String },
}

/// Parses arguments from the process environment and runs; returns the exit
/// code. Usage errors print to stderr and exit 2 via clap.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let format = match cli.format.parse::<OutputFormat>() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    match cli.command {
        Command::Validate { path } => cmd_validate(&path, format),
        Command::Enumerate { nu, k, kind, limit } => cmd_enumerate(nu, k, &kind, limit, format),
        Command::Count { nu, k, kind } => cmd_count(nu, k, &kind, format),
        Command::Solve {
            path,
            tol,
            max_iter,
        } => cmd_solve(&path, tol, max_iter, format),
        Command::Atom { name } => cmd_atom(&name, format),
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(buffer)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn parse_kind_arg(kind: &str) -> Result<Kind, String> {
    kind.parse::<Kind>()
}

fn cmd_validate(path: &str, format: OutputFormat) -> i32 {
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let (system, _bins) = match format::parse_system(&text) {
        Ok(parsed) => parsed,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let verdicts = system.validate();
    print!("{}", report::render_verdicts(&verdicts, format));
    if verdicts.iter().all(|v| v.passed) {
        EXIT_OK
    } else {
        EXIT_AXIOM_FAILURE
    }
}

fn cmd_enumerate(nu: u64, k: u64, kind: &str, limit: Option<u64>, format: OutputFormat) -> i32 {
    let kind = match parse_kind_arg(kind) {
        Ok(k) => k,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let limit = limit.unwrap_or(stats::DEFAULT_ENUMERATION_LIMIT);
    let expected = match stats::count(nu, k, kind) {
        Ok(c) => c.value,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    if let Err(e) = stats::enumeration_fits(&expected, k, limit) {
        eprintln!("error: {e}");
        return EXIT_LIMIT;
    }
    let iter = match stats::enumerate_iter(nu, k, kind) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if report::write_enumeration(&mut lock, k, iter, format).is_err() {
        return EXIT_INPUT_ERROR;
    }
    EXIT_OK
}

fn cmd_count(nu: u64, k: u64, kind: &str, format: OutputFormat) -> i32 {
    let kind = match parse_kind_arg(kind) {
        Ok(k) => k,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    match stats::count(nu, k, kind) {
        Ok(count) => {
            print!("{}", report::render_count(&count, format));
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn cmd_solve(path: &str, tol: Option<f64>, max_iter: Option<u32>, format: OutputFormat) -> i32 {
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let problem = match format::parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let mut options = SolveOptions::default();
    if let Some(tol) = tol {
        options.rel_tol = tol;
    }
    if let Some(max_iter) = max_iter {
        options.max_iterations = max_iter;
    }
    match maxent::solve_with(&problem, &options) {
        Ok(solution) => {
            print!("{}", report::render_solution(&problem, &solution, format));
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                SolveError::Infeasible(_) => EXIT_INFEASIBLE,
                SolveError::PoleError { .. } => EXIT_POLE,
                SolveError::NoConvergence(_) => EXIT_NO_CONVERGENCE,
                SolveError::InvalidProblem(_) | SolveError::DomainError(_) => EXIT_INPUT_ERROR,
            }
        }
    }
}

fn cmd_atom(name: &str, format: OutputFormat) -> i32 {
    match name {
        "na" | "sodium" => {
            let (system, bins) = preset_sodium();
            let coarse = system.coarse_relation(&bins).expect("preset binning covers");
            print!("{}", report::render_atom(&system, Some(&coarse), format));
            EXIT_OK
        }
        "he" | "helium" => {
            let system = preset_helium();
            print!("{}", report::render_atom(&system, None, format));
            EXIT_OK
        }
        other => {
            eprintln!("error: unknown atom {other:?} (expected na or he)");
            EXIT_INPUT_ERROR
        }
    }
}
