//! Command-line front end: `solve`, `convergence` and `reproduce`.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 problem parse or
//! evaluation failure, 4 solver failure.

mod commands;
pub mod published;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::AnalysisError;
use crate::problem::{ProblemError, ProblemFileError};
use crate::scheme::SchemeError;

pub use commands::{cmd_convergence, cmd_reproduce, cmd_solve, parse_scheme, CommandOutput};

#[derive(Debug, Parser)]
#[command(
    name = "tension-bvp",
    version,
    about = "Tension-spline solver for -eps*y'' + P(x)*y = f(x) with Dirichlet boundary values"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and print the nodal solution.
    Solve(SolveArgs),
    /// Sweep eps and N and tabulate maximum errors with observed orders.
    Convergence(ConvergenceArgs),
    /// Rerun a published error table with the fourth-order scheme.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Built-in problem: example_4_1 or example_4_2.
    #[arg(long, conflicts_with = "problem_file")]
    pub problem: Option<String>,
    /// Problem file with `key = value` lines.
    #[arg(long, value_name = "PATH")]
    pub problem_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableSelector {
    Table1,
    Table2,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Perturbation parameter, e.g. 1e-4 or 1/16.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Number of subintervals.
    #[arg(long)]
    pub n: usize,
    /// cubic | fourth | lambda:<l1>,<l2> | tension:<lambda>
    #[arg(long, default_value = "fourth")]
    pub scheme: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Comma-separated eps values; defaults to the published grid.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Comma-separated subinterval counts; defaults to the published grid.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, default_value = "fourth")]
    pub scheme: String,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub table: TableSelector,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Parse,
    Solver,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Usage,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Parse,
            message: message.into(),
        }
    }

    pub fn solver(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Solver,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Usage => 2,
            ErrorKind::Parse => 3,
            ErrorKind::Solver => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ProblemFileError> for CliError {
    fn from(e: ProblemFileError) -> Self {
        CliError::parse(format!("problem file: {e}"))
    }
}

impl From<ProblemError> for CliError {
    fn from(e: ProblemError) -> Self {
        match e {
            ProblemError::UnknownProblem(_)
            | ProblemError::NonPositiveEpsilon(_)
            | ProblemError::EmptyInterval { .. } => CliError::usage(e.to_string()),
            other => CliError::parse(other.to_string()),
        }
    }
}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        match e {
            SchemeError::Eval(_) => CliError::parse(e.to_string()),
            SchemeError::Problem(p) => p.into(),
            SchemeError::MeshTooSmall(_)
            | SchemeError::NonPositiveTension(_)
            | SchemeError::NonPositiveCoefficient { .. } => CliError::usage(e.to_string()),
            other => CliError::solver(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Problem(p) => p.into(),
            AnalysisError::Scheme(s) => s.into(),
            AnalysisError::EmptyList(_) | AnalysisError::InvalidEpsilon(_) | AnalysisError::MeshTooSmall(_) => {
                CliError::usage(e.to_string())
            }
            AnalysisError::MissingExact => CliError::usage(format!("{e}; convergence needs an `exact` expression")),
            other => CliError::solver(other.to_string()),
        }
    }
}

/// Parses `args` (program name first), runs the command and writes results.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                2
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                0
            };
        }
    };
    let (result, out_path) = match &cli.command {
        Command::Solve(a) => (cmd_solve(a), a.out.clone()),
        Command::Convergence(a) => (cmd_convergence(a), a.out.clone()),
        Command::Reproduce(a) => (cmd_reproduce(a), a.out.clone()),
    };
    match result {
        Ok(output) => {
            for w in &output.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let written = match out_path {
                Some(path) => std::fs::write(&path, output.body.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(output.body.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
