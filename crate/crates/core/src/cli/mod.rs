//! Command-line front end: `puiseux run` and `puiseux check`.
//!
//! Exit codes: 0 when at least one solution is found or checked, 2 when
//! every branch died (diagnostics are still printed), 1 on usage, I/O or
//! parse errors.

pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::expansion::{expand, verify};
pub use problem::{parse_problem, ParseError, ProblemSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_SOLUTIONS: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "puiseux", version, about = "Multivariate Puiseux series solutions of polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand every branch of the system in <FILE>.
    Run {
        file: PathBuf,
        /// Terms per branch.
        #[arg(long)]
        max_terms: Option<usize>,
        /// Cap on simultaneously live branches.
        #[arg(long)]
        max_branches: Option<usize>,
        /// Allow non-positive weights at the first step.
        #[arg(long)]
        no_positive_only: bool,
        /// Structured JSON output.
        #[arg(long, conflicts_with = "plain")]
        json: bool,
        /// Human-readable output (the default).
        #[arg(long)]
        plain: bool,
    },
    /// Recompute the residual order of every solution in <SOLUTIONS>.
    Check { file: PathBuf, solutions: PathBuf },
}

fn load(path: &Path) -> Result<ProblemSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_problem(&text).map_err(|e| format!("{}:{}:{}: {}", path.display(), e.line, e.col, e.message))
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn execute<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run {
            file,
            max_terms,
            max_branches,
            no_positive_only,
            json,
            plain: _,
        } => run(&file, max_terms, max_branches, no_positive_only, json, out, err),
        Command::Check { file, solutions } => check(&file, &solutions, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn run(
    file: &Path,
    max_terms: Option<usize>,
    max_branches: Option<usize>,
    no_positive_only: bool,
    json: bool,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<i32, String> {
    let mut spec = load(file)?;
    if let Some(k) = max_terms {
        spec.options.max_terms = k;
    }
    if let Some(b) = max_branches {
        spec.options.max_branches = b;
    }
    if no_positive_only {
        spec.options.positive_only = false;
    }
    let report = expand(&spec.gens, &spec.weight, &spec.options).map_err(|e| e.to_string())?;
    let text = if json {
        report::to_json(&spec, &report)
    } else {
        report::to_plain(&spec, &report)
    };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    if report.solutions.is_empty() {
        let _ = writeln!(
            err,
            "no solutions: {} diagnostic(s) reported",
            report.diagnostics.len()
        );
        return Ok(EXIT_NO_SOLUTIONS);
    }
    Ok(EXIT_OK)
}

fn check(file: &Path, solutions: &Path, out: &mut impl Write) -> Result<i32, String> {
    let spec = load(file)?;
    let text = std::fs::read_to_string(solutions).map_err(|e| format!("{}: {e}", solutions.display()))?;
    let sols = report::parse_solutions(&text).map_err(|e| format!("{}: {e}", solutions.display()))?;
    for (i, s) in sols.iter().enumerate() {
        if s.coords.len() != spec.ny() || s.coords.iter().flatten().any(|t| t.exp.len() != spec.nx()) {
            return Err(format!("solution {} does not match the problem's variables", i + 1));
        }
    }
    for (i, s) in sols.iter().enumerate() {
        let r = verify(&spec.gens, s, &spec.weight);
        let shown = if r.is_infinite() { "infinity".to_string() } else { r.to_string() };
        let note = if r == s.residual_order { "" } else { " (differs from the recorded order)" };
        writeln!(out, "solution {}: residual order {shown}{note}", i + 1).map_err(|e| e.to_string())?;
    }
    Ok(if sols.is_empty() { EXIT_NO_SOLUTIONS } else { EXIT_OK })
}
