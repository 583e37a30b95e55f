//! Command-line front end for `symtau-core`.
//!
//! Subcommands: `solve` (interval for `tau`), `decompose` (pencil curve case
//! analysis) and `table` (cycle intersection numbers). Exit codes are 0 on
//! success, 1 on parse or validation errors, 2 on inconsistent specs.

pub mod document;
pub mod render;

use std::io::{Read, Write};

use clap::{Parser, Subcommand};

use symtau_core::cycle_tables::{b_cycle, cover_cycle, ramification_degree, CoverDatum};
use symtau_core::decomposition::feasible_tau;
use symtau_core::tau_engine::{solve_with, CurveSpec, SolveError, SolveOptions};

pub use document::{DocumentError, SpecDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "symtau", version, about = "Nef-cone slope tau(C) on the second symmetric product of a curve")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for tau from a spec file ("-" reads standard input).
    Solve {
        file: String,
        /// Print every rule application.
        #[arg(long)]
        trace: bool,
        /// Explicit k for the general double-cover exactness test.
        #[arg(long = "main-k")]
        main_k: Option<i64>,
    },
    /// Enumerate component decompositions of a declared pencil curve.
    Decompose {
        file: String,
        #[arg(long)]
        pencil: i64,
        /// Also list rejected cases with the violated constraint.
        #[arg(long)]
        verbose: bool,
    },
    /// Intersection numbers of the cycles of an n-sheeted cover.
    Table {
        /// Cover as "n,h".
        #[arg(long, value_parser = parse_cover)]
        cover: (i64, i64),
        #[arg(long)]
        genus: i64,
        #[arg(long = "symmetric-index", default_value_t = 2)]
        symmetric_index: i64,
    },
}

fn parse_cover(text: &str) -> Result<(i64, i64), String> {
    let (n, h) = text.split_once(',').ok_or_else(|| format!("expected n,h, got {text:?}"))?;
    let n = n.trim().parse().map_err(|e| format!("sheets: {e}"))?;
    let h = h.trim().parse().map_err(|e| format!("target genus: {e}"))?;
    Ok((n, h))
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

fn read_source(file: &str, stdin: &mut dyn Read) -> Result<String, String> {
    let mut text = String::new();
    if file == "-" {
        stdin.read_to_string(&mut text).map_err(|e| format!("standard input: {e}"))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
    }
    Ok(text)
}

fn load_spec(file: &str, stdin: &mut dyn Read) -> Result<CurveSpec, String> {
    let text = read_source(file, stdin)?;
    let doc = SpecDocument::parse(&text).map_err(|e| e.to_string())?;
    doc.to_curve_spec().map_err(|e| e.to_string())
}

fn solve_error(e: SolveError) -> Outcome {
    match &e {
        SolveError::Invalid(_) => Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
        SolveError::Inconsistent { lower, upper } => Outcome::fail(
            EXIT_INCONSISTENT,
            format!("error: inconsistent specification\n{}", render::conflict(&[lower, upper])),
        ),
        SolveError::ConflictingFact { derived, declared } => Outcome::fail(
            EXIT_INCONSISTENT,
            format!("error: inconsistent specification, declared {declared}\n{}", render::conflict(&[derived])),
        ),
    }
}

pub fn execute(command: &Command, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Solve { file, trace, main_k } => {
            let spec = match load_spec(file, stdin) {
                Ok(spec) => spec,
                Err(e) => return Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
            };
            match solve_with(&spec, &SolveOptions { main_theorem_k: *main_k }) {
                Ok(result) => Outcome::ok(render::solve_result(&result, *trace)),
                Err(e) => solve_error(e),
            }
        }
        Command::Decompose { file, pencil, verbose } => {
            let spec = match load_spec(file, stdin) {
                Ok(spec) => spec,
                Err(e) => return Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
            };
            let (spec, _) = match spec.validate() {
                Ok(v) => v,
                Err(e) => return Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
            };
            if !spec.pencils.iter().any(|p| p.d == *pencil) {
                return Outcome::fail(EXIT_INVALID, format!("error: pencils: no pencil of degree {pencil} declared\n"));
            }
            match feasible_tau(*pencil, spec.g, &spec.covers) {
                Ok(result) => Outcome::ok(render::decomposition(*pencil, spec.g, &result, *verbose)),
                Err(e) => Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
            }
        }
        Command::Table { cover, genus, symmetric_index } => {
            let numbers = CoverDatum::new(cover.0, cover.1).and_then(|c| {
                let sigma = cover_cycle(c, *genus)?;
                let b = b_cycle(c, *symmetric_index, *genus)?;
                Ok((c, sigma, b))
            });
            match numbers {
                Ok((c, sigma, b)) => Outcome::ok(render::table(
                    c,
                    *genus,
                    *symmetric_index,
                    ramification_degree(c, *genus),
                    &sigma,
                    &b,
                )),
                Err(e) => Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
            }
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command, stdin),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_INVALID, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn write_outcome(outcome: &Outcome, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<()> {
    out.write_all(outcome.stdout.as_bytes())?;
    err.write_all(outcome.stderr.as_bytes())
}
