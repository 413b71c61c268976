//! Command-line front end: table emission, verification suites and
//! single-object transforms over JSON files.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
//! input or usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod json;
pub mod report;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "hexaspinor", version, about = "Six-dimensional spinor algebra toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Input JSON file.
    #[arg(long = "in", global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Output file (default stdout).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "HEXASPINOR_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Real form as p,q.
    #[arg(long, global = true, value_parser = parse_sig)]
    pub sig: Option<(usize, usize)>,
    /// Add wall-clock duration to report summaries.
    #[arg(long, global = true)]
    pub timing: bool,
}

fn parse_sig(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p = p.trim().parse().map_err(|_| "p is not an integer")?;
    let q = q.trim().parse().map_err(|_| "q is not an integer")?;
    Ok((p, q))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a fixed table as JSON.
    Tables {
        #[arg(long = "set", value_enum)]
        set: TableSet,
    },
    /// Run verification suites, one JSON line per check.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
    },
    /// SL(4,C) matrix to SO(6,C).
    Push,
    /// SO(6,C) matrix to a spin transform, up to sign.
    Lift,
    /// Canonical form of a bivector under the compact real form.
    Canon,
    /// Factor a rank-one traceless matrix as X^a Y_b.
    Nullpair,
    /// Null flag of a rotated, scaled standard basis.
    Flag {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Correspondences between the two quadrics.
    Quadric {
        #[command(subcommand)]
        op: QuadricOp,
    },
    /// Octonion structure constants or a product.
    Octonion {
        /// Emit the multiplication table (default).
        #[arg(long)]
        table: bool,
        /// Multiply two 8-vectors read from files.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        mul: Option<Vec<PathBuf>>,
    },
    /// Spin-tensor decomposition of an algebraic curvature tensor.
    Curvature {
        /// Number of product terms for a generated tensor when --in is absent.
        #[arg(long, default_value_t = 3)]
        terms: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableSet {
    Norden6,
    Eta8,
    Realform,
    Octonion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Norden,
    Cover,
    Realform,
    Curvature,
    Bivgeo,
    Octo,
    All,
}

#[derive(Debug, Subcommand)]
pub enum QuadricOp {
    /// {"x": X, "y": Y} to the 3-parameter family of bivectors.
    Point2gen,
    /// {"pairs": [{"x", "y"} x4]} to the unique bivector.
    Gen2point,
    /// {"vectors": [8-vector x4]} to the family sign.
    Family,
    /// Bivector to homogeneous coordinates.
    Coords,
}

/// Outcome of a command: the text to emit and whether every check passed.
pub struct Output {
    pub text: String,
    pub pass: bool,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => match emit(&cli.global, &out.text) {
            Ok(()) => i32::from(!out.pass),
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    if !cli.global.tol.is_finite() || cli.global.tol <= 0.0 {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", cli.global.tol)));
    }
    commands::dispatch(cli)
}

fn emit(g: &Global, text: &str) -> Result<(), CliError> {
    match &g.out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            so.flush()?;
        }
    }
    Ok(())
}
