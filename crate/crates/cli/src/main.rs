//! `lrd-spectra`: evaluate catalog models, verify the Abelian/Tauberian
//! pairs numerically and export figure data as CSV.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 numeric failure
//! (output is still written, with a `flag` column), 4 inconclusive
//! verification.

mod commands;
mod config;
mod figures;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::GridSpec;

#[derive(Debug, Parser)]
#[command(name = "lrd-spectra", version, about = "Spectra and Tauberian asymptotics of long-range dependent isotropic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Catalog of models.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
    /// Evaluate a quantity of a model on a grid.
    Eval(EvalArgs),
    /// Check both sides of a theorem on a model.
    Verify(VerifyArgs),
    /// Export the data of a figure (`list` for the ids, `all` for every figure).
    Figure(FigureArgs),
}

#[derive(Debug, Subcommand)]
enum ModelsAction {
    /// Ids, parameters, theorems and sources.
    List,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Catalog id, e.g. cauchy_bessel.
    #[arg(long)]
    model: String,
    /// Model parameter as key=value (repeatable).
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed form where known, the spectral route otherwise.
    Auto,
    /// Closed form only.
    Closed,
    /// Spectral transforms only.
    Transform,
    /// Brute-force double integral over the ball (b_n only).
    MonteCarlo,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// cov, G, g, b_n or l_n.
    #[arg(long)]
    quantity: String,
    /// <lin|log>:<min>:<max>:<count>.
    #[arg(long, value_parser = parse_grid)]
    grid: GridSpec,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    /// Monte Carlo seed (default from the defaults file).
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo sample count (default from the defaults file).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// T2, T3, T4, T6-sphere, T6-ball, OR-ball, OR-sphere, OR-density, T11,
    /// bingham_gamma2, or `all` for every theorem listed for the model.
    #[arg(long)]
    theorem: String,
    /// Relative tolerance (default from the defaults file).
    #[arg(long)]
    tol: Option<f64>,
    /// Radii at which the sides are compared, replacing the model's scales.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Figure id (1a … 10c), `list` or `all`.
    id: String,
    /// Output file; a directory for `all`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    s.parse()
}

/// Error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    pub fn inconclusive(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
        }
    }

    // unwritable output is reported like a configuration error
    pub fn io(message: impl Into<String>) -> Self {
        Failure::usage(message)
    }
}

/// Standard output, or a buffered file.
pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match out {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let f = File::create(p).map_err(|e| Failure::io(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let defaults = config::Defaults::load()?;
    match cli.command {
        Command::Models {
            action: ModelsAction::List,
        } => commands::models_list(&mut *sink(None)?),
        Command::Eval(a) => {
            let model = commands::build_model(&a.model.model, &a.model.params)?;
            let req = commands::EvalRequest {
                quantity: &a.quantity,
                grid: a.grid,
                method: a.method,
                seed: a.seed.unwrap_or(defaults.seed),
                samples: a.samples.unwrap_or(defaults.samples),
            };
            let table = commands::eval(&model, &req)?;
            table.write(sink(a.out.as_deref())?)?;
            table.status()
        }
        Command::Verify(a) => {
            let model = commands::build_model(&a.model.model, &a.model.params)?;
            let tol = a.tol.unwrap_or(defaults.tol);
            commands::verify(&model, &a.theorem, tol, a.grid.as_ref(), &mut *sink(a.out.as_deref())?)
        }
        Command::Figure(a) => figures::run(&defaults, &a.id, a.out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lrd-spectra: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
