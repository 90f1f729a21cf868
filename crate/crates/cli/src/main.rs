//! `harmonia`: golden examples, verification reports, field sampling and
//! reflections from the command line.
//!
//! Exit codes: 0 success, 1 a check or computation failed, 2 malformed input.

mod examples;
mod field;
mod input;
mod output;
mod reflect;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use harmonia::numerics::DEFAULT_SEED;

use crate::examples::ExampleSet;
use crate::input::{cut_override, load_json, malformed, Grid, Malformed};
use crate::reflect::{FormulaArg, PointSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "harmonia", version, about = "Dirichlet/Robin-to-Neumann operators and reflection formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (default: table for examples, csv for field, json otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Override every tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reproduce the golden examples.
    Examples {
        /// Examples fixture (path or inline JSON); defaults to the built-in set.
        #[arg(long)]
        input: Option<String>,
    },
    /// Run the randomized verification suite and the golden examples.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Examples fixture (path or inline JSON); defaults to the built-in set.
        #[arg(long)]
        input: Option<String>,
        /// Comma-separated check names; defaults to all.
        #[arg(long)]
        only: Option<String>,
    },
    /// Sample a field over a polar grid.
    Field {
        /// Field description (path or inline JSON).
        #[arg(long)]
        input: String,
        /// rmin:rmax:nr:tmin:tmax:nt
        #[arg(long)]
        grid: Grid,
    },
    /// Evaluate a reflection formula at a point.
    Reflect {
        /// Solution, data and point (path or inline JSON).
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        formula: Option<FormulaArg>,
        /// r:theta, overriding the point in the input.
        #[arg(long)]
        point: Option<String>,
        /// Also evaluate the solution directly at the reflected point.
        #[arg(long)]
        check: bool,
    },
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.tol {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(malformed(format!("--tol {t} must be a finite non-negative number")));
        }
    }
    let cut = cut_override()?;
    let load_set = |input: &Option<String>| match input {
        Some(s) => load_json::<ExampleSet>(s),
        None => ExampleSet::builtin(),
    };
    let (text, pass) = match &cli.command {
        Command::Examples { input } => {
            let report = examples::run(&load_set(input)?, cli.tol, cut)?;
            (examples::render(&report, cli.format.unwrap_or(Format::Table))?, report.pass)
        }
        Command::Verify { seed, input, only } => {
            let selection = verify::parse_selection(only.as_deref())?;
            let report = verify::run(&selection, *seed, &load_set(input)?, cli.tol, cut)?;
            (verify::render(&report, cli.format.unwrap_or(Format::Json))?, report.pass)
        }
        Command::Field { input, grid } => {
            let spec = load_json::<field::FieldSpec>(input)?;
            let table = field::run(&spec, grid, cut)?;
            (field::render(&table, cli.format.unwrap_or(Format::Csv))?, true)
        }
        Command::Reflect {
            input,
            formula,
            point,
            check,
        } => {
            let spec = load_json::<reflect::ReflectSpec>(input)?;
            let point = point.as_deref().map(PointSpec::parse_polar).transpose()?;
            let req = reflect::Request {
                formula: *formula,
                point,
                check: *check,
                tolerance: cli.tol,
                cut,
            };
            let out = reflect::run(&spec, &req)?;
            let pass = out.check.is_none_or(|c| c.pass);
            (reflect::render(&out, cli.format.unwrap_or(Format::Json))?, pass)
        }
    };
    output::emit(&text, cli.output.as_deref())?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("harmonia: {e:#}");
            if e.is::<Malformed>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
