//! `recur`: exact experiments with Laurent-type recurrences.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 when a run records a
//! mathematical failure (the report is still written).

mod cmd;
mod config;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use recur_core::kernel::{parse_rational, Rational};

#[derive(Parser, Debug)]
#[command(name = "recur", version, about = "Exact iteration of Laurent-type recurrences")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterate a recurrence over the integers or rationals
    Iterate(cmd::IterateArgs),
    /// Laurent certificate with symbolic initial data
    Laurent(cmd::LaurentArgs),
    /// Solution triples of x^2 + y^2 + z^2 - Nxyz + J = 0
    Triples(cmd::TriplesArgs),
    /// Height growth of an orbit, or degree growth of p_n(N)
    Growth(cmd::GrowthArgs),
    /// Singularity confinement probe in truncated eps-series
    Confine(cmd::ConfineArgs),
    /// Triple generation over a grid of (N, J)
    Sweep(cmd::SweepArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Flat key=value file supplying default flag values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Exact rational flag value: integer, fraction or finite decimal.
pub fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

pub enum Outcome {
    Ok,
    /// A mathematical failure was recorded in the emitted report.
    Failed,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn open_output(common: &Common) -> io::Result<Box<dyn Write>> {
    Ok(match &common.output {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(args: Vec<OsString>) -> Result<Outcome, CliError> {
    let args = config::expand(args).map_err(CliError::Usage)?;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return Ok(Outcome::Ok);
            }
            return Err(CliError::Usage(e.render().to_string()));
        }
    };
    match cli.command {
        Command::Iterate(a) => cmd::iterate(a),
        Command::Laurent(a) => cmd::laurent(a),
        Command::Triples(a) => cmd::triples(a),
        Command::Growth(a) => cmd::growth(a),
        Command::Confine(a) => cmd::confine(a),
        Command::Sweep(a) => cmd::sweep(a),
    }
}

fn main() -> ExitCode {
    match run(std::env::args_os().collect()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(2),
        Err(CliError::Usage(msg)) => {
            eprintln!("{}", msg.trim_end());
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
