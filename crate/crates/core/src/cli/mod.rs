//! Command-line surface: argument parsing, the commands, and output records.

mod commands;
mod output;

pub use commands::{cmd_expand, cmd_residues, cmd_symbols, cmd_theorem1, cmd_verify, VerifyArgs};
pub use output::{fmt_float, Format, NumericRendering, OutputRecord, Status};

use crate::exact_algebra::{parse_coefficient, q, Coefficient, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use num::{BigInt, Zero};
use std::ffi::OsString;
use std::ops::RangeInclusive;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_MISMATCH,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "edgegreen", version, about = "Exact Green operator asymptotics at two-particle coalescence edges")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EdgeArg {
    En,
    Ee,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Noninteracting,
    Cusp,
    Molecule,
    Poles,
    Functionals,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Taylor coefficients in the cone distance r
    Expand {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(crate::series_engine::TaylorTarget::NAMES))]
        target: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// substitute a value for the nuclear charge Z
        #[arg(long = "Z", value_parser = parse_rational)]
        z: Option<Rational>,
        /// charge of the near nucleus (molecule target)
        #[arg(long, value_parser = parse_coefficient_arg)]
        za: Option<Coefficient>,
        /// charge of the far nucleus (molecule target)
        #[arg(long, value_parser = parse_coefficient_arg)]
        zb: Option<Coefficient>,
    },
    /// Sector-restricted parametrix symbols d^(k)_(n,j)
    Symbols {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=2))]
        level: u32,
        /// sectors as a..b (end exclusive), a..=b, or a single l
        #[arg(long, default_value = "0..=2", value_parser = parse_sector)]
        sector: RangeInclusive<u32>,
        /// highest n
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Residues entering the Green symbols, against the transcribed tables
    Residues {
        /// ga, g02, g03, g12, g13, g22, g23 or all
        #[arg(long, default_value = "all")]
        green: String,
        #[arg(long, default_value_t = 5)]
        l_max: u32,
        #[arg(long, value_parser = parse_sector)]
        sector: Option<RangeInclusive<u32>>,
    },
    /// Multipliers of the leading Green operator expansion
    Theorem1 {
        #[arg(long, value_enum)]
        edge: Option<EdgeArg>,
    },
    /// Verification suites
    Verify {
        #[arg(long, value_enum)]
        case: Case,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long = "Z", value_parser = parse_rational)]
        z: Option<Rational>,
        /// relative tolerance for numerical comparisons
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// weight gamma of the contour Re w = 7/2 - gamma
        #[arg(long, default_value = "1", value_parser = parse_gamma)]
        gamma: Rational,
        #[arg(long, value_enum)]
        edge: Option<EdgeArg>,
        #[arg(long, default_value = "1", value_parser = parse_coefficient_arg)]
        za: Coefficient,
        #[arg(long, default_value = "1", value_parser = parse_coefficient_arg)]
        zb: Coefficient,
    },
}

/// Integer, fraction a/b or terminating decimal.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| format!("invalid rational '{s}'"))?;
        let b: BigInt = b.trim().parse().map_err(|_| format!("invalid rational '{s}'"))?;
        if b.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        return Ok(Rational::new(a, b));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("invalid rational '{s}'"));
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| format!("invalid rational '{s}'"))?;
    let r = Rational::new(digits, num::pow(BigInt::from(10), frac.len()));
    Ok(if neg { -r } else { r })
}

/// A contour weight in the open interval (1/2, 3/2).
pub fn parse_gamma(s: &str) -> Result<Rational, String> {
    let g = parse_rational(s)?;
    if g <= q(1, 2) || g >= q(3, 2) {
        return Err(format!("gamma = {g} must lie in (1/2, 3/2)"));
    }
    Ok(g)
}

fn parse_coefficient_arg(s: &str) -> Result<Coefficient, String> {
    parse_coefficient(s).map_err(|e| e.to_string())
}

/// `a..b` (end exclusive, possibly empty), `a..=b`, or `l`.
pub fn parse_sector(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |x: &str| x.trim().parse::<u32>().map_err(|_| format!("invalid sector range '{s}'"));
    if let Some((a, b)) = s.split_once("..=") {
        return Ok(num(a)?..=num(b)?);
    }
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        // an empty range is represented by start > end
        return Ok(if b == 0 { 1..=0 } else { a..=b - 1 });
    }
    let l = num(s)?;
    Ok(l..=l)
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Result<OutputRecord, CliError> {
    match &cli.command {
        Command::Expand { target, order, z, za, zb } => cmd_expand(target, *order, z.as_ref(), za.as_ref(), zb.as_ref()),
        Command::Symbols { level, sector, order } => cmd_symbols(*level, sector.clone(), *order),
        Command::Residues { green, l_max, sector } => cmd_residues(green, *l_max, sector.clone()),
        Command::Theorem1 { edge } => cmd_theorem1(*edge),
        Command::Verify { case, l, z, tol, gamma, edge, za, zb } => cmd_verify(&VerifyArgs {
            case: *case,
            l: *l,
            z: z.clone(),
            tol: *tol,
            gamma: gamma.clone(),
            edge: *edge,
            za: za.clone(),
            zb: zb.clone(),
        }),
    }
}

/// 0 unless the record reports a failed verification.
pub fn exit_code(rec: &OutputRecord) -> i32 {
    if rec.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

/// Parse, run and render; never exits the process.
pub fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution { code, stdout: String::new(), stderr: text }
            } else {
                Execution { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(&cli) {
        Ok(rec) => {
            Execution { code: exit_code(&rec), stdout: rec.render(cli.format), stderr: String::new() }
        }
        Err(e) => Execution { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
