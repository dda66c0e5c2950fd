//! `canonphase`: tables of states, phase distributions, uncertainty measures and
//! asymptotic constants, as CSV or JSON.

mod commands;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use canonphase::{Basis, Period, StateKind};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "canonphase",
    version,
    about = "Canonical phase distributions and phase-uncertainty measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Input state.
    #[arg(long, global = true, value_parser = parse_kind)]
    kind: Option<StateKind>,

    /// Basis of printed state coefficients.
    #[arg(long, global = true, value_parser = parse_basis, default_value = "z")]
    basis: Basis,

    /// Period of the distribution (`2pi` or `pi`); detected when omitted.
    #[arg(long, global = true, value_parser = parse_period)]
    period: Option<Period>,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// State coefficients `mu, re, im`.
    State {
        #[arg(long)]
        photons: u32,
    },
    /// Holevo variance (mod-π variance for period π).
    Variance {
        #[arg(long)]
        photons: u32,
    },
    /// All uncertainty measures of one state.
    Measures {
        #[arg(long)]
        photons: u32,
    },
    /// All uncertainty measures for several photon numbers, sorted by N.
    Table {
        /// Comma-separated photon numbers.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        photons_list: Vec<u32>,
        /// Maximum worker threads.
        #[arg(long)]
        threads: Option<NonZeroUsize>,
    },
    /// Fewest `Ĵ_z` eigenstates whose truncated optimal state stays within `factor` of the exact variance.
    ApproxCount {
        #[arg(long)]
        photons: u32,
        #[arg(long, default_value_t = 2.0)]
        factor: f64,
    },
    /// Envelope maxima of the exact, intermediate and Bessel `|j0⟩` densities on `grid` phases in `(0, π/2]`.
    CompareApproximations {
        #[arg(long)]
        photons: u32,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Large-N scaling constants (`--kind optimal` or `--kind j0`).
    AsymptoticConstants,
    /// Random phases drawn from the distribution.
    Sample {
        #[arg(long)]
        photons: u32,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::State { .. } => "state",
            Command::Variance { .. } => "variance",
            Command::Measures { .. } => "measures",
            Command::Table { .. } => "table",
            Command::ApproxCount { .. } => "approx-count",
            Command::CompareApproximations { .. } => "compare-approximations",
            Command::AsymptoticConstants => "asymptotic-constants",
            Command::Sample { .. } => "sample",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

fn parse_kind(s: &str) -> Result<StateKind, String> {
    s.parse()
        .map_err(|_| format!("expected one of optimal, j0, j0j1, jj; got '{s}'"))
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    s.parse().map_err(|_| format!("expected z or y; got '{s}'"))
}

fn parse_period(s: &str) -> Result<Period, String> {
    match s.to_ascii_lowercase().as_str() {
        "2pi" => Ok(Period::TwoPi),
        "pi" => Ok(Period::Pi),
        _ => Err(format!("expected 2pi or pi; got '{s}'")),
    }
}

/// Validated settings shared by all subcommands, echoed into the JSON metadata.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    command: Command,
    kind: StateKind,
    basis: Basis,
    #[serde(skip_serializing_if = "Option::is_none")]
    period: Option<Period>,
    format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<PathBuf>,
}

/// A failure reported to the user, with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2; the message names the offending flag.
    Usage(String),
    /// Exit 3; the message names the module and operation.
    Numeric(String),
}

impl Failure {
    pub fn flag(flag: &str, msg: impl std::fmt::Display) -> Self {
        Failure::Usage(format!("invalid value for '--{flag}': {msg}"))
    }

    /// Wraps a library error raised by `module::operation`.
    pub fn numeric(module: &'static str, operation: &'static str) -> impl FnOnce(canonphase::Error) -> Self {
        move |e| Failure::Numeric(format!("numeric failure in {module}::{operation}: {e}"))
    }
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, Failure> {
        let kind = match (&cli.command, cli.kind) {
            (Command::CompareApproximations { .. }, Some(k)) if k != StateKind::J0 => {
                return Err(Failure::flag("kind", "compare-approximations only supports j0"))
            }
            (Command::CompareApproximations { .. }, _) => StateKind::J0,
            (Command::AsymptoticConstants, Some(k)) if !matches!(k, StateKind::Optimal | StateKind::J0) => {
                return Err(Failure::flag(
                    "kind",
                    format!("no asymptotic constants for '{k}'; use optimal or j0"),
                ))
            }
            (_, k) => k.unwrap_or(StateKind::Optimal),
        };
        let check = |flag: &str, n: u32| kind.validate_photons(n).map_err(|e| Failure::flag(flag, e));
        match &cli.command {
            Command::State { photons }
            | Command::Variance { photons }
            | Command::Measures { photons }
            | Command::CompareApproximations { photons, .. }
            | Command::Sample { photons, .. } => check("photons", *photons)?,
            Command::ApproxCount { photons, factor } => {
                if kind != StateKind::Optimal {
                    return Err(Failure::flag("kind", "approx-count truncates the optimal state"));
                }
                check("photons", *photons)?;
                if !(factor.is_finite() && *factor > 1.0) {
                    return Err(Failure::flag("factor", format!("must exceed 1, got {factor}")));
                }
            }
            Command::Table { photons_list, .. } => {
                for &n in photons_list {
                    check("photons-list", n)?;
                }
            }
            Command::AsymptoticConstants => {}
        }
        match &cli.command {
            Command::CompareApproximations { grid: 0, .. } => return Err(Failure::flag("grid", "must be at least 1")),
            Command::Sample { count: 0, .. } => return Err(Failure::flag("count", "must be at least 1")),
            _ => {}
        }
        if cli.period == Some(Period::Pi) && kind != StateKind::J0 {
            return Err(Failure::flag(
                "period",
                format!("the '{kind}' distribution is not π-periodic"),
            ));
        }
        Ok(RunConfig {
            command: cli.command,
            kind,
            basis: cli.basis,
            period: cli.period,
            format: cli.format,
            output: cli.output,
        })
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = RunConfig::from_cli(cli)?;
    let table = commands::execute(&config)?;
    let sink: Box<dyn Write> = match &config.output {
        Some(path) => Box::new(File::create(path).map_err(|e| Failure::flag("output", e))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let written = match config.format {
        Format::Csv => table.write_csv(&mut sink).map_err(|e| e.to_string()),
        Format::Json => {
            let meta = serde_json::json!({
                "command": config.command.name(),
                "version": env!("CARGO_PKG_VERSION"),
                "config": config,
            });
            table.write_json(&mut sink, meta).map_err(|e| e.to_string())
        }
    };
    written
        .and_then(|()| sink.flush().map_err(|e| e.to_string()))
        .map_err(|e| Failure::flag("output", e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_failures_name_module_and_operation() {
        let err = canonphase::Error::Quadrature {
            measure: "entropic length",
            estimate: 1.0,
            error: 1e-3,
        };
        match Failure::numeric("measures", "report")(err) {
            Failure::Numeric(msg) => assert!(msg.starts_with("numeric failure in measures::report"), "{msg}"),
            Failure::Usage(msg) => panic!("{msg}"),
        }
    }

    #[test]
    fn period_pi_rejected_for_two_pi_states() {
        let cli = Cli::try_parse_from(["canonphase", "variance", "--photons", "4", "--period", "pi"]).unwrap();
        match RunConfig::from_cli(cli) {
            Err(Failure::Usage(msg)) => assert!(msg.contains("--period")),
            other => panic!("{other:?}"),
        }
    }
}
