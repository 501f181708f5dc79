//! `neurotopo`: train network populations, measure them, build neuron-type
//! vocabularies and compare populations.

mod cmd;
mod population;
mod record;
mod svg;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "neurotopo", version, about = "Complex-network analysis of trained MLP populations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a population of networks differing only in the weight seed.
    Train(cmd::train::TrainArgs),
    /// Compute per-neuron centrality measures for every model in a directory.
    Measure(cmd::measure::MeasureArgs),
    /// Build a neuron-type vocabulary or assign neurons to one.
    Vocab {
        #[command(subcommand)]
        action: cmd::vocab::VocabCommand,
    },
    /// Cross-vocabulary Jensen-Shannon divergence over a population.
    Compare(cmd::compare::CompareArgs),
    /// Emit plot-ready CSV and optional SVG.
    Plot(cmd::plot::PlotArgs),
    /// Parse an IDX image/label pair and report its contents.
    Inspect(cmd::inspect::InspectArgs),
}

/// Errors that carry their exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or configuration (exit 2).
    Usage(String),
    /// Missing or unreadable inputs (exit 3).
    Data(String),
    /// Some work items failed; outputs were still written (exit 1).
    Partial(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Partial(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CliError>() {
            return match e {
                CliError::Usage(_) => 2,
                CliError::Data(_) => 3,
                CliError::Partial(_) => 1,
            };
        }
        if let Some(e) = cause.downcast_ref::<neurotopo::Error>() {
            return if e.is_data_error() {
                3
            } else if matches!(e, neurotopo::Error::InvalidArgument(_) | neurotopo::Error::Structure(_)) {
                2
            } else {
                1
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 3;
        }
    }
    1
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("NEUROTOPO_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("NEUROTOPO_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| match cli.command {
        Command::Train(a) => cmd::train::run(a),
        Command::Measure(a) => cmd::measure::run(a),
        Command::Vocab { action } => cmd::vocab::run(action),
        Command::Compare(a) => cmd::compare::run(a),
        Command::Plot(a) => cmd::plot::run(a),
        Command::Inspect(a) => cmd::inspect::run(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Where to write the run record. Defaults to `run.json` beside the output.
#[derive(Args, Clone, Debug)]
pub struct RecordArgs {
    #[arg(long, value_name = "FILE")]
    pub run_json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scaling {
    Unit,
    Zscore,
}
