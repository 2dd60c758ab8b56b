//! Command-line front end for the skip-sequencing decision engine.
//!
//! Subcommands compute identification regions, evaluate and minimize the
//! linear loss, partition the gamma axis, reproduce the reference threshold
//! grid, run the simulator, and ingest microdata. Exit codes: 0 success,
//! 2 invalid input, 1 internal failure.

mod commands;
mod error;
mod output;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::decision::{DecideArgs, LossArgs, SweepArgs};
use commands::ingest_cmd::IngestArgs;
use commands::region::RegionCommand;
use commands::simulate::SimulateArgs;
use commands::table2::Table2Args;
use error::CliError;
use output::OutputFormat;
use params::ConfigMap;

#[derive(Parser)]
#[command(
    name = "skipseq",
    version,
    about = "Decision analysis for survey skip sequencing: identification regions, \
             loss minimization, gamma thresholds, simulation, and microdata ingestion"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: OutputFormat,
    /// JSON document supplying defaults for omitted parameters
    /// (explicit flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identification region for one design option.
    Region {
        #[command(subcommand)]
        which: RegionCommand,
    },
    /// Cost fraction, width, and loss of one option at a given gamma.
    Loss(LossArgs),
    /// Choose the loss-minimizing option at a given gamma.
    Decide(DecideArgs),
    /// Partition [0, gamma_max] into optimal-design intervals.
    Sweep(SweepArgs),
    /// Reproduce the reference gamma-threshold grid and check every cell.
    Table2(Table2Args),
    /// Generate a synthetic dataset and report region coverage.
    Simulate(SimulateArgs),
    /// Parse a microdata file and compute its observable quantities.
    Ingest(IngestArgs),
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cfg = ConfigMap::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Region { which } => commands::region::run(which, &cfg, cli.format),
        Command::Loss(args) => commands::decision::run_loss(args, &cfg, cli.format),
        Command::Decide(args) => commands::decision::run_decide(args, &cfg, cli.format),
        Command::Sweep(args) => commands::decision::run_sweep(args, &cfg, cli.format),
        Command::Table2(args) => commands::table2::run(args, &cfg, cli.format),
        Command::Simulate(args) => commands::simulate::run(args, &cfg, cli.format),
        Command::Ingest(args) => commands::ingest_cmd::run(args, &cfg, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
