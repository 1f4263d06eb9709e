mod commands;
mod error;
mod output;

use clap::{Parser, Subcommand};
use commands::{BlockEvalArgs, CrossingArgs, FiguresArgs, ScanArgs, SynthArgs};
use error::{CliError, CliResult};
use std::process::ExitCode;

/// Worker count override for all parallel work.
const THREADS_VAR: &str = "CROSSING_BLOCKS_THREADS";

#[derive(Parser)]
#[command(
    name = "crossing-blocks",
    version,
    about = "Conformal blocks and averaged crossing weights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single block evaluations.
    #[command(subcommand)]
    Block(BlockCommand),
    /// Data behind the two weight figures.
    Figures(FiguresArgs),
    /// Averaged weights on a t grid.
    #[command(subcommand)]
    Weights(WeightsCommand),
    /// Both sides of the averaged crossing equation for a spectrum file.
    Crossing(CrossingArgs),
    /// Spectrum file utilities.
    #[command(subcommand)]
    Spectrum(SpectrumCommand),
}

#[derive(Subcommand)]
enum BlockCommand {
    /// H̃ in one channel at one point.
    Eval(BlockEvalArgs),
}

#[derive(Subcommand)]
enum WeightsCommand {
    /// W, W̌ and their main terms.
    Scan(ScanArgs),
}

#[derive(Subcommand)]
enum SpectrumCommand {
    /// Write a deterministic synthetic spectrum.
    Synth(SynthArgs),
}

fn init_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize =
        raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Input(format!("{THREADS_VAR} must be a positive integer, got '{raw}'"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    init_threads()?;
    match cli.command {
        Command::Block(BlockCommand::Eval(a)) => commands::block_eval(&a),
        Command::Figures(a) => commands::figures(&a),
        Command::Weights(WeightsCommand::Scan(a)) => commands::weights_scan(&a),
        Command::Crossing(a) => commands::crossing(&a),
        Command::Spectrum(SpectrumCommand::Synth(a)) => commands::spectrum_synth(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
