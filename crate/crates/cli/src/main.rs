use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::LevelFilter;
use unified_clf_cli::commands::{simulate_scenario, verify_suite};
use unified_clf_cli::verify::Suite;
use unified_clf_cli::CliError;

/// Bounded-input stabilizing controllers: scenario runs and property checks.
#[derive(Debug, Parser)]
#[command(name = "unified-clf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate every controller of a scenario and write CSV plus summary.json.
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a seeded property suite over random states.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn log_level() -> Result<LevelFilter, CliError> {
    match std::env::var("CLF_LOG").as_deref() {
        Err(_) | Ok("info") => Ok(LevelFilter::Info),
        Ok("quiet") => Ok(LevelFilter::Off),
        Ok("debug") => Ok(LevelFilter::Debug),
        Ok(other) => Err(CliError::Config(format!(
            "CLF_LOG must be quiet, info or debug, got `{other}`"
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { scenario, out } => {
            let summary = simulate_scenario(&scenario, &out)?;
            log::info!(
                "{} controllers written to {}",
                summary.controllers.len(),
                out.display()
            );
        }
        Command::Verify {
            suite,
            seed,
            samples,
        } => {
            verify_suite(suite, seed, samples)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match log_level() {
        Ok(level) => level,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_target(false)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
