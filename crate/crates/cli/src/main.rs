//! `actuation`: run, sweep, and figure-replication front end for the
//! population simulator.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use actuation_cli::commands::{cmd_replicate, cmd_run, cmd_sweep};
use actuation_cli::config::{load_config, ConfigFile};
use actuation_cli::error::{CliError, Result};

const WORKERS_ENV: &str = "ACTUATION_WORKERS";

#[derive(Parser)]
#[command(name = "actuation", version, about = "Population-level simulator for sound change")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single scenario config and write its trajectory
    Run {
        /// Scenario config file (TOML)
        #[arg(long)]
        config: PathBuf,
        /// Override the config's seed
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Also write per-agent samples every K generations
        #[arg(long, value_name = "K")]
        emit_samples: Option<u32>,
    },
    /// Run a parameter-grid config and write its table and heatmap
    Sweep {
        /// Sweep config file (TOML, with [base] and [[axes]])
        #[arg(long)]
        config: PathBuf,
        /// Override the base config's seed
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Override the sweep's replicate count
        #[arg(long)]
        replicates: Option<usize>,
    },
    /// Re-run a built-in figure preset
    Replicate {
        /// Figure id: fig4, fig5, fig6, fig8, fig9, or fig10
        figure: String,
        /// Root seed for the preset's runs
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Output directory
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Override the replicate count of sweep-style panels
        #[arg(long)]
        replicates: Option<usize>,
    },
}

fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Ok(raw) => {
            let n: usize = raw.parse().map_err(|_| {
                CliError::Usage(format!("{WORKERS_ENV} must be a non-negative integer, got {raw:?}"))
            })?;
            // 0 means one thread per core, same as unset
            Ok(if n == 0 { None } else { Some(n) })
        }
        Err(_) => Ok(None),
    }
}

fn run_cli(cli: Cli) -> Result<Vec<PathBuf>> {
    let workers = workers_from_env()?;
    match cli.command {
        Command::Run { config, seed, out_dir, emit_samples } => {
            match load_config(&config)? {
                ConfigFile::Scenario(mut cfg) => {
                    if let Some(s) = seed {
                        cfg.seed = s;
                    }
                    cmd_run(&cfg, &out_dir, emit_samples)
                }
                ConfigFile::Sweep(_) => Err(CliError::Usage(format!(
                    "{} is a sweep config; use the sweep command",
                    config.display()
                ))),
            }
        }
        Command::Sweep { config, seed, out_dir, replicates } => match load_config(&config)? {
            ConfigFile::Sweep(mut spec) => {
                if let Some(s) = seed {
                    spec.base.seed = s;
                }
                if let Some(r) = replicates {
                    spec.replicates = r;
                }
                cmd_sweep(&spec, &out_dir, workers)
            }
            ConfigFile::Scenario(_) => Err(CliError::Usage(format!(
                "{} is a scenario config; use the run command",
                config.display()
            ))),
        },
        Command::Replicate { figure, seed, out_dir, replicates } => {
            cmd_replicate(&figure, seed, &out_dir, workers, replicates)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_cli(cli) {
        Ok(files) => {
            for file in files {
                println!("wrote {}", file.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
