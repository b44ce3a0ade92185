//! `fracspec`: experiment runner for the time-fractional solvers.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod config;
mod csvout;
mod experiments;

use clap::{Parser, Subcommand};
use config::ExperimentConfig;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fracspec", version, about = "History-free solvers for time-fractional PDEs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config file
    Run {
        config: PathBuf,
        /// output directory (overrides the config's output_dir)
        #[arg(long)]
        out: Option<PathBuf>,
        /// patch config fields, e.g. --override alpha=0.25 --override disk.tau=0
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Parse and validate a config file without running it
    Validate { config: PathBuf },
}

fn load(path: &PathBuf, overrides: &[String]) -> Result<ExperimentConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    ExperimentConfig::from_json_with_overrides(&text, overrides).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { config } => match load(&config, &[]) {
            Ok(_) => {
                println!("ok: {} is a valid config", config.display());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        },
        Command::Run { config, out, overrides } => {
            let cfg = match load(&config, &overrides) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let out_dir = out
                .or_else(|| cfg.output_dir.clone().map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("out"));
            match experiments::run(&cfg, &out_dir) {
                Ok(files) => {
                    for f in files {
                        println!("wrote {}", f.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(experiments::RunError::Io(e)) => {
                    eprintln!("io error: {e}");
                    ExitCode::FAILURE
                }
                Err(experiments::RunError::Numerical(m)) => {
                    eprintln!("numerical failure: {m}");
                    ExitCode::from(3)
                }
            }
        }
    }
}
