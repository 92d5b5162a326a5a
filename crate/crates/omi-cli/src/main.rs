mod config;
mod presets;
mod runner;

use clap::{Args, Parser, Subcommand};
use runner::{Failure, RunOptions};
use std::path::PathBuf;

/// Simulation and spectral-analysis toolkit for a three-mode
/// cavity-optomechanical entanglement interface.
#[derive(Parser)]
#[command(name = "omi", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML config file.
    Run {
        /// Path to the experiment config.
        config: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Built-in experiment presets.
    Preset {
        #[command(subcommand)]
        command: PresetCommand,
    },
}

#[derive(Subcommand)]
enum PresetCommand {
    /// List available presets with a one-line summary each.
    List,
    /// Print a preset's TOML config to stdout.
    Dump { name: String },
    /// Run a preset.
    Run {
        name: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Directory for output CSV files and the manifest.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Number of worker threads for sweep entries.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Treat truncation-unreliable discrete results as an error (exit 4).
    #[arg(long)]
    strict_truncation: bool,
}

impl CommonOpts {
    fn into_run_options(self) -> RunOptions {
        RunOptions {
            out_dir: self.out_dir,
            parallel: self.parallel.max(1),
            strict_truncation: self.strict_truncation,
        }
    }
}

fn execute(text: &str, opts: RunOptions) -> Result<(), Failure> {
    let names = runner::run(text, &opts)?;
    for n in &names {
        println!("wrote {}", opts.out_dir.join(n).display());
    }
    Ok(())
}

fn real_main() -> Result<(), Failure> {
    match Cli::parse().command {
        Command::Run { config, opts } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Failure::Config(format!("{}: {e}", config.display())))?;
            execute(&text, opts.into_run_options())
        }
        Command::Preset { command } => match command {
            PresetCommand::List => {
                for p in presets::PRESETS {
                    println!("{:<16} {}", p.name, p.summary);
                }
                Ok(())
            }
            PresetCommand::Dump { name } => {
                let p = presets::find(&name).map_err(Failure::Config)?;
                print!("{}", p.config);
                Ok(())
            }
            PresetCommand::Run { name, opts } => {
                let p = presets::find(&name).map_err(Failure::Config)?;
                execute(p.config, opts.into_run_options())
            }
        },
    }
}

fn main() {
    if let Err(f) = real_main() {
        eprintln!("error: {}", f.message());
        std::process::exit(f.exit_code());
    }
}
