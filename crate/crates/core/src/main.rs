use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use coupled_qubits::cli::{self, RunOptions};
use coupled_qubits::Error;

#[derive(Parser)]
#[command(version, about = "Two coupled qubits with independent thermal reservoirs")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario (or sweep) and write CSV output.
    Simulate {
        /// Scenario JSON file.
        #[arg(required_unless_present = "preset", conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Use a shipped scenario instead of a file.
        #[arg(long, value_parser = ["fig2", "fig3"])]
        preset: Option<String>,
        /// Override the output path from the scenario.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write a gnuplot script next to each CSV.
        #[arg(long)]
        emit_gnuplot: bool,
        /// Suppress the per-scenario summary lines.
        #[arg(long)]
        quiet: bool,
    },
}

fn exit_code(err: &Error) -> ExitCode {
    if err.is_numeric() {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let Command::Simulate {
        config,
        preset,
        output,
        emit_gnuplot,
        quiet,
    } = args.command;

    let loaded = match (&config, &preset) {
        (Some(path), _) => cli::load_config(path),
        (None, Some(name)) => cli::preset(name),
        (None, None) => unreachable!("clap requires config or --preset"),
    };
    let mut cfg = match loaded {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(out) = output {
        cfg.output_path = out;
    }

    match cli::run(&cfg, &RunOptions { emit_gnuplot }) {
        Ok(reports) => {
            for r in &reports {
                for w in &r.warnings {
                    eprintln!("warning: {}: {w}", r.csv_path.display());
                }
                if !quiet {
                    println!("{}", r.summary());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
