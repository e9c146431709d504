use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use binormix_cli::commands::{
    cmd_classify, cmd_emit_plot, cmd_modes, cmd_qroots, cmd_ridgeline, cmd_scan,
};
use binormix_cli::plot::{write_bundle, write_ridgeline, PlotOptions};
use binormix_cli::{load_config, CliError, CliResult};

/// Classification and mode analysis of two-component bivariate normal mixtures.
#[derive(Parser)]
#[command(name = "binormix", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pair type, covariance flags, canonical form, singular conic and cusp.
    Classify { file: PathBuf },
    /// Roots of q in [0, 1] and the resulting mode bound.
    Qroots { file: PathBuf },
    /// Modes of the mixture by Newton search and by the grid oracle.
    Modes {
        file: PathBuf,
        /// Mixing weight of the first component; defaults to the file's `c`.
        #[arg(long)]
        c: Option<f64>,
    },
    /// Ridgeline samples as CSV (alpha,x,y,f1,f2,q).
    Ridgeline {
        file: PathBuf,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Contours, singular set, ridgeline and their images as CSV files.
    EmitPlot {
        file: PathBuf,
        /// Lattice points per side for the contours.
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value = "plot")]
        out: PathBuf,
    },
    /// Random-pair check of the per-type mode bounds.
    Scan {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per type; each is run at five mixing weights.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).map_err(CliError::io("<stdout>"))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Classify { file } => print_json(&cmd_classify(&load_config(&file)?)?),
        Command::Qroots { file } => print_json(&cmd_qroots(&load_config(&file)?)?),
        Command::Modes { file, c } => print_json(&cmd_modes(&load_config(&file)?, c)?),
        Command::Ridgeline { file, samples } => {
            let rows = cmd_ridgeline(&load_config(&file)?, samples)?;
            write_ridgeline(std::io::stdout().lock(), &rows)
        }
        Command::EmitPlot { file, grid, out } => {
            let opts = PlotOptions {
                grid,
                ..PlotOptions::default()
            };
            let bundle = cmd_emit_plot(&load_config(&file)?, &opts)?;
            for path in write_bundle(&bundle, &opts, &out)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Scan { seed, trials } => {
            let (report, violation) = cmd_scan(seed, trials)?;
            print_json(&report)?;
            violation.map_or(Ok(()), Err)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("binormix: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
