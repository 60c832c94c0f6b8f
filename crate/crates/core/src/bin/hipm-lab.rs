use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hipm_lab::cli::{cmd_experiment, cmd_hipm, cmd_plot, cmd_wow, HipmOptions};
use hipm_lab::experiment::ExperimentId;
use hipm_lab::hipm::{AscentConfig, SufficientIncrease};

#[derive(Parser)]
#[command(name = "hipm-lab", version, about = "Distances between laws of random probability measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wasserstein-over-Wasserstein distance between two law CSV files
    Wow { file1: PathBuf, file2: PathBuf },
    /// Lipschitz hierarchical IPM between two law CSV files
    Hipm {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long = "grid-M")]
        grid_m: Option<usize>,
        #[arg(long, default_value_t = 8)]
        n_init: usize,
        #[arg(long, default_value_t = 500)]
        n_step: usize,
        #[arg(long, default_value_t = 1e-7)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the identity initialization
        #[arg(long)]
        no_identity_init: bool,
        /// Use the unprojected gradient norm in the sufficient-increase test
        #[arg(long)]
        raw_armijo: bool,
        #[arg(long)]
        with_lower_bound: bool,
        /// Write per-iteration ascent traces to this CSV file
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run a seeded experiment and write its CSV
    Experiment {
        /// fig1-left | fig1-right | fig2-alpha | fig2-N
        id: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        paper_scale: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Render an experiment CSV as SVG
    Plot {
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        loglog: bool,
    },
}

fn run(cli: Cli) -> hipm_lab::Result<()> {
    match cli.command {
        Command::Wow { file1, file2 } => println!("{}", cmd_wow(&file1, &file2)?),
        Command::Hipm {
            file1,
            file2,
            grid_m,
            n_init,
            n_step,
            eps,
            seed,
            no_identity_init,
            raw_armijo,
            with_lower_bound,
            trace,
        } => {
            let opts = HipmOptions {
                grid_points: grid_m,
                ascent: AscentConfig {
                    n_init,
                    n_step,
                    epsilon: eps,
                    include_identity_init: !no_identity_init,
                    seed,
                    sufficient_increase: if raw_armijo {
                        SufficientIncrease::Raw
                    } else {
                        SufficientIncrease::Projected
                    },
                    record_trace: false,
                },
                with_lower_bound,
                trace_csv: trace,
            };
            println!("{}", cmd_hipm(&file1, &file2, &opts)?);
        }
        Command::Experiment {
            id,
            config,
            paper_scale,
            out_dir,
        } => {
            let id: ExperimentId = id.parse()?;
            let path = cmd_experiment(id, config.as_deref(), paper_scale, out_dir.as_deref())?;
            println!("{}", path.display());
        }
        Command::Plot { csv, out, loglog } => cmd_plot(&csv, &out, loglog)?,
    }
    Ok(())
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
