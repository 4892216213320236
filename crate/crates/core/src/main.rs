use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::LevelFilter;

use paramp::commands::{
    gain_svg, run_derive_command, run_gain_command, run_noise_command, run_plot_command,
    run_pump_command, run_sweep_command, stem,
};
use paramp::config::Config;
use paramp::exec::Execution;
use paramp::model::ModelVariant;
use paramp::{Error, Result};

/// Josephson parametric amplifier simulator.
#[derive(Parser)]
#[command(name = "paramp", version)]
struct Cli {
    /// Evaluate grid points one at a time.
    #[arg(long, global = true)]
    serial: bool,
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print derived circuit quantities.
    Derive {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the pump to its steady state.
    Pump {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        model: Option<ModelVariant>,
        /// Write every integrator step as CSV.
        #[arg(long)]
        trajectory: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gain profile around the pump; repeat --model to compare models.
    Gain {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        model: Vec<ModelVariant>,
        /// CSV path; with several models each gets a `_<model>` suffix.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG overlay next to the CSV.
        #[arg(long)]
        plot: bool,
    },
    /// Peak gain and bandwidth over a grid of pump powers and frequencies.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        model: Option<ModelVariant>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Added noise photons from measured SNR improvement.
    Noise {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG overlay of gain CSVs.
    Plot {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io {
                path: "<stdout>".into(),
                source: e,
            }),
    }
}

fn suffixed(out: &Path, model: ModelVariant) -> PathBuf {
    let ext = out
        .extension()
        .map_or("csv".into(), |e| e.to_string_lossy());
    out.with_file_name(format!("{}_{}.{ext}", stem(out), model.name()))
}

fn run(cli: Cli) -> Result<()> {
    let execution = if cli.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Derive { config, out } => {
            let cfg = Config::load(&config)?;
            emit(out.as_deref(), &run_derive_command(&cfg)?)
        }
        Command::Pump {
            config,
            model,
            trajectory,
            out,
        } => {
            let cfg = Config::load(&config)?;
            let run = run_pump_command(&cfg, model, trajectory.is_some())?;
            if let (Some(path), Some(csv)) = (&trajectory, &run.trajectory_csv) {
                emit(Some(path), csv)?;
            }
            emit(out.as_deref(), &run.summary)?;
            run.report.require_converged().map(|_| ())
        }
        Command::Gain {
            config,
            model,
            out,
            plot,
        } => {
            let cfg = Config::load(&config)?;
            if out.is_none() && (plot || model.len() > 1) {
                return Err(Error::Config(
                    "--out is required with --plot or several models".into(),
                ));
            }
            let runs = run_gain_command(&cfg, &model, execution)?;
            let mut labelled = Vec::new();
            for r in &runs {
                let path = match (&out, runs.len()) {
                    (Some(o), 1) => Some(o.clone()),
                    (Some(o), _) => Some(suffixed(o, r.model)),
                    (None, _) => None,
                };
                emit(path.as_deref(), &r.csv)?;
                let label = path.as_deref().map_or_else(|| r.model.name().into(), stem);
                labelled.push((label, &r.profile));
            }
            if plot {
                let svg_path = out.expect("checked above").with_extension("svg");
                emit(Some(&svg_path), &gain_svg(&labelled)?)?;
            }
            Ok(())
        }
        Command::Sweep { config, model, out } => {
            let cfg = Config::load(&config)?;
            emit(out.as_deref(), &run_sweep_command(&cfg, model, execution)?)
        }
        Command::Noise { input, out } => emit(out.as_deref(), &run_noise_command(&input)?),
        Command::Plot { inputs, out } => emit(out.as_deref(), &run_plot_command(&inputs)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose {
            LevelFilter::Info
        } else {
            LevelFilter::Warn
        })
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("paramp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
