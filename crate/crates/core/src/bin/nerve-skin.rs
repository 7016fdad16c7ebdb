use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nerve_skin::harness::{
    cmd_calibrate, cmd_replay, cmd_run, cmd_sweep, load_config, load_scenario, write_log,
    RunConfig, RunOverrides, SweepOverrides, EXIT_INPUT, EXIT_OK,
};
use nerve_skin::Error;

#[derive(Parser)]
#[command(
    name = "nerve-skin",
    about = "Nerve-line tactile sensor simulation harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the seed from the config file.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Position sweep with and without spikes; writes per-position mean and variance of p.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        repeats: Option<usize>,
        #[arg(long = "jitter-mm")]
        jitter_mm: Option<f64>,
        /// Also write the spiked pass as a serial log.
        #[arg(long = "raw-out")]
        raw_out: Option<PathBuf>,
    },
    /// Executes a scenario; writes the trace and prints the summary line.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long = "no-spikes")]
        no_spikes: bool,
    },
    /// Filters and estimates a serial log of `t_ms,sensor,counts` frames.
    Replay {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        log: PathBuf,
    },
    /// Simulates the calibration poses and writes a calibration file.
    Calibrate {
        #[command(flatten)]
        common: Common,
    },
}

fn config(common: &Common) -> Result<RunConfig, Error> {
    let mut config = load_config(&common.config)?;
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Cmd::Sweep {
            common,
            repeats,
            jitter_mm,
            raw_out,
        } => {
            let config = config(&common)?;
            let report = cmd_sweep(&config, &SweepOverrides { repeats, jitter_mm })?;
            let out = common.out.as_deref().or(config.output.sweep.as_deref());
            emit(out, &report.to_csv())?;
            if let Some(raw) = raw_out {
                emit(Some(&raw), &write_log(&report.spiked_frames))?;
            }
            Ok(EXIT_OK)
        }
        Cmd::Run {
            common,
            scenario,
            no_spikes,
        } => {
            let config = config(&common)?;
            let scenario = load_scenario(&scenario)?;
            let report = cmd_run(&config, &scenario, &RunOverrides { no_spikes })?;
            if let Some(out) = common.out.as_deref().or(config.output.trace.as_deref()) {
                emit(Some(out), &report.trace_csv())?;
            }
            println!("{}", report.summary());
            Ok(report.exit_code())
        }
        Cmd::Replay { common, log } => {
            let config = config(&common)?;
            let text =
                std::fs::read_to_string(&log).map_err(|source| Error::Io { path: log, source })?;
            let csv = cmd_replay(&config, &text)?;
            emit(
                common.out.as_deref().or(config.output.replay.as_deref()),
                &csv,
            )?;
            Ok(EXIT_OK)
        }
        Cmd::Calibrate { common } => {
            let config = config(&common)?;
            let text = cmd_calibrate(&config)?;
            emit(
                common
                    .out
                    .as_deref()
                    .or(config.output.calibration.as_deref()),
                &text,
            )?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
