//! Configuration loading and the command implementations behind the
//! `nerve-skin` binary. Commands return their output as values; the binary
//! only parses flags, writes files and maps errors to exit codes.

mod commands;
mod config;
mod log;

pub use commands::{
    cmd_calibrate, cmd_replay, cmd_run, cmd_sweep, RunOverrides, RunReport, SweepOverrides,
    SweepReport, SweepRow, REPLAY_HEADER, SWEEP_HEADER, TRACE_HEADER,
};
pub use config::{load_config, parse_config, OutputPaths, RunConfig, SweepSettings};
pub use log::{parse_frame, parse_log, write_log, SerialFrame, MAX_FRAME_COUNTS};

use std::path::Path;

use crate::controller::Scenario;
use crate::error::Error;

/// Exit code for success or an expected outcome.
pub const EXIT_OK: i32 = 0;
/// Exit code when a scenario ends with an unexpected outcome.
pub const EXIT_MISMATCH: i32 = 1;
/// Exit code for input or I/O errors.
pub const EXIT_INPUT: i32 = 2;

pub fn load_scenario(path: &Path) -> Result<Scenario, Error> {
    Ok(config::read_file(path)?.parse()?)
}
