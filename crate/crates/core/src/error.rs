use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NerveError {
    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("invalid nerve line spec: {0}")]
    InvalidSpec(String),
    #[error("bridge resistance must be >= 0, got {0}")]
    NegativeBridge(f64),
    #[error("repeats must be >= 1")]
    NoRepeats,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalibrationError {
    #[error("{pose} stream has {len} samples, need at least {need}")]
    ShortStream {
        pose: &'static str,
        len: usize,
        need: usize,
    },
    #[error("calibration ordering violated: {lower} = {lower_value} is not below {upper} = {upper_value}")]
    Ordering {
        lower: &'static str,
        lower_value: u32,
        upper: &'static str,
        upper_value: u32,
    },
    #[error("calibration file line {line}: {message}")]
    File { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HandError {
    #[error("pulley radius must be > 0, got {0}")]
    NonPositiveRadius(f64),
    #[error("posture `{label}` is not defined for actuator {actuator}")]
    UnknownPosture { label: String, actuator: u8 },
    #[error("duplicate actuator id {0}")]
    DuplicateActuator(u8),
    #[error("invalid hand config at `{path}`: {message}")]
    Invalid { path: String, message: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("scenario parse error: {0}")]
    Parse(String),
    #[error("invalid scenario at `{path}`: {message}")]
    Invalid { path: String, message: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid config at `{path}`: {message}")]
    Invalid { path: String, message: String },
}

impl ConfigError {
    pub(crate) fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Field path of the offending value, when known.
    pub fn path(&self) -> Option<&str> {
        match self {
            ConfigError::Invalid { path, .. } => Some(path),
            ConfigError::Parse(_) => None,
        }
    }
}

/// Top-level error of the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Calibration(#[from] CalibrationError),
    #[error(transparent)]
    Hand(#[from] HandError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("log line {line}: {message}")]
    Log { line: usize, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
