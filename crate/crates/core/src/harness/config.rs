use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::controller::{ControllerConfig, Rig, SimulationSettings};
use crate::error::{ConfigError, Error};
use crate::estimation::{
    coefficient_from_cutoff, parse_calibration_file, SensorId, DEFAULT_CUTOFF_HZ,
};
use crate::hand::HandSpec;
use crate::nerve::NerveLineSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSettings {
    pub sensor: SensorId,
    pub step_mm: f64,
    pub jitter_mm: f64,
    pub repeats: usize,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings {
            sensor: SensorId::INDEX_PALM,
            step_mm: 5.0,
            jitter_mm: 2.5,
            repeats: 100,
        }
    }
}

/// Default output files; a `--out` flag overrides the matching entry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputPaths {
    pub trace: Option<PathBuf>,
    pub sweep: Option<PathBuf>,
    pub replay: Option<PathBuf>,
    pub calibration: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub sensors: BTreeMap<SensorId, NerveLineSpec>,
    pub simulation: SimulationSettings,
    pub controller: ControllerConfig,
    pub sweep: SweepSettings,
    /// Stored calibration to use instead of simulating the calibration poses.
    pub calibration_file: Option<PathBuf>,
    pub hand: Option<HandSpec>,
    pub output: OutputPaths,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    calibration: Option<PathBuf>,
    #[serde(default)]
    simulation: RawSimulation,
    #[serde(default)]
    filter: RawFilter,
    #[serde(default)]
    controller: ControllerConfig,
    #[serde(default)]
    sweep: RawSweep,
    #[serde(default)]
    output: RawOutput,
    sensors: Option<Vec<toml::Table>>,
    hand: Option<HandSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawSimulation {
    dt_ms: u64,
    noise_sd_counts: f64,
    spikes: bool,
    calibration_samples: usize,
}

impl Default for RawSimulation {
    fn default() -> Self {
        let s = SimulationSettings::default();
        RawSimulation {
            dt_ms: s.dt_ms,
            noise_sd_counts: s.noise_sd_counts,
            spikes: s.spikes,
            calibration_samples: s.calibration_samples,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFilter {
    #[serde(default = "default_cutoff")]
    cutoff_hz: f64,
    coefficient_a: Option<f64>,
}

fn default_cutoff() -> f64 {
    DEFAULT_CUTOFF_HZ
}

impl Default for RawFilter {
    fn default() -> Self {
        RawFilter {
            cutoff_hz: DEFAULT_CUTOFF_HZ,
            coefficient_a: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    #[serde(default)]
    sensor: u8,
    #[serde(default = "default_step")]
    step_mm: f64,
    #[serde(default = "default_jitter")]
    jitter_mm: f64,
    #[serde(default = "default_repeats")]
    repeats: usize,
}

fn default_step() -> f64 {
    SweepSettings::default().step_mm
}
fn default_jitter() -> f64 {
    SweepSettings::default().jitter_mm
}
fn default_repeats() -> usize {
    SweepSettings::default().repeats
}

impl Default for RawSweep {
    fn default() -> Self {
        RawSweep {
            sensor: 0,
            step_mm: default_step(),
            jitter_mm: default_jitter(),
            repeats: default_repeats(),
        }
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    trace: Option<PathBuf>,
    sweep: Option<PathBuf>,
    replay: Option<PathBuf>,
    calibration: Option<PathBuf>,
}

fn relative_to(base: &Path, p: Option<PathBuf>) -> Option<PathBuf> {
    p.map(|p| if p.is_absolute() { p } else { base.join(p) })
}

fn parse_sensors(
    tables: Option<Vec<toml::Table>>,
) -> Result<BTreeMap<SensorId, NerveLineSpec>, ConfigError> {
    let Some(tables) = tables else {
        return Ok(SensorId::all()
            .map(|id| (id, NerveLineSpec::default()))
            .collect());
    };
    let mut sensors = BTreeMap::new();
    for (i, mut table) in tables.into_iter().enumerate() {
        let at = |field: &str| format!("sensors[{i}].{field}");
        let id = match table.remove("id") {
            None => return Err(ConfigError::invalid(at("id"), "missing field")),
            Some(toml::Value::Integer(n)) => u8::try_from(n)
                .ok()
                .and_then(SensorId::new)
                .ok_or_else(|| ConfigError::invalid(at("id"), format!("{n} is not in 0..3")))?,
            Some(other) => {
                return Err(ConfigError::invalid(
                    at("id"),
                    format!("expected an integer, got {other}"),
                ))
            }
        };
        let spec: NerveLineSpec =
            toml::Value::Table(table)
                .try_into()
                .map_err(|e: toml::de::Error| {
                    ConfigError::invalid(format!("sensors[{i}]"), e.message())
                })?;
        spec.validate()
            .map_err(|v| ConfigError::invalid(at(v.field), v.message))?;
        if sensors.insert(id, spec).is_some() {
            return Err(ConfigError::invalid(
                at("id"),
                format!("sensor {id} configured twice"),
            ));
        }
    }
    if sensors.is_empty() {
        return Err(ConfigError::invalid(
            "sensors",
            "at least one sensor is required",
        ));
    }
    Ok(sensors)
}

/// Parses a run configuration; relative paths resolve against `base_dir`.
pub fn parse_config(text: &str, base_dir: &Path) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    let seed = raw
        .seed
        .ok_or_else(|| ConfigError::invalid("seed", "missing field; seeds are never generated"))?;
    let sensors = parse_sensors(raw.sensors)?;

    let sim = raw.simulation;
    if sim.dt_ms == 0 {
        return Err(ConfigError::invalid("simulation.dt_ms", "must be > 0"));
    }
    if !(sim.noise_sd_counts >= 0.0 && sim.noise_sd_counts.is_finite()) {
        return Err(ConfigError::invalid(
            "simulation.noise_sd_counts",
            format!("must be >= 0, got {}", sim.noise_sd_counts),
        ));
    }
    if sim.calibration_samples < crate::estimation::CALIBRATION_WINDOW {
        return Err(ConfigError::invalid(
            "simulation.calibration_samples",
            format!("must be >= {}", crate::estimation::CALIBRATION_WINDOW),
        ));
    }
    let filter_coefficient = match raw.filter.coefficient_a {
        Some(a) if (0.0..1.0).contains(&a) => a,
        Some(a) => {
            return Err(ConfigError::invalid(
                "filter.coefficient_a",
                format!("must lie in [0, 1), got {a}"),
            ))
        }
        None if raw.filter.cutoff_hz > 0.0 => {
            coefficient_from_cutoff(raw.filter.cutoff_hz, sim.dt_ms)
        }
        None => {
            return Err(ConfigError::invalid(
                "filter.cutoff_hz",
                format!("must be > 0, got {}", raw.filter.cutoff_hz),
            ))
        }
    };

    raw.controller
        .validate()
        .map_err(|(field, msg)| ConfigError::invalid(format!("controller.{field}"), msg))?;
    for (field, id) in [
        ("watched_sensor_grasp", raw.controller.watched_sensor_grasp),
        (
            "watched_sensor_regrasp",
            raw.controller.watched_sensor_regrasp,
        ),
    ] {
        if !sensors.contains_key(&id) {
            return Err(ConfigError::invalid(
                format!("controller.{field}"),
                format!("sensor {id} is not configured"),
            ));
        }
    }

    let sweep_sensor = SensorId::new(raw.sweep.sensor)
        .filter(|id| sensors.contains_key(id))
        .ok_or_else(|| {
            ConfigError::invalid(
                "sweep.sensor",
                format!("sensor {} is not configured", raw.sweep.sensor),
            )
        })?;
    if !(raw.sweep.step_mm > 0.0) {
        return Err(ConfigError::invalid("sweep.step_mm", "must be > 0"));
    }
    if !(raw.sweep.jitter_mm >= 0.0) {
        return Err(ConfigError::invalid("sweep.jitter_mm", "must be >= 0"));
    }
    if raw.sweep.repeats < 1 {
        return Err(ConfigError::invalid("sweep.repeats", "must be >= 1"));
    }

    if let Some(hand) = &raw.hand {
        hand.validate()
            .map_err(|e| ConfigError::invalid("hand", e.to_string()))?;
    }

    Ok(RunConfig {
        seed,
        sensors,
        simulation: SimulationSettings {
            dt_ms: sim.dt_ms,
            noise_sd_counts: sim.noise_sd_counts,
            filter_coefficient,
            spikes: sim.spikes,
            calibration_samples: sim.calibration_samples,
        },
        controller: raw.controller,
        sweep: SweepSettings {
            sensor: sweep_sensor,
            step_mm: raw.sweep.step_mm,
            jitter_mm: raw.sweep.jitter_mm,
            repeats: raw.sweep.repeats,
        },
        calibration_file: relative_to(base_dir, raw.calibration),
        hand: raw.hand,
        output: OutputPaths {
            trace: relative_to(base_dir, raw.output.trace),
            sweep: relative_to(base_dir, raw.output.sweep),
            replay: relative_to(base_dir, raw.output.replay),
            calibration: relative_to(base_dir, raw.output.calibration),
        },
    })
}

pub(crate) fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_config(path: &Path) -> Result<RunConfig, Error> {
    let text = read_file(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    Ok(parse_config(&text, base)?)
}

impl RunConfig {
    /// Sensor rig with calibrations from the configured file, or simulated.
    pub fn rig(&self) -> Result<Rig, Error> {
        match &self.calibration_file {
            Some(path) => {
                let entries = parse_calibration_file(&read_file(path)?)?;
                let calibrations = entries.into_iter().collect();
                Ok(Rig::with_calibrations(
                    self.sensors.clone(),
                    calibrations,
                    self.simulation.clone(),
                )?)
            }
            None => Rig::calibrated(self.sensors.clone(), self.simulation.clone(), self.seed)
                .map_err(|e| match e {
                    crate::estimation::SimulatedCalibrationError::Nerve(e) => Error::Nerve(e),
                    crate::estimation::SimulatedCalibrationError::Calibration(e) => {
                        Error::Calibration(e)
                    }
                }),
        }
    }
}
