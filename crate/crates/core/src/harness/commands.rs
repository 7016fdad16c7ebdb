use std::fmt::Write as _;

use super::log::{parse_log, SerialFrame};
use super::RunConfig;
use crate::controller::{run_scenario, RunResult, Scenario};
use crate::error::{Error, NerveError};
use crate::estimation::{estimate_p, write_calibration_file, SensorId};
use crate::nerve::{simulate_sweep, sweep_positions, SweepOptions, SweepSample};
use crate::rng::{stream, Stream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub position_mm: f64,
    pub mean_p_spiked: f64,
    pub var_p_spiked: f64,
    pub mean_p_smooth: f64,
    pub var_p_smooth: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Raw readings of the spiked pass as serial frames.
    pub spiked_frames: Vec<SerialFrame>,
    /// Estimated `p` of every spiked reading, in frame order.
    pub spiked_p: Vec<f64>,
}

pub const SWEEP_HEADER: &str = "position_mm,mean_p_spiked,var_p_spiked,mean_p_smooth,var_p_smooth";
pub const TRACE_HEADER: &str = "t_ms,phase,sensor,raw,filtered,p,regime";
pub const REPLAY_HEADER: &str = "t_ms,sensor,raw,filtered,p,regime";

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{SWEEP_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.6},{:.6},{:.6},{:.6}",
                r.position_mm, r.mean_p_spiked, r.var_p_spiked, r.mean_p_smooth, r.var_p_smooth
            );
        }
        out
    }

    /// Rows where the spiked variance is at least the smooth one.
    pub fn spiked_variance_dominates(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.var_p_spiked >= r.var_p_smooth)
            .count()
    }
}

fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOverrides {
    pub repeats: Option<usize>,
    pub jitter_mm: Option<f64>,
}

/// Sweep experiment: firm presses at every step along the line, once with
/// presses landing on spikes and once on a smooth line. Each reading is
/// estimated on its own (no filtering between presses).
pub fn cmd_sweep(config: &RunConfig, overrides: &SweepOverrides) -> Result<SweepReport, Error> {
    let sensor = config.sweep.sensor;
    let spec = &config.sensors[&sensor];
    let rig = config.rig()?;
    let cal = rig.calibrations()[&sensor];
    let positions = sweep_positions(spec, config.sweep.step_mm);
    let repeats = overrides.repeats.unwrap_or(config.sweep.repeats);
    if repeats == 0 {
        return Err(NerveError::NoRepeats.into());
    }
    let base = SweepOptions {
        jitter_mm: overrides.jitter_mm.unwrap_or(config.sweep.jitter_mm),
        repeats,
        spikes: true,
        noise_sd_counts: config.simulation.noise_sd_counts,
        dt_ms: config.simulation.dt_ms,
    };

    let run = |spikes: bool, which: Stream| -> Result<Vec<SweepSample>, Error> {
        let mut rng = stream(config.seed, which);
        let opts = SweepOptions {
            spikes,
            ..base.clone()
        };
        Ok(simulate_sweep(spec, &positions, &opts, &mut rng)?)
    };
    let spiked = run(true, Stream::SweepSpiked)?;
    let smooth = run(false, Stream::SweepSmooth)?;

    let p_of = |s: &SweepSample| estimate_p(f64::from(s.reading.counts), &cal).p;
    let spiked_p: Vec<f64> = spiked.iter().map(p_of).collect();
    let smooth_p: Vec<f64> = smooth.iter().map(p_of).collect();

    let rows = positions
        .iter()
        .enumerate()
        .map(|(i, &position_mm)| {
            let span = i * repeats..(i + 1) * repeats;
            let (mean_p_spiked, var_p_spiked) = mean_and_variance(&spiked_p[span.clone()]);
            let (mean_p_smooth, var_p_smooth) = mean_and_variance(&smooth_p[span]);
            SweepRow {
                position_mm,
                mean_p_spiked,
                var_p_spiked,
                mean_p_smooth,
                var_p_smooth,
            }
        })
        .collect();
    let spiked_frames = spiked
        .iter()
        .map(|s| SerialFrame {
            t_ms: s.reading.t_ms,
            sensor,
            counts: s.reading.counts,
        })
        .collect();
    Ok(SweepReport {
        rows,
        spiked_frames,
        spiked_p,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub result: RunResult,
    pub expected: crate::controller::Outcome,
}

impl RunReport {
    pub fn matches_expectation(&self) -> bool {
        self.result.outcome == self.expected
    }

    pub fn exit_code(&self) -> i32 {
        if self.matches_expectation() {
            0
        } else {
            1
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "outcome={} steps={}",
            self.result.outcome,
            self.result.regrasp_steps()
        )
    }

    pub fn trace_csv(&self) -> String {
        let mut out = format!("{TRACE_HEADER}\n");
        for rec in &self.result.trace {
            for s in &rec.samples {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    rec.t_ms,
                    rec.phase,
                    s.sensor,
                    s.raw,
                    s.estimate.v,
                    s.estimate.p,
                    s.estimate.regime
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOverrides {
    pub no_spikes: bool,
}

pub fn cmd_run(
    config: &RunConfig,
    scenario: &Scenario,
    overrides: &RunOverrides,
) -> Result<RunReport, Error> {
    let mut rig_config = config.clone();
    if overrides.no_spikes {
        rig_config.simulation.spikes = false;
    }
    let rig = rig_config.rig()?;
    let result = run_scenario(
        scenario,
        &config.controller,
        &rig,
        config.hand.as_ref(),
        config.seed,
    )?;
    Ok(RunReport {
        result,
        expected: scenario.expected_outcome,
    })
}

/// Filters and estimates every frame of a serial log, per sensor.
pub fn cmd_replay(config: &RunConfig, log_text: &str) -> Result<String, Error> {
    let frames = parse_log(log_text)?;
    let rig = config.rig()?;
    let mut channels: Vec<_> = SensorId::all().map(|id| rig.channel(id)).collect();
    let mut out = format!("{REPLAY_HEADER}\n");
    for (i, f) in frames.iter().enumerate() {
        let line = i + 1;
        let spec = &config.sensors.get(&f.sensor).ok_or_else(|| Error::Log {
            line,
            message: format!("sensor {} is not configured", f.sensor),
        })?;
        if f.counts > spec.adc_full_scale {
            return Err(Error::Log {
                line,
                message: format!(
                    "counts {} exceed full scale {}",
                    f.counts, spec.adc_full_scale
                ),
            });
        }
        let channel = channels[usize::from(f.sensor.index())]
            .as_mut()
            .expect("configured sensors have channels");
        let e = channel.push(crate::nerve::AdcReading {
            t_ms: f.t_ms,
            counts: f.counts,
        });
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            f.t_ms, f.sensor, f.counts, e.v, e.p, e.regime
        );
    }
    Ok(out)
}

/// Calibration file for every configured sensor.
pub fn cmd_calibrate(config: &RunConfig) -> Result<String, Error> {
    let rig = config.rig()?;
    let entries: Vec<_> = rig.calibrations().iter().map(|(&id, &c)| (id, c)).collect();
    Ok(write_calibration_file(&entries))
}
