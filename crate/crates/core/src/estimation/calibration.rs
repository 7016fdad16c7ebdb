use std::fmt::Write as _;

use rand::Rng;

use super::{FilterState, SensorId};
use crate::error::{CalibrationError, NerveError};
use crate::nerve::{sense, ContactPoint, ContactSet, NerveLineSpec};

/// Samples averaged for each calibration value.
pub const CALIBRATION_WINDOW: usize = 100;

/// Filtered counts at the three calibration poses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CalibrationData {
    /// Untouched line.
    pub v_max: u32,
    /// Contact at the insulation point.
    pub v_mid: u32,
    /// Contact at the base end of the used range.
    pub v_min: u32,
}

impl CalibrationData {
    pub fn new(v_max: u32, v_mid: u32, v_min: u32) -> Result<Self, CalibrationError> {
        if v_min >= v_mid {
            return Err(CalibrationError::Ordering {
                lower: "v_min",
                lower_value: v_min,
                upper: "v_mid",
                upper_value: v_mid,
            });
        }
        if v_mid >= v_max {
            return Err(CalibrationError::Ordering {
                lower: "v_mid",
                lower_value: v_mid,
                upper: "v_max",
                upper_value: v_max,
            });
        }
        Ok(CalibrationData {
            v_max,
            v_mid,
            v_min,
        })
    }
}

fn window_mean(pose: &'static str, stream: &[f64]) -> Result<u32, CalibrationError> {
    if stream.len() < CALIBRATION_WINDOW {
        return Err(CalibrationError::ShortStream {
            pose,
            len: stream.len(),
            need: CALIBRATION_WINDOW,
        });
    }
    let tail = &stream[stream.len() - CALIBRATION_WINDOW..];
    let mean = tail.iter().sum::<f64>() / CALIBRATION_WINDOW as f64;
    Ok(mean.round().max(0.0) as u32)
}

/// Averages the last [`CALIBRATION_WINDOW`] filtered samples of each pose.
pub fn calibrate(
    open: &[f64],
    mid: &[f64],
    base: &[f64],
) -> Result<CalibrationData, CalibrationError> {
    let v_max = window_mean("open", open)?;
    let v_mid = window_mean("insulation-point", mid)?;
    let v_min = window_mean("base", base)?;
    CalibrationData::new(v_max, v_mid, v_min)
}

/// Runs the calibration procedure against a simulated line: `samples`
/// filtered readings for each pose (open, firm press at the tip end, firm
/// press at the base).
pub fn simulate_calibration<R: Rng + ?Sized>(
    spec: &NerveLineSpec,
    filter: FilterState,
    noise_sd_counts: f64,
    samples: usize,
    rng: &mut R,
) -> Result<CalibrationData, SimulatedCalibrationError> {
    let poses = [
        ContactSet::empty(),
        ContactSet::single(ContactPoint::firm(spec.effective_length_mm)),
        ContactSet::single(ContactPoint::firm(0.0)),
    ];
    let mut streams: Vec<Vec<f64>> = Vec::with_capacity(3);
    for pose in &poses {
        let mut f = filter;
        let mut stream = Vec::with_capacity(samples);
        for i in 0..samples {
            let t_ms = i as u64 * filter.dt_ms;
            let reading = sense(spec, pose, None, noise_sd_counts, t_ms, rng)?;
            stream.push(f.step(f64::from(reading.counts)));
        }
        streams.push(stream);
    }
    Ok(calibrate(&streams[0], &streams[1], &streams[2])?)
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SimulatedCalibrationError {
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Calibration(#[from] CalibrationError),
}

/// Serialises calibrations as `key=value` lines, one block per sensor.
pub fn write_calibration_file(entries: &[(SensorId, CalibrationData)]) -> String {
    let mut out = String::new();
    for (id, cal) in entries {
        let _ = writeln!(out, "sensor={id}");
        let _ = writeln!(out, "v_max={}", cal.v_max);
        let _ = writeln!(out, "v_mid={}", cal.v_mid);
        let _ = writeln!(out, "v_min={}", cal.v_min);
    }
    out
}

pub fn parse_calibration_file(
    text: &str,
) -> Result<Vec<(SensorId, CalibrationData)>, CalibrationError> {
    struct Block {
        id: SensorId,
        line: usize,
        values: [Option<u32>; 3],
    }

    fn finish(block: Block) -> Result<(SensorId, CalibrationData), CalibrationError> {
        let missing = ["v_max", "v_mid", "v_min"]
            .iter()
            .zip(block.values)
            .find(|(_, v)| v.is_none());
        if let Some((key, _)) = missing {
            return Err(CalibrationError::File {
                line: block.line,
                message: format!("sensor {} has no {key}", block.id),
            });
        }
        let [max, mid, min] = block.values.map(Option::unwrap);
        let cal = CalibrationData::new(max, mid, min).map_err(|e| CalibrationError::File {
            line: block.line,
            message: e.to_string(),
        })?;
        Ok((block.id, cal))
    }

    let mut entries: Vec<(SensorId, CalibrationData)> = Vec::new();
    let mut current: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| CalibrationError::File { line, message };
        if raw.trim().is_empty() {
            continue;
        }
        let (key, value) = raw
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got `{raw}`")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| err(format!("`{value}` is not a non-negative integer")))?;
        match key {
            "sensor" => {
                if let Some(block) = current.take() {
                    entries.push(finish(block)?);
                }
                let id = u8::try_from(value)
                    .ok()
                    .and_then(SensorId::new)
                    .ok_or_else(|| err(format!("sensor {value} is not in 0..3")))?;
                if entries.iter().any(|(seen, _)| *seen == id) {
                    return Err(err(format!("sensor {id} listed twice")));
                }
                current = Some(Block {
                    id,
                    line,
                    values: [None; 3],
                });
            }
            "v_max" | "v_mid" | "v_min" => {
                let block = current
                    .as_mut()
                    .ok_or_else(|| err(format!("`{key}` before any `sensor=` line")))?;
                let slot = match key {
                    "v_max" => 0,
                    "v_mid" => 1,
                    _ => 2,
                };
                if block.values[slot].replace(value).is_some() {
                    return Err(err(format!("duplicate `{key}`")));
                }
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    if let Some(block) = current {
        entries.push(finish(block)?);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, Stream};

    #[test]
    fn constant_streams() {
        let cal = calibrate(&[1023.0; 120], &[236.0; 100], &[93.0; 150]).unwrap();
        assert_eq!(cal, CalibrationData::new(1023, 236, 93).unwrap());
    }

    #[test]
    fn ordering_violation_names_the_pair() {
        let err = calibrate(&[100.0; 100], &[500.0; 100], &[900.0; 100]).unwrap_err();
        assert!(matches!(
            err,
            CalibrationError::Ordering {
                lower: "v_min",
                upper: "v_mid",
                ..
            }
        ));
        let err = CalibrationData::new(200, 300, 100).unwrap_err();
        assert!(matches!(
            err,
            CalibrationError::Ordering { upper: "v_max", .. }
        ));
    }

    #[test]
    fn short_stream_is_an_input_error() {
        let err = calibrate(&[1023.0; 99], &[236.0; 100], &[93.0; 100]).unwrap_err();
        assert_eq!(
            err,
            CalibrationError::ShortStream {
                pose: "open",
                len: 99,
                need: 100
            }
        );
    }

    #[test]
    fn only_the_last_window_counts() {
        let mut open = vec![0.0; 50];
        open.extend([1000.0; 100]);
        let cal = calibrate(&open, &[236.0; 100], &[93.0; 100]).unwrap();
        assert_eq!(cal.v_max, 1000);
    }

    #[test]
    fn noiseless_simulation_matches_closed_form() {
        let spec = NerveLineSpec::default();
        let filter = FilterState::from_cutoff(5.0, 10).unwrap();
        let mut rng = stream(0, Stream::Calibration(0));
        let cal = simulate_calibration(&spec, filter, 0.0, 120, &mut rng).unwrap();
        assert_eq!(cal, CalibrationData::new(1023, 236, 93).unwrap());
    }

    #[test]
    fn file_round_trip_and_errors() {
        let entries = vec![
            (
                SensorId::INDEX_PALM,
                CalibrationData::new(1023, 236, 93).unwrap(),
            ),
            (
                SensorId::MIDDLE_DORSAL,
                CalibrationData::new(1000, 240, 90).unwrap(),
            ),
        ];
        let text = write_calibration_file(&entries);
        assert_eq!(
            text.lines().take(4).collect::<Vec<_>>(),
            ["sensor=0", "v_max=1023", "v_mid=236", "v_min=93"]
        );
        assert_eq!(parse_calibration_file(&text).unwrap(), entries);

        let bad = "sensor=0\nv_max=1023.0\n";
        assert!(matches!(
            parse_calibration_file(bad),
            Err(CalibrationError::File { line: 2, .. })
        ));
        let missing = "sensor=1\nv_max=1023\nv_mid=236\n";
        assert!(matches!(
            parse_calibration_file(missing),
            Err(CalibrationError::File { line: 1, .. })
        ));
        assert!(parse_calibration_file("sensor=4\n").is_err());
        assert!(parse_calibration_file("v_max=3\n").is_err());
        assert!(parse_calibration_file("sensor=0\nv_max=1\nv_mid=2\nv_min=3\n").is_err());
    }
}
