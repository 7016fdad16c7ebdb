//! Serial log frames: `t_ms,sensor,counts`, one per LF-terminated line.

use std::fmt::Write as _;

use crate::error::Error;
use crate::estimation::SensorId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SerialFrame {
    pub t_ms: u64,
    pub sensor: SensorId,
    pub counts: u32,
}

/// Largest count a frame may carry.
pub const MAX_FRAME_COUNTS: u32 = 1023;

pub fn parse_frame(line: &str, line_no: usize) -> Result<SerialFrame, Error> {
    let err = |message: String| Error::Log {
        line: line_no,
        message,
    };
    let fields: Vec<&str> = line.split(',').collect();
    let [t, sensor, counts] = fields[..] else {
        return Err(err(format!(
            "expected 3 comma-separated fields, got {}",
            fields.len()
        )));
    };
    let t_ms = t
        .parse::<u64>()
        .map_err(|_| err(format!("t_ms `{t}` is not an integer")))?;
    let sensor = sensor
        .parse::<u8>()
        .ok()
        .and_then(SensorId::new)
        .ok_or_else(|| err(format!("sensor `{sensor}` is not in 0..3")))?;
    let counts = counts
        .parse::<u32>()
        .ok()
        .filter(|&c| c <= MAX_FRAME_COUNTS)
        .ok_or_else(|| err(format!("counts `{counts}` is not in 0..{MAX_FRAME_COUNTS}")))?;
    Ok(SerialFrame {
        t_ms,
        sensor,
        counts,
    })
}

pub fn parse_log(text: &str) -> Result<Vec<SerialFrame>, Error> {
    text.lines()
        .enumerate()
        .map(|(i, line)| parse_frame(line, i + 1))
        .collect()
}

pub fn write_log(frames: &[SerialFrame]) -> String {
    let mut out = String::with_capacity(frames.len() * 12);
    for f in frames {
        let _ = writeln!(out, "{},{},{}", f.t_ms, f.sensor, f.counts);
    }
    out
}
