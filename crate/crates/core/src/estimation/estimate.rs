use std::fmt;

use super::CalibrationData;
use crate::nerve::NerveLineSpec;

/// Ratio at the insulation point; the body branch spans `[0, 80]` and the
/// fingertip branch `(80, 100]`.
pub const BODY_P: f64 = 80.0;
pub const NO_CONTACT_P: f64 = 100.0;
pub const DEFAULT_TOUCH_THRESHOLD_P: f64 = 90.0;
pub const DEFAULT_WINDOW_N: usize = 10;
/// Readings this close to `v_max` (in counts) are treated as no contact.
pub const NONE_BAND_COUNTS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    None,
    Fingertip,
    Body,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::None => "none",
            Regime::Fingertip => "fingertip",
            Regime::Body => "body",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactEstimate {
    /// Contact-point ratio in percent; 100 means untouched.
    pub p: f64,
    pub regime: Regime,
    /// Filtered counts the estimate was computed from.
    pub v: f64,
    pub t_ms: u64,
}

/// Two-branch contact-point ratio.
///
/// Readings above `v_max` clamp to 100 and readings below `v_min` to 0.
pub fn estimate_p(v: f64, cal: &CalibrationData) -> ContactEstimate {
    estimate_p_at(v, cal, 0)
}

pub fn estimate_p_at(v: f64, cal: &CalibrationData, t_ms: u64) -> ContactEstimate {
    let max = f64::from(cal.v_max);
    let mid = f64::from(cal.v_mid);
    let min = f64::from(cal.v_min);

    let p = if v >= max {
        NO_CONTACT_P
    } else if v > mid {
        NO_CONTACT_P - (max - v) / (max - mid) * (NO_CONTACT_P - BODY_P)
    } else if v >= min {
        (v - min) / (mid - min) * BODY_P
    } else {
        0.0
    };

    let band = NONE_BAND_COUNTS.min((max - mid) / 2.0);
    let regime = if v >= max - band {
        Regime::None
    } else if v > mid {
        Regime::Fingertip
    } else {
        Regime::Body
    };
    ContactEstimate { p, regime, v, t_ms }
}

/// True when something touches the line: `p < threshold_p`.
pub fn detect_touch(est: &ContactEstimate, threshold_p: f64) -> bool {
    est.p < threshold_p
}

/// True when the mean `p` over the last `window_n` estimates is below the
/// threshold and every one of them reports contact.
pub fn position_reached(history: &[ContactEstimate], threshold_p: f64, window_n: usize) -> bool {
    let window_n = window_n.max(1);
    if history.len() < window_n {
        return false;
    }
    let window = &history[history.len() - window_n..];
    if window.iter().any(|e| e.regime == Regime::None) {
        return false;
    }
    let mean = window.iter().map(|e| e.p).sum::<f64>() / window_n as f64;
    mean < threshold_p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Body,
    Fingertip,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappedPosition {
    pub position_mm: f64,
    pub zone: Zone,
}

/// Converts a ratio back to a distance from the base. Fingertip-branch ratios
/// cannot be resolved further and saturate at the line end.
pub fn map_p_to_mm(p: f64, spec: &NerveLineSpec) -> MappedPosition {
    let p = p.clamp(0.0, NO_CONTACT_P);
    if p <= BODY_P {
        MappedPosition {
            position_mm: p / BODY_P * spec.effective_length_mm,
            zone: Zone::Body,
        }
    } else {
        MappedPosition {
            position_mm: spec.effective_length_mm,
            zone: Zone::Fingertip,
        }
    }
}
