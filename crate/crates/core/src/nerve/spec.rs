use serde::{Deserialize, Serialize};

use crate::error::NerveError;

/// Geometry and electrical constants of one nerve line.
///
/// Both rails are tied to the lead at the finger base (position 0); the
/// fingertip end is the insulated junction, so an untouched line is open.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NerveLineSpec {
    pub effective_length_mm: f64,
    pub spike_pitch_mm: f64,
    pub flat_rail_ohm_per_mm: f64,
    pub string_rail_ohm_per_mm: f64,
    pub lead_offset_ohm: f64,
    pub pullup_ohm: f64,
    pub supply_volts: f64,
    pub adc_full_scale: u32,
    /// Fraction of the length below the fingertip zone.
    pub body_fraction: f64,
}

impl Default for NerveLineSpec {
    fn default() -> Self {
        NerveLineSpec {
            effective_length_mm: 80.0,
            spike_pitch_mm: 5.0,
            flat_rail_ohm_per_mm: 50.0,
            string_rail_ohm_per_mm: 200.0,
            lead_offset_ohm: 10_000.0,
            pullup_ohm: 100_000.0,
            supply_volts: 5.0,
            adc_full_scale: 1023,
            body_fraction: 0.8,
        }
    }
}

/// First invariant a spec violates, with the offending field name.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecViolation {
    pub field: &'static str,
    pub message: String,
}

impl From<SpecViolation> for NerveError {
    fn from(v: SpecViolation) -> Self {
        NerveError::InvalidSpec(format!("{}: {}", v.field, v.message))
    }
}

fn positive(field: &'static str, value: f64) -> Result<(), SpecViolation> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(SpecViolation {
            field,
            message: format!("must be > 0, got {value}"),
        })
    }
}

impl NerveLineSpec {
    pub fn validate(&self) -> Result<(), SpecViolation> {
        positive("effective_length_mm", self.effective_length_mm)?;
        positive("spike_pitch_mm", self.spike_pitch_mm)?;
        if self.spike_pitch_mm > self.effective_length_mm {
            return Err(SpecViolation {
                field: "spike_pitch_mm",
                message: format!(
                    "must not exceed effective_length_mm ({})",
                    self.effective_length_mm
                ),
            });
        }
        positive("flat_rail_ohm_per_mm", self.flat_rail_ohm_per_mm)?;
        positive("string_rail_ohm_per_mm", self.string_rail_ohm_per_mm)?;
        positive("lead_offset_ohm", self.lead_offset_ohm)?;
        positive("pullup_ohm", self.pullup_ohm)?;
        positive("supply_volts", self.supply_volts)?;
        if self.adc_full_scale == 0 {
            return Err(SpecViolation {
                field: "adc_full_scale",
                message: "must be > 0".into(),
            });
        }
        if !(self.body_fraction > 0.0 && self.body_fraction < 1.0) {
            return Err(SpecViolation {
                field: "body_fraction",
                message: format!("must lie in (0, 1), got {}", self.body_fraction),
            });
        }
        Ok(())
    }

    /// Combined resistance per mm of the loop formed by both rails.
    pub fn loop_ohm_per_mm(&self) -> f64 {
        self.flat_rail_ohm_per_mm + self.string_rail_ohm_per_mm
    }

    /// Resistance of both rails over the full effective length, leads excluded.
    pub fn total_line_ohm(&self) -> f64 {
        self.loop_ohm_per_mm() * self.effective_length_mm
    }

    /// Start of the fingertip zone along the line.
    pub fn tip_zone_start_mm(&self) -> f64 {
        self.body_fraction * self.effective_length_mm
    }

    pub(crate) fn check_position(&self, position_mm: f64) -> Result<(), NerveError> {
        if (0.0..=self.effective_length_mm).contains(&position_mm) {
            Ok(())
        } else {
            Err(NerveError::OutOfRange {
                what: "position_mm",
                value: position_mm,
                min: 0.0,
                max: self.effective_length_mm,
            })
        }
    }
}
