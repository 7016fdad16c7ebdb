use serde::{Deserialize, Serialize};

use crate::estimation::{SensorId, DEFAULT_TOUCH_THRESHOLD_P, DEFAULT_WINDOW_N};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ControllerConfig {
    /// Grasp is confirmed when the watched sensor's `p` drops below this.
    pub touch_threshold_p: f64,
    /// Regrasp stops when the windowed `p` drops below this.
    pub base_threshold_p: f64,
    /// Hand advance per regrasp step.
    pub step_mm: f64,
    pub wrist_rotation_deg: f64,
    pub max_regrasp_steps: u32,
    pub max_retries: u32,
    pub window_n: usize,
    pub watched_sensor_grasp: SensorId,
    pub watched_sensor_regrasp: SensorId,
    /// Control ticks spent in each phase before its exit condition is checked.
    pub phase_ticks: u32,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        ControllerConfig {
            touch_threshold_p: DEFAULT_TOUCH_THRESHOLD_P,
            base_threshold_p: 50.0,
            step_mm: 5.0,
            wrist_rotation_deg: 20.0,
            max_regrasp_steps: 12,
            max_retries: 2,
            window_n: DEFAULT_WINDOW_N,
            watched_sensor_grasp: SensorId::INDEX_PALM,
            watched_sensor_regrasp: SensorId::INDEX_DORSAL,
            phase_ticks: 30,
        }
    }
}

impl ControllerConfig {
    /// Returns the offending field name and a message.
    pub fn validate(&self) -> Result<(), (&'static str, String)> {
        let threshold = |field, p: f64| {
            if p > 0.0 && p < 100.0 {
                Ok(())
            } else {
                Err((field, format!("must lie in (0, 100), got {p}")))
            }
        };
        threshold("touch_threshold_p", self.touch_threshold_p)?;
        threshold("base_threshold_p", self.base_threshold_p)?;
        if !(self.step_mm > 0.0) {
            return Err(("step_mm", format!("must be > 0, got {}", self.step_mm)));
        }
        if !self.wrist_rotation_deg.is_finite() {
            return Err(("wrist_rotation_deg", "must be finite".into()));
        }
        if self.max_regrasp_steps < 1 {
            return Err(("max_regrasp_steps", "must be >= 1".into()));
        }
        if self.window_n < 1 {
            return Err(("window_n", "must be >= 1".into()));
        }
        if self.phase_ticks < 1 {
            return Err(("phase_ticks", "must be >= 1".into()));
        }
        Ok(())
    }
}
