use super::{estimate_p_at, CalibrationData, ContactEstimate, FilterState};
use crate::nerve::AdcReading;

/// Per-sensor measurement pipeline: filter then estimate. One writer per
/// sensor stream.
#[derive(Debug, Clone)]
pub struct SensorChannel {
    filter: FilterState,
    calibration: CalibrationData,
}

impl SensorChannel {
    pub fn new(filter: FilterState, calibration: CalibrationData) -> Self {
        SensorChannel {
            filter,
            calibration,
        }
    }

    pub fn calibration(&self) -> &CalibrationData {
        &self.calibration
    }

    pub fn push(&mut self, reading: AdcReading) -> ContactEstimate {
        let filtered = self.filter.step(f64::from(reading.counts));
        estimate_p_at(filtered, &self.calibration, reading.t_ms)
    }
}
