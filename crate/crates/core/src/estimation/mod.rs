//! Measurement side: smoothing, three-point calibration, the contact-point
//! ratio and the touch / position decisions built on it.

mod calibration;
mod channel;
mod estimate;
mod filter;
mod sensor;

pub use calibration::{
    calibrate, parse_calibration_file, simulate_calibration, write_calibration_file,
    CalibrationData, SimulatedCalibrationError, CALIBRATION_WINDOW,
};
pub use channel::SensorChannel;
pub use estimate::{
    detect_touch, estimate_p, estimate_p_at, map_p_to_mm, position_reached, ContactEstimate,
    MappedPosition, Regime, Zone, BODY_P, DEFAULT_TOUCH_THRESHOLD_P, DEFAULT_WINDOW_N,
    NONE_BAND_COUNTS, NO_CONTACT_P,
};
pub use filter::{
    coefficient_from_cutoff, filter_step, FilterState, DEFAULT_CUTOFF_HZ, DEFAULT_DT_MS,
};
pub use sensor::{Finger, SensorId, Side};
