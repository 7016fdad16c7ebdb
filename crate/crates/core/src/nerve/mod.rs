//! Physical simulation of one nerve line.

mod circuit;
mod contact;
mod ladder;
mod sense;
mod spec;
mod sweep;

pub use circuit::{adc_quantize, divider_voltage, AdcReading};
pub use contact::{press_to_spike, snap_to_spike, ContactPoint, ContactSet, ResolvedContacts};
pub use ladder::{solve_line_resistance, LineResistance};
pub use sense::{full_length_voltage, line_voltage, sense};
pub use spec::{NerveLineSpec, SpecViolation};
pub use sweep::{simulate_sweep, sweep_positions, SweepOptions, SweepSample};
