use rand::Rng;

use super::{
    adc_quantize, divider_voltage, solve_line_resistance, AdcReading, ContactPoint, ContactSet,
    LineResistance, NerveLineSpec, ResolvedContacts,
};
use crate::error::NerveError;

/// Voltage of a firm contact at the very end of the line.
pub fn full_length_voltage(spec: &NerveLineSpec) -> f64 {
    let end = ResolvedContacts::from_points(vec![ContactPoint::firm(spec.effective_length_mm)]);
    divider_voltage(spec, solve_line_resistance(spec, &end))
}

/// Line voltage for already-resolved contacts.
///
/// With `fingertip_quality` set, contacts in the fingertip zone are taken out
/// of the circuit and replaced by `V_open - q * (V_open - V_full)`; if body
/// contacts are present as well, the lower of the two voltages is reported.
pub fn line_voltage(
    spec: &NerveLineSpec,
    contacts: &ResolvedContacts,
    fingertip_quality: Option<f64>,
) -> Result<f64, NerveError> {
    let Some(quality) = fingertip_quality else {
        return Ok(divider_voltage(spec, solve_line_resistance(spec, contacts)));
    };
    if !(quality > 0.0 && quality <= 1.0) {
        return Err(NerveError::OutOfRange {
            what: "fingertip_quality",
            value: quality,
            min: 0.0,
            max: 1.0,
        });
    }
    let (body, tip) = contacts.partition_at(spec.tip_zone_start_mm());
    let body_volts = divider_voltage(spec, solve_line_resistance(spec, &body));
    if tip.is_empty() {
        return Ok(body_volts);
    }
    let open = divider_voltage(spec, LineResistance::Open);
    let tip_volts = open - quality * (open - full_length_voltage(spec));
    Ok(body_volts.min(tip_volts))
}

/// Full measurement chain for one sample: spike snapping, ladder solve,
/// divider and ADC.
pub fn sense<R: Rng + ?Sized>(
    spec: &NerveLineSpec,
    contacts: &ContactSet,
    fingertip_quality: Option<f64>,
    noise_sd_counts: f64,
    t_ms: u64,
    rng: &mut R,
) -> Result<AdcReading, NerveError> {
    let resolved = contacts.resolve(spec, rng)?;
    let volts = line_voltage(spec, &resolved, fingertip_quality)?;
    adc_quantize(spec, volts, noise_sd_counts, t_ms, rng)
}
