use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{LineResistance, NerveLineSpec};
use crate::error::NerveError;

/// One ADC sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdcReading {
    pub t_ms: u64,
    pub counts: u32,
}

/// Voltage across the nerve line in the pull-up divider.
pub fn divider_voltage(spec: &NerveLineSpec, r: LineResistance) -> f64 {
    match r {
        LineResistance::Open => spec.supply_volts,
        LineResistance::Ohms(r) => spec.supply_volts * r / (r + spec.pullup_ohm),
    }
}

/// Quantizes a voltage to ADC counts, adding rounded Gaussian noise of
/// `noise_sd_counts` (no draw is taken when it is zero).
pub fn adc_quantize<R: Rng + ?Sized>(
    spec: &NerveLineSpec,
    volts: f64,
    noise_sd_counts: f64,
    t_ms: u64,
    rng: &mut R,
) -> Result<AdcReading, NerveError> {
    if !(0.0..=spec.supply_volts).contains(&volts) {
        return Err(NerveError::OutOfRange {
            what: "volts",
            value: volts,
            min: 0.0,
            max: spec.supply_volts,
        });
    }
    if !(noise_sd_counts >= 0.0 && noise_sd_counts.is_finite()) {
        return Err(NerveError::OutOfRange {
            what: "noise_sd_counts",
            value: noise_sd_counts,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    let full_scale = f64::from(spec.adc_full_scale);
    // the epsilon keeps exact ratios such as 93.0 from flooring to 92
    let mut counts = (volts / spec.supply_volts * full_scale + 1e-9).floor();
    if noise_sd_counts > 0.0 {
        let normal = Normal::new(0.0, noise_sd_counts).expect("finite sd");
        counts += normal.sample(rng).round();
    }
    Ok(AdcReading {
        t_ms,
        counts: counts.clamp(0.0, full_scale) as u32,
    })
}
