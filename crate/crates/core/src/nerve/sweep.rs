use rand::Rng;

use super::{press_to_spike, sense, AdcReading, ContactPoint, ContactSet, NerveLineSpec};
use crate::error::NerveError;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    /// Half-width of the uniform press jitter around each commanded position.
    pub jitter_mm: f64,
    pub repeats: usize,
    /// Presses land on spikes (see [`press_to_spike`]) instead of anywhere.
    pub spikes: bool,
    pub noise_sd_counts: f64,
    pub dt_ms: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            jitter_mm: 2.5,
            repeats: 100,
            spikes: true,
            noise_sd_counts: 0.0,
            dt_ms: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSample {
    pub commanded_mm: f64,
    pub touch_mm: f64,
    pub reading: AdcReading,
}

/// Commanded positions `0, step, 2*step, ...` up to the effective length.
pub fn sweep_positions(spec: &NerveLineSpec, step_mm: f64) -> Vec<f64> {
    let n = (spec.effective_length_mm / step_mm + 1e-9).floor() as usize;
    (0..=n).map(|i| i as f64 * step_mm).collect()
}

/// Presses each commanded position `repeats` times with firm contacts.
pub fn simulate_sweep<R: Rng + ?Sized>(
    spec: &NerveLineSpec,
    positions: &[f64],
    options: &SweepOptions,
    rng: &mut R,
) -> Result<Vec<SweepSample>, NerveError> {
    if options.repeats == 0 {
        return Err(NerveError::NoRepeats);
    }
    if !(options.jitter_mm >= 0.0 && options.jitter_mm.is_finite()) {
        return Err(NerveError::OutOfRange {
            what: "jitter_mm",
            value: options.jitter_mm,
            min: 0.0,
            max: spec.effective_length_mm,
        });
    }
    for &p in positions {
        spec.check_position(p)?;
    }
    let mut samples = Vec::with_capacity(positions.len() * options.repeats);
    let mut t_ms = 0;
    for &commanded_mm in positions {
        for _ in 0..options.repeats {
            let offset = if options.jitter_mm > 0.0 {
                rng.random_range(-options.jitter_mm..=options.jitter_mm)
            } else {
                0.0
            };
            let mut touch_mm = (commanded_mm + offset).clamp(0.0, spec.effective_length_mm);
            if options.spikes {
                touch_mm = press_to_spike(touch_mm, spec, rng)?;
            }
            let contacts = ContactSet::single(ContactPoint::firm(touch_mm));
            let reading = sense(spec, &contacts, None, options.noise_sd_counts, t_ms, rng)?;
            samples.push(SweepSample {
                commanded_mm,
                touch_mm,
                reading,
            });
            t_ms += options.dt_ms;
        }
    }
    Ok(samples)
}
