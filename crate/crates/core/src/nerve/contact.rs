use rand::Rng;
use serde::{Deserialize, Serialize};

use super::NerveLineSpec;
use crate::error::NerveError;

/// A press that bridges the two rails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactPoint {
    /// Distance from the finger base (lead end) along the line.
    pub position_mm: f64,
    /// Contact resistance of the bridge; 0 is a firm press.
    pub bridge_ohm: f64,
}

impl ContactPoint {
    pub fn firm(position_mm: f64) -> Self {
        ContactPoint {
            position_mm,
            bridge_ohm: 0.0,
        }
    }

    pub fn new(position_mm: f64, bridge_ohm: f64) -> Self {
        ContactPoint {
            position_mm,
            bridge_ohm,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ContactSet {
    pub contacts: Vec<ContactPoint>,
    pub quantize_to_spikes: bool,
}

impl ContactSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(contacts: Vec<ContactPoint>, quantize_to_spikes: bool) -> Self {
        ContactSet {
            contacts,
            quantize_to_spikes,
        }
    }

    pub fn single(contact: ContactPoint) -> Self {
        Self::new(vec![contact], false)
    }

    pub fn is_empty(&self) -> bool {
        self.contacts.is_empty()
    }

    /// Validates, snaps to spikes when requested and merges duplicates.
    pub fn resolve<R: Rng + ?Sized>(
        &self,
        spec: &NerveLineSpec,
        rng: &mut R,
    ) -> Result<ResolvedContacts, NerveError> {
        let mut points = Vec::with_capacity(self.contacts.len());
        for c in &self.contacts {
            spec.check_position(c.position_mm)?;
            if !(c.bridge_ohm >= 0.0) {
                return Err(NerveError::NegativeBridge(c.bridge_ohm));
            }
            let position_mm = if self.quantize_to_spikes {
                snap_to_spike(c.position_mm, spec, rng)?
            } else {
                c.position_mm
            };
            points.push(ContactPoint {
                position_mm,
                bridge_ohm: c.bridge_ohm,
            });
        }
        Ok(ResolvedContacts::from_points(points))
    }
}

/// Contacts sorted by position from the base, positions unique.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResolvedContacts(Vec<ContactPoint>);

impl ResolvedContacts {
    /// Sorts and merges equal positions, keeping the smallest bridge.
    /// Positions must already be validated.
    pub fn from_points(mut points: Vec<ContactPoint>) -> Self {
        points.sort_by(|a, b| {
            a.position_mm
                .total_cmp(&b.position_mm)
                .then(a.bridge_ohm.total_cmp(&b.bridge_ohm))
        });
        points.dedup_by(|later, kept| later.position_mm == kept.position_mm);
        ResolvedContacts(points)
    }

    pub fn as_slice(&self) -> &[ContactPoint] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Contact closest to the base.
    pub fn proximal(&self) -> Option<ContactPoint> {
        self.0.first().copied()
    }

    pub(crate) fn partition_at(&self, start_mm: f64) -> (ResolvedContacts, ResolvedContacts) {
        let (below, beyond): (Vec<_>, Vec<_>) =
            self.0.iter().partition(|c| c.position_mm <= start_mm);
        (ResolvedContacts(below), ResolvedContacts(beyond))
    }
}

fn spike_cell(position_mm: f64, spec: &NerveLineSpec) -> (f64, f64) {
    let cells = position_mm / spec.spike_pitch_mm;
    let index = cells.floor();
    (index, cells - index)
}

fn spike_at(index: f64, spec: &NerveLineSpec) -> f64 {
    (index * spec.spike_pitch_mm).clamp(0.0, spec.effective_length_mm)
}

/// Moves a press onto the nearest spike. An exact midpoint between two spikes
/// is settled by a fair coin drawn from `rng`.
pub fn snap_to_spike<R: Rng + ?Sized>(
    position_mm: f64,
    spec: &NerveLineSpec,
    rng: &mut R,
) -> Result<f64, NerveError> {
    spec.check_position(position_mm)?;
    let (index, frac) = spike_cell(position_mm, spec);
    let upper = if frac == 0.5 {
        rng.random::<bool>()
    } else {
        frac > 0.5
    };
    Ok(spike_at(if upper { index + 1.0 } else { index }, spec))
}

/// Which spike a press between two spikes ends up on, when the pressing
/// surface can tip onto either neighbour: the upper spike is hit with
/// probability equal to the fractional distance from the lower one.
/// A press on a spike stays there; a midpoint press is a fair coin.
pub fn press_to_spike<R: Rng + ?Sized>(
    position_mm: f64,
    spec: &NerveLineSpec,
    rng: &mut R,
) -> Result<f64, NerveError> {
    spec.check_position(position_mm)?;
    let (index, frac) = spike_cell(position_mm, spec);
    let upper = frac > 0.0 && rng.random::<f64>() < frac;
    Ok(spike_at(if upper { index + 1.0 } else { index }, spec))
}
