//! Two-terminal resistance of the bridged two-rail ladder.
//!
//! ```text
//!  lead ── flat rail ──┬────────┬──────── … ─┐ (insulated tip)
//!                      b₁       b₂
//!  lead ── string rail ┴────────┴──────── … ─┘
//!          0           d₁       d₂
//! ```
//!
//! The tail beyond the last bridge carries no current, so the network is
//! series-parallel: folding from the fingertip toward the base, each bridge is
//! put in parallel with everything distal to it, and the rail segments in
//! between add in series.

use super::{NerveLineSpec, ResolvedContacts};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineResistance {
    /// No bridge: the line is open at the insulated junction.
    Open,
    Ohms(f64),
}

impl LineResistance {
    pub fn ohms(self) -> Option<f64> {
        match self {
            LineResistance::Open => None,
            LineResistance::Ohms(r) => Some(r),
        }
    }
}

fn parallel(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b / (a + b)
    }
}

pub fn solve_line_resistance(spec: &NerveLineSpec, contacts: &ResolvedContacts) -> LineResistance {
    let per_mm = spec.loop_ohm_per_mm();
    let mut distal = contacts.as_slice().iter().rev();
    let Some(last) = distal.next() else {
        return LineResistance::Open;
    };
    let mut equivalent = last.bridge_ohm;
    let mut at_mm = last.position_mm;
    for c in distal {
        let segment = per_mm * (at_mm - c.position_mm);
        equivalent = parallel(c.bridge_ohm, segment + equivalent);
        at_mm = c.position_mm;
    }
    LineResistance::Ohms(spec.lead_offset_ohm + per_mm * at_mm + equivalent)
}
