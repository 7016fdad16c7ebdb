use std::f64::consts::PI;

/// First-order low-pass `y = a * y_prev + (1 - a) * x`.
///
/// An unprimed filter passes its first sample through.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterState {
    coefficient_a: f64,
    last: Option<f64>,
    pub dt_ms: u64,
}

pub const DEFAULT_CUTOFF_HZ: f64 = 5.0;
pub const DEFAULT_DT_MS: u64 = 10;

/// Discrete RC coefficient `1 / (1 + 2π f_c dt)`.
pub fn coefficient_from_cutoff(cutoff_hz: f64, dt_ms: u64) -> f64 {
    1.0 / (1.0 + 2.0 * PI * cutoff_hz * dt_ms as f64 / 1000.0)
}

impl FilterState {
    /// Returns `None` unless `0 <= a < 1`.
    pub fn new(coefficient_a: f64, dt_ms: u64) -> Option<FilterState> {
        (0.0..1.0).contains(&coefficient_a).then_some(FilterState {
            coefficient_a,
            last: None,
            dt_ms,
        })
    }

    pub fn with_initial(coefficient_a: f64, dt_ms: u64, initial: f64) -> Option<FilterState> {
        Self::new(coefficient_a, dt_ms).map(|f| FilterState {
            last: Some(initial),
            ..f
        })
    }

    pub fn from_cutoff(cutoff_hz: f64, dt_ms: u64) -> Option<FilterState> {
        Self::new(coefficient_from_cutoff(cutoff_hz, dt_ms), dt_ms)
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient_a
    }

    pub fn last(&self) -> Option<f64> {
        self.last
    }

    pub fn step(&mut self, raw: f64) -> f64 {
        let a = self.coefficient_a;
        let y = match self.last {
            Some(prev) => a * prev + (1.0 - a) * raw,
            None => raw,
        };
        self.last = Some(y);
        y
    }
}

pub fn filter_step(mut state: FilterState, raw: f64) -> (FilterState, f64) {
    let y = state.step(raw);
    (state, y)
}
