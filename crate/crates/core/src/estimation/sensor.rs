use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Finger {
    Index,
    Middle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Palm,
    Dorsal,
}

/// One of the four nerve lines: 0 index/palm, 1 index/dorsal,
/// 2 middle/palm, 3 middle/dorsal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct SensorId(u8);

impl SensorId {
    pub const COUNT: usize = 4;
    pub const INDEX_PALM: SensorId = SensorId(0);
    pub const INDEX_DORSAL: SensorId = SensorId(1);
    pub const MIDDLE_PALM: SensorId = SensorId(2);
    pub const MIDDLE_DORSAL: SensorId = SensorId(3);

    pub fn new(index: u8) -> Option<SensorId> {
        (usize::from(index) < Self::COUNT).then_some(SensorId(index))
    }

    pub fn all() -> impl Iterator<Item = SensorId> {
        (0..Self::COUNT as u8).map(SensorId)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn finger(self) -> Finger {
        if self.0 < 2 {
            Finger::Index
        } else {
            Finger::Middle
        }
    }

    pub fn side(self) -> Side {
        if self.0.is_multiple_of(2) {
            Side::Palm
        } else {
            Side::Dorsal
        }
    }
}

impl TryFrom<u8> for SensorId {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        SensorId::new(value).ok_or_else(|| format!("sensor id {value} is not in 0..3"))
    }
}

impl From<SensorId> for u8 {
    fn from(id: SensorId) -> u8 {
        id.0
    }
}

impl fmt::Display for SensorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
