//! Deterministic random streams.
//!
//! Every consumer of randomness gets its own ChaCha8 stream derived from the
//! master seed, so adding draws in one place never shifts another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Named purposes, each mapped onto a distinct ChaCha stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Calibration(u8),
    Sensing(u8),
    SweepSpiked,
    SweepSmooth,
}

impl Stream {
    fn id(self) -> u64 {
        match self {
            Stream::Calibration(s) => 0x100 + u64::from(s),
            Stream::Sensing(s) => 0x200 + u64::from(s),
            Stream::SweepSpiked => 0x300,
            Stream::SweepSmooth => 0x301,
        }
    }
}

pub fn stream(seed: u64, which: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(which.id());
    rng
}
