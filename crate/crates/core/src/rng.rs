//! Reproducible random streams.
//!
//! All Monte Carlo work in this crate derives its randomness from a single
//! master seed through counter-based substreams: substream `(rep, lane)` is a
//! ChaCha stream selected by index, so replication `rep` sees the same bits
//! no matter how many workers run or in which order replications execute.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

const LANE_SHIFT: u32 = 56;
const REP_MASK: u64 = (1 << LANE_SHIFT) - 1;

/// Factory for independent substreams of one master seed.
#[derive(Debug, Clone, Copy)]
pub struct SeedStream {
    seed: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Substream for replication `rep` on lane `lane`.
    ///
    /// Lanes separate roles inside one replication (shared draws, estimator A,
    /// estimator B, ...). `rep` must fit in 56 bits, `lane` in 8.
    pub fn substream(&self, rep: u64, lane: u8) -> ChaCha12Rng {
        debug_assert!(rep & !REP_MASK == 0, "replication index exceeds 2^56");
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(((lane as u64) << LANE_SHIFT) | (rep & REP_MASK));
        rng
    }
}

/// Uniform draw in the open interval (0, 1).
///
/// 53-bit resolution, offset by half an ulp so 0.0 and 1.0 never occur
/// (quantile transforms would map them to the support endpoints).
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}
