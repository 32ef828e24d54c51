//! Random draws for visit generation. SplitMix64 is small and fully
//! specified, so a run can be reproduced by any implementation that follows
//! the same draw order.

pub use rand_xoshiro::SplitMix64;

use rand_core::{RngCore, SeedableRng};

pub fn seeded(seed: u64) -> SplitMix64 {
    // For this generator the seed is the initial state, unlike the generic
    // `seed_from_u64`, which scrambles it first.
    SplitMix64::from_seed(seed.to_le_bytes())
}

/// Integer in `lo..=hi` by modulo reduction.
pub fn range_inclusive(rng: &mut SplitMix64, lo: u64, hi: u64) -> u64 {
    debug_assert!(lo <= hi);
    let span = hi - lo;
    if span == u64::MAX {
        return rng.next_u64();
    }
    lo + rng.next_u64() % (span + 1)
}
