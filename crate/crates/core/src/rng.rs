//! Seedable random streams shared by the topology generator and the sampler.
//!
//! Every stream is a SplitMix64 generator (Steele, Lea & Flood) seeded
//! directly with the user seed. Uniform reals in `[0, 1)` are the top 53 bits
//! of the next 64-bit output scaled by `2^-53`; uniform indices use `rand`'s
//! `random_range`. Both are platform independent, so a seed pins a run.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

/// Named PRNG used throughout the crate.
#[derive(Debug, Clone)]
pub struct Stream {
    inner: SplitMix64,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n`.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}
