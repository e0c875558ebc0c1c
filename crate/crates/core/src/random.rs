//! Injectable randomness for shuffling and symbol choice.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Source of uniform bounded integers.
///
/// Implementations must be deterministic for a fixed seed and call sequence.
pub trait RandomSource {
    /// Uniform integer in `[0, bound)`. `bound` must be positive.
    fn next_below(&mut self, bound: u64) -> u64;

    /// Seed this source was created from, when it has one.
    fn seed(&self) -> Option<u64> {
        None
    }
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    fn next_below(&mut self, bound: u64) -> u64 {
        (**self).next_below(bound)
    }

    fn seed(&self) -> Option<u64> {
        (**self).seed()
    }
}

/// Default generator: ChaCha8 keyed by a 64-bit seed, with an optional
/// stream number for deriving independent sources from the same seed.
#[derive(Debug, Clone)]
pub struct SeededRandom {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededRandom {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent source for `(seed, stream)`. Stream 0 is the same as [`SeededRandom::new`].
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        SeededRandom { seed, rng }
    }

    /// Seed drawn from operating-system entropy.
    pub fn entropy_seed() -> u64 {
        rand::rng().random()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.random()
    }
}

impl RandomSource for SeededRandom {
    fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below requires a positive bound");
        self.rng.random_range(0..bound)
    }

    fn seed(&self) -> Option<u64> {
        Some(self.seed)
    }
}
