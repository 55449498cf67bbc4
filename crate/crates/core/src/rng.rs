//! Seeded randomness. Every random choice in the library flows through
//! [`Rng`], a SplitMix64 stream, so a seed fixes the whole computation.

use rand::seq::index;
use rand::{Rng as _, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

const STREAM_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    inner: SplitMix64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent stream keyed by `(seed, stream)`. Does not advance `self`.
    pub fn derive(&self, stream: u64) -> Rng {
        let mut mixer = SplitMix64::seed_from_u64(self.seed ^ stream.wrapping_add(1).wrapping_mul(STREAM_MIX));
        Rng::new(mixer.next_u64())
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        if p <= 0.0 {
            false
        } else if p >= 1.0 {
            true
        } else {
            self.inner.gen_bool(p)
        }
    }

    pub fn range_inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        self.inner.gen_range(lo..=hi)
    }

    /// Draws `min(⌈count⌉, |pool|)` elements of `pool` uniformly without
    /// replacement. When the cap binds, `pool` is returned unchanged.
    /// The result is sorted.
    pub fn sample(&mut self, pool: &[usize], count: f64) -> Vec<usize> {
        let want = if count.is_nan() || count <= 0.0 {
            0
        } else {
            count.ceil().min(usize::MAX as f64) as usize
        };
        if want >= pool.len() {
            return pool.to_vec();
        }
        let mut out: Vec<usize> = index::sample(&mut self.inner, pool.len(), want)
            .into_iter()
            .map(|i| pool[i])
            .collect();
        out.sort_unstable();
        out
    }
}
