//! Process-wide operation counters read by the benchmark driver.

use std::sync::atomic::{AtomicU64, Ordering};

static RING_MULTS: AtomicU64 = AtomicU64::new(0);
static RELAXATIONS: AtomicU64 = AtomicU64::new(0);
static RING_MULT_BITS: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    /// Big-integer multiplications performed by ring kernels.
    pub ring_mults: u64,
    /// Sum over those multiplications of the product's bit length.
    pub ring_mult_bits: u64,
    /// `a + b` then `min` steps of explicit min-plus loops.
    pub relaxations: u64,
}

pub fn reset() {
    RING_MULTS.store(0, Ordering::Relaxed);
    RING_MULT_BITS.store(0, Ordering::Relaxed);
    RELAXATIONS.store(0, Ordering::Relaxed);
}

pub fn snapshot() -> OpCounts {
    OpCounts {
        ring_mults: RING_MULTS.load(Ordering::Relaxed),
        ring_mult_bits: RING_MULT_BITS.load(Ordering::Relaxed),
        relaxations: RELAXATIONS.load(Ordering::Relaxed),
    }
}

pub(crate) fn add_ring_mults(count: u64, bits: u64) {
    RING_MULTS.fetch_add(count, Ordering::Relaxed);
    RING_MULT_BITS.fetch_add(bits, Ordering::Relaxed);
}

pub(crate) fn add_relaxations(count: u64) {
    RELAXATIONS.fetch_add(count, Ordering::Relaxed);
}
