//! Seeded deterministic random streams.
//!
//! The generator is ChaCha8 keyed from a 64-bit seed, so identical seeds give
//! identical streams on every platform. Child streams for independent
//! subtasks come from [`Rng::derive`], which mixes a tag into the seed with a
//! SplitMix64 finalizer; deriving is a pure function of `(seed, tag)` and does
//! not depend on how much of the parent stream has been consumed.

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fp::PrimeField;

/// Deterministic random stream with a recorded seed.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent child stream determined by `(self.seed, tag)` only.
    pub fn derive(&self, tag: u64) -> Rng {
        Rng::new(mix(self.seed ^ mix(tag)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.random()
    }

    /// Uniform field element in `[0, p)`.
    pub fn element(&mut self, field: PrimeField) -> u64 {
        self.inner.random_range(0..field.modulus())
    }

    /// Uniform nonzero field element.
    pub fn nonzero_element(&mut self, field: PrimeField) -> u64 {
        self.inner.random_range(1..field.modulus())
    }

    /// Uniform index in `[0, bound)`.
    pub fn index(&mut self, bound: usize) -> usize {
        self.inner.random_range(0..bound)
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable tag for seeding a per-partition child stream.
pub fn parts_tag(parts: &[usize]) -> u64 {
    let mut h = 0x517C_C1B7_2722_0A95u64;
    for &p in parts {
        h = mix(h ^ (p as u64).wrapping_add(1));
    }
    h
}
