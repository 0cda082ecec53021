//! Seeded random streams.
//!
//! A [`RngHandle`] is a ChaCha8 stream keyed from a 64-bit seed. Child streams
//! are keyed from `splitmix64(seed ^ splitmix64(index + GOLDEN))`, so a child
//! depends only on the parent seed and its index, never on how much of the
//! parent stream has been consumed.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of child stream `index` of a stream seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(GOLDEN)))
}

#[derive(Clone, Debug)]
pub struct RngHandle {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngHandle {
    pub fn new(seed: u64) -> Self {
        Self { seed, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream number `index`. Does not advance `self`.
    pub fn child(&self, index: u64) -> RngHandle {
        RngHandle::new(derive_seed(self.seed, index))
    }

    /// Uniform on `[0, 1)` with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform on `(0, 1]`, safe to take the logarithm of.
    pub fn open_uniform(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }
}

impl RngCore for RngHandle {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Random-access uniform variates: value `k` is the same whether the stream
/// is read in order or out of order.
#[derive(Clone, Debug)]
pub(crate) struct IndexedUniforms {
    inner: ChaCha8Rng,
}

impl IndexedUniforms {
    pub(crate) fn new(seed: u64) -> Self {
        Self { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub(crate) fn at(&mut self, k: usize) -> f64 {
        // Each variate consumes two 32-bit words.
        self.inner.set_word_pos(2 * k as u128);
        self.next()
    }

    /// Variates `start, start + 1, ...`, one per slot of `out`.
    pub(crate) fn fill(&mut self, start: usize, out: &mut [f64]) {
        self.inner.set_word_pos(2 * start as u128);
        for x in out {
            *x = self.next();
        }
    }

    fn next(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
