//! Deterministic random number source.
//!
//! Every random draw in the crate goes through [`RngState`]. The generator is
//! ChaCha8 (`rand_chacha`), seeded with `seed_from_u64`, which is specified
//! independently of platform and word size. Floats and bounded integers are
//! derived from raw `u64` output by the fixed rules below, so a seed produces
//! the same sample sets everywhere:
//!
//! * `next_f64`: the top 53 bits of one `u64`, scaled by 2^-53, in `[0, 1)`.
//! * `below(n)`: rejection on the largest multiple of `n` that fits in `u64`,
//!   then `x % n`.
//! * `shuffle`: Fisher-Yates from the last index down, using `below`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RngState {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent stream keyed by `stream`. Depends only on the seed and
    /// the key, never on how far `self` has advanced, and leaves `self`
    /// untouched.
    pub fn child(&self, stream: u64) -> RngState {
        let mut inner = ChaCha8Rng::seed_from_u64(self.seed);
        inner.set_stream(stream.wrapping_add(1));
        RngState {
            seed: self.seed,
            inner,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "uniform range requires finite lo < hi, got [{lo}, {hi})"
            )));
        }
        Ok(self.uniform_in(lo, hi))
    }

    pub(crate) fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        let x = lo + (hi - lo) * self.next_f64();
        if x >= hi {
            hi.next_down().max(lo)
        } else {
            x
        }
    }

    /// Uniform integer in `[0, n)`. Panics if `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % n) as usize;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

/// SplitMix64 finalizer, used to derive per-cell seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// FNV-1a over the bytes of `s`.
pub fn fnv1a64(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Seed for one (base, label, index) cell: `splitmix64(splitmix64(splitmix64(base) ^ fnv1a64(label)) ^ index)`.
pub fn derive_seed(base: u64, label: &str, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ fnv1a64(label)) ^ index)
}
