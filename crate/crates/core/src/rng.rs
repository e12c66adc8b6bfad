//! Seeded random stream shared by every stochastic operator of a run.
//!
//! A run owns exactly one [`RngStream`]. Operators draw from it in a fixed
//! order, so a seed fully determines the run:
//!
//! 1. initialization: individual-major, dimension-minor;
//! 2. survival: random elite fill (only when the threshold underflows);
//! 3. big crunch: offspring-allocation draws;
//! 4. big bang: center-major, offspring-minor, dimension-minor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[low, high]`.
    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        if low == high {
            return low;
        }
        self.inner.gen_range(low..=high)
    }

    /// Uniform draw in the open interval `(-1, 1)`.
    pub fn symmetric_unit(&mut self) -> f64 {
        loop {
            let u: f64 = self.inner.gen_range(-1.0..1.0);
            if u != -1.0 {
                return u;
            }
        }
    }

    /// Uniform index in `0..len`. Panics if `len == 0`.
    pub fn index(&mut self, len: usize) -> usize {
        self.inner.gen_range(0..len)
    }
}
