//! Seeded state sampling over a symmetric box.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clf_core::StateVector;
use crate::scalar::{lit, Scalar};

/// Uniform sampler over `[−half_width, half_width]ⁿ`, reproducible from a seed.
#[derive(Debug, Clone)]
pub struct BoxSampler {
    rng: ChaCha8Rng,
    dist: Uniform<f64>,
    dim: usize,
}

impl BoxSampler {
    pub fn new(seed: u64, dim: usize, half_width: f64) -> Self {
        assert!(half_width > 0.0, "box half-width must be positive");
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            dist: Uniform::new_inclusive(-half_width, half_width),
            dim,
        }
    }

    pub fn sample<T: Scalar>(&mut self) -> StateVector<T> {
        StateVector(
            (0..self.dim)
                .map(|_| lit::<T>(self.dist.sample(&mut self.rng)))
                .collect(),
        )
    }

    /// Draws until `count` states pass `keep`, giving up after
    /// `max_draws` attempts. Returns the accepted states.
    pub fn sample_filtered<T: Scalar>(
        &mut self,
        count: usize,
        max_draws: usize,
        mut keep: impl FnMut(&StateVector<T>) -> bool,
    ) -> Vec<StateVector<T>> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..max_draws {
            if out.len() == count {
                break;
            }
            let x = self.sample();
            if keep(&x) {
                out.push(x);
            }
        }
        out
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
