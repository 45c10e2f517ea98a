//! Reproducible random sampling. Every trial owns an independent ChaCha8
//! stream keyed by `(seed, trial)`, so results do not depend on scheduling.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Rational;

/// Retries allowed when rejection-sampling a generic point.
pub const MAX_RESAMPLES: usize = 200;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Numerator uniform in [−9, 9], denominator uniform in [1, 9].
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let q = rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Run `f(trial, rng)` for every trial in parallel, collecting in trial order.
pub fn par_trials<T, F>(trials: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| f(t, &mut trial_rng(seed, t as u64)))
        .collect()
}
