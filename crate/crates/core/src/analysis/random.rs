//! Uniform random instances and their expected panel crossing number.
//!
//! Instances are drawn from ChaCha8 seeded with [`SeedableRng::seed_from_u64`],
//! filling the test matrix timestamp by timestamp. Monte Carlo sample `i`
//! uses the same seed on stream `i`, so estimates do not depend on thread
//! scheduling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{pairs, require_positive, AnalysisError};
use crate::layout::pcr;
use crate::model::OpdInstance;

/// `C(n,2) · ((1/k)^m + m(k−1) − 1) / (2k)`, exactly.
pub fn expected_pcr(n: usize, k: usize, m: usize) -> Result<BigRational, AnalysisError> {
    if k < 2 {
        return Err(AnalysisError::TooFewCategories { k, min: 2 });
    }
    require_positive(m, "m")?;
    let k_big = BigInt::from(k);
    let inv_k_pow_m = BigRational::new(BigInt::one(), num_traits::pow(k_big.clone(), m));
    let numerator = inv_k_pow_m + BigRational::from_integer(BigInt::from(m) * (&k_big - 1) - 1);
    Ok(numerator * BigRational::new(BigInt::from(pairs(n)), 2 * k_big))
}

/// [`expected_pcr`] as a float, for display.
pub fn expected_pcr_f64(n: usize, k: usize, m: usize) -> Result<f64, AnalysisError> {
    Ok(expected_pcr(n, k, m)?.to_f64().unwrap_or(f64::NAN))
}

/// `n` subjects, `m + 1` tests, each entry uniform over `k` categories.
pub fn random_instance_from_rng<R: Rng>(n: usize, k: usize, m: usize, rng: &mut R) -> OpdInstance {
    assert!(k >= 1, "need at least one category");
    let tests = (0..=m).map(|_| (0..n).map(|_| rng.random_range(0..k)).collect()).collect();
    OpdInstance::from_matrix(k, tests).expect("generated instance is well-formed")
}

pub fn random_instance(n: usize, k: usize, m: usize, seed: u64) -> Result<OpdInstance, AnalysisError> {
    require_positive(k, "k")?;
    require_positive(m, "m")?;
    Ok(random_instance_from_rng(n, k, m, &mut ChaCha8Rng::seed_from_u64(seed)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    /// Standard error of the mean; infinite for a single sample.
    pub stderr: f64,
    pub samples: u64,
}

pub fn monte_carlo_expected_pcr(
    n: usize,
    k: usize,
    m: usize,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate, AnalysisError> {
    require_positive(k, "k")?;
    require_positive(m, "m")?;
    if samples == 0 {
        return Err(AnalysisError::NotPositive { name: "samples" });
    }
    let (sum, sum_sq) = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let inst = random_instance_from_rng(n, k, m, &mut rng);
            let value = pcr(&inst).expect("generated instances carry sigma") as u128;
            (value, value * value)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let count = samples as f64;
    let mean = sum as f64 / count;
    let stderr = if samples == 1 {
        f64::INFINITY
    } else {
        // exact integer numerator of the unbiased variance
        let numerator = (samples as u128 * sum_sq - sum * sum) as f64;
        (numerator / (count * (count - 1.0)) / count).sqrt()
    };
    Ok(MonteCarloEstimate { mean, stderr, samples })
}
