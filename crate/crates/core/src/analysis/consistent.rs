//! Bounds for consistent instances, where no subject ever moves down.
//!
//! A pair can cross at most once per interval, and a pair can only cross
//! when one of them jumps at least two categories, so at most `k − 2` times
//! overall. The lower bound comes from a construction: spread subjects over
//! a bundle of `k'` categories, and at each interval mirror the bundle onto
//! the next one, which shares its top category with the previous bundle.
//!
//! The bundles must fit into `k` categories. When fewer than `m` of them
//! fit, the construction stops after the last one that does and repeats its
//! final test; the lower bound counts only the intervals actually used.

use super::{balanced_partition, ecr_two_tests, pairs, require_positive, AnalysisError};
use crate::model::OpdInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistentParams {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// Bundle width `max(⌈k/(m+1)⌉, 2)`.
    pub k_prime: usize,
    /// `n = k'·x + y`.
    pub x: usize,
    pub y: usize,
    /// Intervals whose bundle fits inside the `k` categories, at most `m`.
    pub intervals: usize,
}

impl ConsistentParams {
    pub fn new(n: usize, k: usize, m: usize) -> Result<Self, AnalysisError> {
        require_positive(n, "n")?;
        require_positive(m, "m")?;
        if k < 2 {
            return Err(AnalysisError::TooFewCategories { k, min: 2 });
        }
        let k_prime = k.div_ceil(m + 1).max(2);
        let intervals = m.min((k - k_prime) / (k_prime - 1));
        Ok(Self { n, k, m, k_prime, x: n / k_prime, y: n % k_prime, intervals })
    }

    /// First category (0-based) of bundle `l`.
    fn bundle_start(&self, l: usize) -> usize {
        l * (self.k_prime - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistentBounds {
    pub params: ConsistentParams,
    /// Crossings realised by [`consistent_extremal_instance`].
    pub lower: u64,
    /// `min(k − 2, m) · C(n, 2)`.
    pub upper: u64,
    /// The construction's count if all `m` bundles fitted; exceeds `upper`
    /// when `k` is small relative to `m`.
    pub literal_lower: u64,
}

fn bundle_crossings(p: &ConsistentParams, intervals: usize) -> u64 {
    let (n, x, y, kp) = (p.n as u64, p.x as u64, p.y as u64, p.k_prime as u64);
    let twice = intervals as u64 * (y * (x + 1) * (n - x - 1) + (kp - y) * x * (n - x));
    debug_assert_eq!(
        twice as i128,
        intervals as i128
            * (y as i128 * (n as i128 - (x * x) as i128 + x as i128 * (n as i128 - 2) - 1)
                + (kp - y) as i128 * (x * (n - x)) as i128)
    );
    twice / 2
}

pub fn consistent_bounds(n: usize, k: usize, m: usize) -> Result<ConsistentBounds, AnalysisError> {
    let params = ConsistentParams::new(n, k, m)?;
    let upper = (k - 2).min(m) as u64 * pairs(n);
    let lower = bundle_crossings(&params, params.intervals);
    let literal_lower = bundle_crossings(&params, m);
    debug_assert_eq!(
        lower,
        params.intervals as u64
            * ecr_two_tests(&balanced_partition(n, params.k_prime).iter().map(|&a| a as i64).collect::<Vec<_>>())
                .unwrap()
    );
    Ok(ConsistentBounds { params, lower, upper, literal_lower })
}

/// A consistent instance with [`ConsistentBounds::lower`] crossings.
pub fn consistent_extremal_instance(n: usize, k: usize, m: usize) -> Result<OpdInstance, AnalysisError> {
    let p = ConsistentParams::new(n, k, m)?;
    let mut current: Vec<usize> = balanced_partition(n, p.k_prime)
        .into_iter()
        .enumerate()
        .flat_map(|(c, size)| std::iter::repeat_n(c, size))
        .collect();
    let mut tests = vec![current.clone()];
    for l in 1..=m {
        if l <= p.intervals {
            let (from, to) = (p.bundle_start(l - 1), p.bundle_start(l));
            current = current.iter().map(|&c| to + (p.k_prime - 1 - (c - from))).collect();
        }
        tests.push(current.clone());
    }
    Ok(OpdInstance::from_matrix(k, tests).expect("generated instance is well-formed"))
}
