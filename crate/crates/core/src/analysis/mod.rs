//! Extremal and expected crossing numbers, and generators that attain them.

mod consistent;
mod extremal;
mod random;

use thiserror::Error;

pub use consistent::{consistent_bounds, consistent_extremal_instance, ConsistentBounds, ConsistentParams};
pub use extremal::{balanced_partition, ecr_general, ecr_two_tests, extremal_instance_general, ExtremalParams};
pub use random::{
    expected_pcr, expected_pcr_f64, monte_carlo_expected_pcr, random_instance, random_instance_from_rng,
    MonteCarloEstimate,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("partition part {index} is negative ({value})")]
    NegativePart { index: usize, value: i64 },
    #[error("need at least {min} categories, got {k}")]
    TooFewCategories { k: usize, min: usize },
    #[error("{name} must be at least 1")]
    NotPositive { name: &'static str },
}

pub(crate) fn require_positive(value: usize, name: &'static str) -> Result<(), AnalysisError> {
    if value == 0 {
        Err(AnalysisError::NotPositive { name })
    } else {
        Ok(())
    }
}

/// `n choose 2`.
pub(crate) fn pairs(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}
