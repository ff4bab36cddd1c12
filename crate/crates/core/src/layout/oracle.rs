//! Exhaustive minimum over all category-consistent layouts.
//!
//! Used as a reference for [`super::pcr`]. Enumerates every valid permutation
//! at every test and runs a shortest-path over the layered graph of
//! permutations, so the work is the number of transitions between adjacent
//! layers rather than the number of complete layouts.

use itertools::Itertools;
use rayon::prelude::*;

use super::LayoutError;
use crate::model::{subjects_in_category, OpdInstance};

/// Default cap on transitions explored by [`brute_force_pcr`].
pub const ORACLE_BUDGET: u128 = 10_000_000;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

fn layer_sizes(inst: &OpdInstance) -> Vec<u128> {
    (0..inst.num_timestamps())
        .map(|i| {
            (0..inst.num_categories())
                .map(|c| factorial(subjects_in_category(inst, i, c).len()))
                .fold(1u128, |acc, f| acc.saturating_mul(f))
        })
        .collect()
}

/// Transitions the oracle would evaluate on `inst`.
pub fn oracle_work(inst: &OpdInstance) -> u128 {
    let sizes = layer_sizes(inst);
    let pairs = sizes.windows(2).map(|w| w[0].saturating_mul(w[1]));
    pairs.fold(sizes[0], |acc, x| acc.saturating_add(x))
}

fn layer(inst: &OpdInstance, i: usize) -> Result<Vec<Vec<usize>>, LayoutError> {
    let sigma = inst.require_sigma()?;
    let blocks: Vec<Vec<usize>> =
        sigma.order().iter().map(|&c| subjects_in_category(inst, i, c)).filter(|b| !b.is_empty()).collect();
    if blocks.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    Ok(blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|parts| parts.concat())
        .collect())
}

fn positions(pi: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; pi.len()];
    for (p, &s) in pi.iter().enumerate() {
        pos[s] = p;
    }
    pos
}

// Deliberately quadratic: independent of the merge counter it checks.
fn pairwise_inversions(a: &[usize], b: &[usize]) -> u64 {
    let n = a.len();
    let mut count = 0;
    for x in 0..n {
        for y in x + 1..n {
            if (a[x] < a[y]) != (b[x] < b[y]) {
                count += 1;
            }
        }
    }
    count
}

/// Minimum crossings over all valid layouts, within [`ORACLE_BUDGET`].
pub fn brute_force_pcr(inst: &OpdInstance) -> Result<u64, LayoutError> {
    brute_force_pcr_with_budget(inst, ORACLE_BUDGET)
}

pub fn brute_force_pcr_with_budget(inst: &OpdInstance, budget: u128) -> Result<u64, LayoutError> {
    inst.require_sigma()?;
    let work = oracle_work(inst);
    if work > budget {
        return Err(LayoutError::TooLargeForOracle { work, budget });
    }
    let mut prev: Vec<Vec<usize>> = layer(inst, 0)?.iter().map(|p| positions(p)).collect();
    let mut cost = vec![0u64; prev.len()];
    for i in 1..inst.num_timestamps() {
        let next: Vec<Vec<usize>> = layer(inst, i)?.iter().map(|p| positions(p)).collect();
        cost = next
            .par_iter()
            .map(|a| {
                prev.iter()
                    .zip(&cost)
                    .map(|(b, &c)| c + pairwise_inversions(b, a))
                    .min()
                    .expect("layers are never empty")
            })
            .collect();
        prev = next;
    }
    Ok(cost.into_iter().min().expect("layers are never empty"))
}
