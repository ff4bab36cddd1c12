//! Crossing counts and optimal layouts.
//!
//! [`optimal_layout`] sweeps the tests twice. The forward sweep orders each
//! category at `t_{i+1}` by the order its members had at `t_i`; the backward
//! sweep orders each category at `t_i` by the order at `t_{i+1}`. What comes
//! out has exactly one crossing per forced event, so its crossing count is the
//! panel crossing number.

mod crossings;
mod forced;
mod oracle;

use thiserror::Error;

use crate::model::{CombinatorialLayout, ModelError, OpdInstance, SigmaOrdering};

pub use crossings::{count_inversions_between, count_layout_crossings, crossing_report, CrossingCount, CrossingReport};
pub use forced::{
    count_strongly_forced, count_weakly_forced, forced_crossings, redundant_crossings, ForcedCrossings,
    RedundantCrossing, RedundantKind,
};
pub use oracle::{brute_force_pcr, brute_force_pcr_with_budget, oracle_work, ORACLE_BUDGET};

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("layout is not category-consistent under sigma")]
    InvalidLayout,
    #[error("instance too large for oracle: {work} transitions exceeds budget {budget}")]
    TooLargeForOracle { work: u128, budget: u128 },
}

/// Reorders `prev` into blocks by category at `test`, blocks in sigma order,
/// each block keeping the relative order of `prev`.
fn regroup(prev: &[usize], test: &[usize], sigma: &SigmaOrdering) -> Vec<usize> {
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); sigma.len()];
    for &s in prev {
        buckets[test[s]].push(s);
    }
    sigma.order().iter().flat_map(|&c| std::mem::take(&mut buckets[c])).collect()
}

/// One permutation per test, each grouped by category in sigma order and
/// otherwise in subject-index order. Usually far from optimal.
pub fn naive_layout(inst: &OpdInstance) -> Result<CombinatorialLayout, LayoutError> {
    let sigma = inst.require_sigma()?;
    let identity: Vec<usize> = (0..inst.num_subjects()).collect();
    let pis = inst.tests().iter().map(|test| regroup(&identity, test, sigma)).collect();
    Ok(CombinatorialLayout::new(pis)?)
}

/// A crossing-minimal layout.
///
/// The first permutation starts from subject-index order inside each
/// category, which makes the result deterministic.
pub fn optimal_layout(inst: &OpdInstance) -> Result<CombinatorialLayout, LayoutError> {
    let sigma = inst.require_sigma()?;
    let tests = inst.tests();
    let m = inst.num_intervals();

    let mut pis: Vec<Vec<usize>> = Vec::with_capacity(m + 1);
    pis.push(regroup(&(0..inst.num_subjects()).collect::<Vec<_>>(), &tests[0], sigma));
    for i in 0..m {
        let next = regroup(&pis[i], &tests[i + 1], sigma);
        pis.push(next);
    }
    for i in (0..m).rev() {
        pis[i] = regroup(&pis[i + 1], &tests[i], sigma);
    }
    Ok(CombinatorialLayout::new(pis)?)
}

/// Panel crossing number: crossings of [`optimal_layout`].
pub fn pcr(inst: &OpdInstance) -> Result<u64, LayoutError> {
    let layout = optimal_layout(inst)?;
    Ok(crossings::count_unchecked(&layout).total)
}
