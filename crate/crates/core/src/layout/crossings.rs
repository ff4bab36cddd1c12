use serde::{Deserialize, Serialize};

use super::LayoutError;
use crate::model::{check_dimensions, layout_is_valid, CombinatorialLayout, OpdInstance};

/// Crossing totals of a layout, with the forced-crossing decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub total: u64,
    pub strong: u64,
    pub weak: u64,
    pub per_interval: Vec<u64>,
}

/// Crossings of one layout, per interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCount {
    pub total: u64,
    pub per_interval: Vec<u64>,
}

/// Number of element pairs ordered differently by `a` and `b`, both
/// permutations of `0..n`. Runs in `O(n log n)`.
pub fn count_inversions_between(a: &[usize], b: &[usize]) -> u64 {
    debug_assert_eq!(a.len(), b.len());
    let mut position = vec![0; b.len()];
    for (p, &x) in b.iter().enumerate() {
        position[x] = p;
    }
    let mut seq: Vec<usize> = a.iter().map(|&x| position[x]).collect();
    let mut scratch = vec![0; seq.len()];
    merge_count(&mut seq, &mut scratch)
}

fn merge_count(seq: &mut [usize], scratch: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = seq.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        merge_count(left, sl) + merge_count(right, sr)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            scratch[k] = seq[i];
            i += 1;
        } else {
            scratch[k] = seq[j];
            // every remaining left element is larger
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&scratch[..n]);
    count
}

pub(crate) fn count_unchecked(layout: &CombinatorialLayout) -> CrossingCount {
    let per_interval: Vec<u64> = layout.pis().windows(2).map(|w| count_inversions_between(&w[0], &w[1])).collect();
    CrossingCount { total: per_interval.iter().sum(), per_interval }
}

/// Counts pairs inverted between consecutive permutations.
///
/// The layout must match the instance dimensions and, when the instance has
/// a sigma, be category-consistent.
pub fn count_layout_crossings(inst: &OpdInstance, layout: &CombinatorialLayout) -> Result<CrossingCount, LayoutError> {
    check_dimensions(inst, layout)?;
    if inst.sigma().is_some() && !layout_is_valid(inst, layout)? {
        return Err(LayoutError::InvalidLayout);
    }
    Ok(count_unchecked(layout))
}

/// [`count_layout_crossings`] plus the strong/weak forced counts of the instance.
pub fn crossing_report(inst: &OpdInstance, layout: &CombinatorialLayout) -> Result<CrossingReport, LayoutError> {
    let count = count_layout_crossings(inst, layout)?;
    let forced = super::forced_crossings(inst)?;
    Ok(CrossingReport {
        total: count.total,
        strong: forced.strong,
        weak: forced.weak,
        per_interval: count.per_interval,
    })
}
