//! Strongly and weakly forced crossings.
//!
//! For a pair of subjects, look at the sign of their category difference at
//! each test. Two consecutive non-zero signs that disagree are an overtake
//! (strongly forced). Two non-zero signs that disagree across a non-empty
//! run of level tests are a catch-up followed by a break-away (weakly
//! forced). Every such event costs exactly one crossing in any layout.

use std::cmp::Ordering;

use super::LayoutError;
use crate::model::{CombinatorialLayout, OpdInstance, SigmaOrdering};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ForcedCrossings {
    pub strong: u64,
    pub weak: u64,
}

impl ForcedCrossings {
    pub fn total(&self) -> u64 {
        self.strong + self.weak
    }
}

fn relative(sigma: &SigmaOrdering, a: usize, b: usize) -> Ordering {
    sigma.rank(a).cmp(&sigma.rank(b))
}

/// Forced crossings of the pair `(s, t)`.
fn pair_forced(inst: &OpdInstance, sigma: &SigmaOrdering, s: usize, t: usize) -> ForcedCrossings {
    let mut out = ForcedCrossings::default();
    // last non-level test: (index, sign)
    let mut last: Option<(usize, Ordering)> = None;
    for (i, test) in inst.tests().iter().enumerate() {
        let sign = relative(sigma, test[s], test[t]);
        if sign == Ordering::Equal {
            continue;
        }
        if let Some((j, prev)) = last {
            if prev != sign {
                if j + 1 == i {
                    out.strong += 1;
                } else {
                    out.weak += 1;
                }
            }
        }
        last = Some((i, sign));
    }
    out
}

pub fn forced_crossings(inst: &OpdInstance) -> Result<ForcedCrossings, LayoutError> {
    let sigma = inst.require_sigma()?;
    let n = inst.num_subjects();
    let mut total = ForcedCrossings::default();
    for s in 0..n {
        for t in s + 1..n {
            let f = pair_forced(inst, sigma, s, t);
            total.strong += f.strong;
            total.weak += f.weak;
        }
    }
    Ok(total)
}

/// Overtakes between consecutive tests, over all subject pairs.
pub fn count_strongly_forced(inst: &OpdInstance) -> Result<u64, LayoutError> {
    Ok(forced_crossings(inst)?.strong)
}

/// Catch-up / level stretch / break-away events, one per maximal stretch.
pub fn count_weakly_forced(inst: &OpdInstance) -> Result<u64, LayoutError> {
    Ok(forced_crossings(inst)?.weak)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedundantKind {
    /// Level at both ends of the interval, yet the order flips.
    LevelFlip,
    /// Level at every test up to the start of the interval, and then the
    /// pair crosses while separating.
    LeadingStretch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RedundantCrossing {
    pub interval: usize,
    pub subjects: (usize, usize),
    pub kind: RedundantKind,
}

/// Crossings that some other layout avoids without paying elsewhere.
///
/// Only reports the two kinds that can be read off locally; an optimal
/// layout has none of either.
pub fn redundant_crossings(
    inst: &OpdInstance,
    layout: &CombinatorialLayout,
) -> Result<Vec<RedundantCrossing>, LayoutError> {
    let count = super::count_layout_crossings(inst, layout)?;
    let mut found = Vec::new();
    if count.total == 0 {
        return Ok(found);
    }
    let n = inst.num_subjects();
    let positions: Vec<Vec<usize>> = layout
        .pis()
        .iter()
        .map(|pi| {
            let mut pos = vec![0; n];
            for (p, &s) in pi.iter().enumerate() {
                pos[s] = p;
            }
            pos
        })
        .collect();
    let tests = inst.tests();
    for s in 0..n {
        for t in s + 1..n {
            let mut level_prefix = true;
            for i in 0..inst.num_intervals() {
                let level_here = tests[i][s] == tests[i][t];
                level_prefix &= level_here;
                let crossed = (positions[i][s] < positions[i][t]) != (positions[i + 1][s] < positions[i + 1][t]);
                if !crossed {
                    continue;
                }
                let level_next = tests[i + 1][s] == tests[i + 1][t];
                let kind = if level_here && level_next {
                    Some(RedundantKind::LevelFlip)
                } else if level_prefix && !level_next {
                    Some(RedundantKind::LeadingStretch)
                } else {
                    None
                };
                if let Some(kind) = kind {
                    found.push(RedundantCrossing { interval: i, subjects: (s, t), kind });
                }
            }
        }
    }
    Ok(found)
}
