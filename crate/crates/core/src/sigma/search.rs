//! Exact search for the best category order.
//!
//! Categories are placed from the bottom up. Once a category is placed, its
//! order relative to every unplaced category is fixed, so a pair is decided
//! as soon as one of its members is placed. A key is charged the moment both
//! of its pairs are decided; since charges are never negative, the running
//! total is a lower bound for every completion of the prefix.

use itertools::Itertools;

use super::tables::{compute_tables, objective_for_sigma, PairKey, ResponsibilityTables};
use super::SigmaError;
use crate::layout::pcr;
use crate::model::{OpdInstance, SigmaOrdering};

/// Default cap on search nodes visited by [`optimal_sigma_exact`].
pub const SEARCH_BUDGET: u64 = 20_000_000;

/// Largest category count [`brute_force_optimal_sigma`] accepts.
pub const BRUTE_FORCE_MAX_CATEGORIES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSolution {
    pub sigma: SigmaOrdering,
    pub objective: u64,
}

struct Search {
    keys: Vec<(PairKey, u64)>,
    touching: Vec<Vec<usize>>,
    placed: Vec<Option<usize>>,
    prefix: Vec<usize>,
    best: Option<(Vec<usize>, u64)>,
    nodes: u64,
    budget: u64,
}

impl Search {
    /// Order of `(a, b)` if decided.
    fn before(&self, a: usize, b: usize) -> Option<bool> {
        match (self.placed[a], self.placed[b]) {
            (Some(x), Some(y)) => Some(x < y),
            (Some(_), None) => Some(true),
            (None, Some(_)) => Some(false),
            (None, None) => None,
        }
    }

    fn decided(&self, key: &PairKey) -> Option<bool> {
        let p = self.before(key.first.0, key.first.1)?;
        let q = self.before(key.second.0, key.second.1)?;
        Some(p != q)
    }

    fn run(&mut self, bound: u64) -> Result<(), SigmaError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SigmaError::BudgetExceeded { budget: self.budget });
        }
        if let Some((_, best)) = &self.best {
            if bound >= *best {
                return Ok(());
            }
        }
        let k = self.placed.len();
        if self.prefix.len() == k {
            self.best = Some((self.prefix.clone(), bound));
            return Ok(());
        }
        for v in 0..k {
            if self.placed[v].is_some() {
                continue;
            }
            let undecided: Vec<usize> =
                self.touching[v].iter().copied().filter(|&i| self.decided(&self.keys[i].0).is_none()).collect();
            self.placed[v] = Some(self.prefix.len());
            self.prefix.push(v);
            let added: u64 = undecided
                .iter()
                .filter(|&&i| self.decided(&self.keys[i].0) == Some(true))
                .map(|&i| self.keys[i].1)
                .sum();
            let result = self.run(bound + added);
            self.prefix.pop();
            self.placed[v] = None;
            result?;
        }
        Ok(())
    }
}

/// Best order for precomputed tables; ties go to the lexicographically
/// smallest order (lowest category first).
pub fn optimal_sigma_for_tables(tables: &ResponsibilityTables, budget: u64) -> Result<SigmaSolution, SigmaError> {
    let k = tables.num_categories();
    let keys: Vec<(PairKey, u64)> = tables.entries().iter().map(|(key, c)| (*key, c.total())).collect();
    let mut touching = vec![Vec::new(); k];
    for (i, (key, _)) in keys.iter().enumerate() {
        for c in key.categories().into_iter().unique() {
            touching[c].push(i);
        }
    }
    let mut search =
        Search { keys, touching, placed: vec![None; k], prefix: Vec::with_capacity(k), best: None, nodes: 0, budget };
    search.run(0)?;
    let (order, variable) = search.best.expect("some order is always complete");
    Ok(SigmaSolution {
        sigma: SigmaOrdering::from_order(order).expect("search emits permutations"),
        objective: variable + tables.constant().total(),
    })
}

/// Category order with the fewest crossings in the optimal layout.
pub fn optimal_sigma_exact(inst: &OpdInstance, budget: u64) -> Result<SigmaSolution, SigmaError> {
    optimal_sigma_for_tables(&compute_tables(inst), budget)
}

/// Tries every order and lays each one out. Reference for the search.
pub fn brute_force_optimal_sigma(inst: &OpdInstance) -> Result<SigmaSolution, SigmaError> {
    let k = inst.num_categories();
    if k > BRUTE_FORCE_MAX_CATEGORIES {
        return Err(SigmaError::TooManyCategories { k, max: BRUTE_FORCE_MAX_CATEGORIES });
    }
    let mut best: Option<SigmaSolution> = None;
    for order in (0..k).permutations(k) {
        let sigma = SigmaOrdering::from_order(order)?;
        let objective = pcr(&inst.with_sigma(sigma.clone())?)?;
        if best.as_ref().is_none_or(|b| objective < b.objective) {
            best = Some(SigmaSolution { sigma, objective });
        }
    }
    Ok(best.expect("at least one order"))
}

/// Objective of every order, for small `k`.
pub fn all_objectives(tables: &ResponsibilityTables) -> Vec<(SigmaOrdering, u64)> {
    let k = tables.num_categories();
    (0..k)
        .permutations(k)
        .map(|order| {
            let sigma = SigmaOrdering::from_order(order).expect("permutation");
            let value = objective_for_sigma(tables, &sigma);
            (sigma, value)
        })
        .collect()
}
