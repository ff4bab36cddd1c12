//! Responsibility tables.
//!
//! Fix a pair of subjects and keep only the tests where they are in
//! different categories. Each two consecutive kept tests form an event: at
//! the first they sit in categories `(a, b)`, at the second in `(c, d)`. The
//! pair crosses between them exactly when sigma orders `a, b` differently
//! from `c, d`. An event is strong if the two tests are adjacent, weak if a
//! level stretch separates them.
//!
//! Summing events per key turns the panel crossing number into a function
//! of sigma alone, which is what the optimizer minimizes.

use std::collections::BTreeMap;
use std::fmt;

use crate::model::{OpdInstance, SigmaOrdering};

/// Two ordered category pairs, normalized so that the first pair is
/// ascending and not greater than the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

fn flip((a, b): (usize, usize)) -> (usize, usize) {
    (b, a)
}

impl PairKey {
    /// Smallest of the four representations that describe the same event.
    pub fn normalized(p: (usize, usize), q: (usize, usize)) -> Self {
        [(p, q), (q, p), (flip(p), flip(q)), (flip(q), flip(p))]
            .into_iter()
            .map(|(first, second)| PairKey { first, second })
            .min()
            .expect("four candidates")
    }

    /// Both pairs are the same ordered pair: never a crossing.
    pub fn is_trivial(&self) -> bool {
        self.first == self.second
    }

    /// The pairs are mirror images: a crossing under every sigma.
    pub fn is_tautology(&self) -> bool {
        self.second == flip(self.first)
    }

    /// Do the two pairs disagree under `sigma`?
    pub fn crosses(&self, sigma: &SigmaOrdering) -> bool {
        let (a, b) = self.first;
        let (c, d) = self.second;
        sigma.precedes(a, b) != sigma.precedes(c, d)
    }

    pub fn categories(&self) -> [usize; 4] {
        [self.first.0, self.first.1, self.second.0, self.second.1]
    }
}

/// `y_a_b_c_d`, the variable name used in exported programs.
impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.categories();
        write!(f, "y_{a}_{b}_{c}_{d}")
    }
}

/// Strong and weak event counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub sc: u64,
    pub wc: u64,
}

impl Counts {
    pub fn total(&self) -> u64 {
        self.sc + self.wc
    }

    fn add(&mut self, other: Counts) {
        self.sc += other.sc;
        self.wc += other.wc;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResponsibilityTables {
    num_categories: usize,
    entries: BTreeMap<PairKey, Counts>,
    constant: Counts,
}

impl ResponsibilityTables {
    pub fn num_categories(&self) -> usize {
        self.num_categories
    }

    /// Keys that cross under some orderings but not others, in sorted order.
    pub fn entries(&self) -> &BTreeMap<PairKey, Counts> {
        &self.entries
    }

    /// Events that cross whatever the ordering.
    pub fn constant(&self) -> Counts {
        self.constant
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty() && self.constant.total() == 0
    }

    pub fn get(&self, key: &PairKey) -> Counts {
        self.entries.get(key).copied().unwrap_or_default()
    }

    fn record(&mut self, key: PairKey, counts: Counts) {
        if key.is_trivial() {
            return;
        }
        if key.is_tautology() {
            self.constant.add(counts);
        } else {
            self.entries.entry(key).or_default().add(counts);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.constant.add(other.constant);
        for (key, counts) in other.entries {
            self.entries.entry(key).or_default().add(counts);
        }
        self
    }
}

/// Tables for `inst`; its sigma, if any, is ignored.
pub fn compute_tables(inst: &OpdInstance) -> ResponsibilityTables {
    use rayon::prelude::*;

    let n = inst.num_subjects();
    let tests = inst.tests();
    let empty = || ResponsibilityTables { num_categories: inst.num_categories(), ..Default::default() };
    (0..n)
        .into_par_iter()
        .fold(empty, |mut acc, s| {
            for t in s + 1..n {
                let mut last: Option<(usize, (usize, usize))> = None;
                for (i, test) in tests.iter().enumerate() {
                    let here = (test[s], test[t]);
                    if here.0 == here.1 {
                        continue;
                    }
                    if let Some((j, before)) = last {
                        let counts = if j + 1 == i { Counts { sc: 1, wc: 0 } } else { Counts { sc: 0, wc: 1 } };
                        acc.record(PairKey::normalized(before, here), counts);
                    }
                    last = Some((i, here));
                }
            }
            acc
        })
        .reduce(empty, ResponsibilityTables::merge)
}

/// Panel crossing number of the instance under `sigma`, read off the tables.
pub fn objective_for_sigma(tables: &ResponsibilityTables, sigma: &SigmaOrdering) -> u64 {
    tables.constant.total()
        + tables.entries.iter().filter(|(key, _)| key.crosses(sigma)).map(|(_, counts)| counts.total()).sum::<u64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::pcr;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn three() -> OpdInstance {
        OpdInstance::from_trajectories(&["c1", "c2", "c3"], &[("a", &["c1", "c3"]), ("b", &["c2", "c2"])]).unwrap()
    }

    fn sigma(order: &[usize]) -> SigmaOrdering {
        SigmaOrdering::from_order(order.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_key() {
        let tables = compute_tables(&three());
        assert_eq!(tables.entries().len(), 1);
        let (key, counts) = tables.entries().iter().next().unwrap();
        assert_eq!(key.to_string(), "y_0_1_2_1");
        assert_eq!(*counts, Counts { sc: 1, wc: 0 });
        assert_eq!(tables.constant(), Counts::default());
        assert_eq!(objective_for_sigma(&tables, &sigma(&[1, 0, 2])), 0);
        assert_eq!(objective_for_sigma(&tables, &sigma(&[0, 1, 2])), 1);
    }

    #[test]
    fn worked_example_matches_pcr_for_every_order() {
        let inst = three();
        let tables = compute_tables(&inst);
        for order in (0..3).permutations(3) {
            let s = sigma(&order);
            assert_eq!(objective_for_sigma(&tables, &s), pcr(&inst.with_sigma(s.clone()).unwrap()).unwrap());
        }
    }

    #[test]
    fn swap_is_constant() {
        let inst =
            OpdInstance::from_trajectories(&["c1", "c2"], &[("a", &["c1", "c2"]), ("b", &["c2", "c1"])]).unwrap();
        let tables = compute_tables(&inst);
        assert!(tables.entries().is_empty());
        assert_eq!(tables.constant(), Counts { sc: 1, wc: 0 });
        assert_eq!(objective_for_sigma(&tables, &sigma(&[1, 0])), 1);
    }

    #[test]
    fn identical_trajectories_give_nothing() {
        let inst = OpdInstance::from_matrix(3, vec![vec![2, 2], vec![0, 0], vec![1, 1]]).unwrap();
        let tables = compute_tables(&inst);
        assert!(tables.is_empty());
        assert_eq!(objective_for_sigma(&tables, &sigma(&[2, 0, 1])), 0);
    }

    #[test]
    fn weak_events_are_attributed_to_stretch_ends() {
        // level at t1, differing at t0 and t2
        let inst = OpdInstance::from_matrix(3, vec![vec![0, 1], vec![2, 2], vec![2, 0]]).unwrap();
        let tables = compute_tables(&inst);
        let key = PairKey::normalized((0, 1), (2, 0));
        assert_eq!(tables.get(&key), Counts { sc: 0, wc: 1 });
    }

    #[test]
    fn normalization_keeps_the_first_pair_ascending() {
        for p in (0..3).cartesian_product(0..3).filter(|(a, b)| a != b) {
            for q in (0..3).cartesian_product(0..3).filter(|(a, b)| a != b) {
                let key = PairKey::normalized(p, q);
                assert!(key.first.0 < key.first.1);
                assert!(key.first <= key.second);
                for order in (0..3).permutations(3) {
                    let s = sigma(&order);
                    let raw = s.precedes(p.0, p.1) != s.precedes(q.0, q.1);
                    assert_eq!(key.crosses(&s), raw);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn objective_equals_pcr(
            (k, tests) in (1usize..=4, 1usize..=5, 1usize..=3).prop_flat_map(|(k, n, m)| {
                (Just(k), proptest::collection::vec(proptest::collection::vec(0..k, n), m + 1))
            })
        ) {
            let inst = OpdInstance::from_matrix(k, tests).unwrap();
            let tables = compute_tables(&inst);
            for order in (0..k).permutations(k) {
                let s = sigma(&order);
                let expected = pcr(&inst.with_sigma(s.clone()).unwrap()).unwrap();
                prop_assert_eq!(objective_for_sigma(&tables, &s), expected);
                prop_assert_eq!(objective_for_sigma(&tables, &s.reversed()), expected);
            }
        }
    }
}
