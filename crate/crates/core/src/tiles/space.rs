//! Learning spaces and their graphs.
//!
//! A learning space is a family of knowledge states over a domain of items
//! that contains the empty set and the whole domain, in which every state
//! can be reached from every smaller state by adding one item at a time
//! (smoothness), and in which an item that can be learned from some state
//! can still be learned from every larger one (consistency).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{ItemSet, TileError};

/// Default cap on the number of states [`validate_learning_space`] examines.
pub const STATE_BUDGET: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceViolation {
    MissingEmptyState,
    MissingDomain,
    ItemOutOfRange {
        state: usize,
    },
    DuplicateState {
        first: usize,
        second: usize,
    },
    /// `lower ⊊ upper` with no one-item chain between them.
    NotSmooth {
        lower: usize,
        upper: usize,
    },
    /// `lower ⊆ upper` and `lower + item` is a state, but `upper + item` is not.
    NotConsistent {
        lower: usize,
        upper: usize,
        item: usize,
    },
}

impl fmt::Display for SpaceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingEmptyState => write!(f, "the empty set is not a state"),
            Self::MissingDomain => write!(f, "the full domain is not a state"),
            Self::ItemOutOfRange { state } => write!(f, "state {state} contains an item outside the domain"),
            Self::DuplicateState { first, second } => write!(f, "states {first} and {second} are equal"),
            Self::NotSmooth { lower, upper } => {
                write!(f, "no one-item chain from state {lower} to state {upper}")
            }
            Self::NotConsistent { lower, upper, item } => {
                write!(f, "item {item} extends state {lower} but not its superset state {upper}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpaceReport {
    pub violations: Vec<SpaceViolation>,
}

impl SpaceReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_smooth(&self) -> bool {
        !self.violations.iter().any(|v| matches!(v, SpaceViolation::NotSmooth { .. }))
    }

    pub fn is_consistent(&self) -> bool {
        !self.violations.iter().any(|v| matches!(v, SpaceViolation::NotConsistent { .. }))
    }
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the learning-space axioms over items `0..domain`.
///
/// Smoothness is checked by searching upward from each state through
/// one-item extensions; consistency by trying every item on every
/// comparable pair. Quadratic in the number of states.
pub fn validate_learning_space(domain: usize, states: &[ItemSet], budget: usize) -> Result<SpaceReport, TileError> {
    if states.len() > budget {
        return Err(TileError::TooManyStates { states: states.len(), budget });
    }
    let mut violations = Vec::new();
    let mut index: HashMap<&ItemSet, usize> = HashMap::new();
    for (i, s) in states.iter().enumerate() {
        if s.bound() > domain {
            violations.push(SpaceViolation::ItemOutOfRange { state: i });
        }
        if let Some(&first) = index.get(s) {
            violations.push(SpaceViolation::DuplicateState { first, second: i });
        } else {
            index.insert(s, i);
        }
    }
    if !index.contains_key(&ItemSet::empty()) {
        violations.push(SpaceViolation::MissingEmptyState);
    }
    if !index.contains_key(&ItemSet::full(domain)) {
        violations.push(SpaceViolation::MissingDomain);
    }

    let up = |s: usize| -> Vec<usize> {
        (0..domain).filter(|&q| !states[s].contains(q)).filter_map(|q| index.get(&states[s].with(q)).copied()).collect()
    };
    let successors: Vec<Vec<usize>> = (0..states.len()).map(up).collect();

    for lower in 0..states.len() {
        let mut reached = vec![false; states.len()];
        reached[lower] = true;
        let mut queue = VecDeque::from([lower]);
        while let Some(s) = queue.pop_front() {
            for &t in &successors[s] {
                if !reached[t] {
                    reached[t] = true;
                    queue.push_back(t);
                }
            }
        }
        for upper in 0..states.len() {
            if upper != lower
                && !reached[upper]
                && states[lower].is_subset(&states[upper])
                && states[lower] != states[upper]
            {
                violations.push(SpaceViolation::NotSmooth { lower, upper });
            }
        }
    }

    for lower in 0..states.len() {
        for upper in 0..states.len() {
            if !states[lower].is_subset(&states[upper]) {
                continue;
            }
            for item in 0..domain {
                if states[lower].contains(item) || states[upper].contains(item) {
                    continue;
                }
                if index.contains_key(&states[lower].with(item)) && !index.contains_key(&states[upper].with(item)) {
                    violations.push(SpaceViolation::NotConsistent { lower, upper, item });
                }
            }
        }
    }
    Ok(SpaceReport { violations })
}

/// A validated learning space. States are addressed by their index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearningSpace {
    items: Vec<String>,
    states: Vec<ItemSet>,
}

impl LearningSpace {
    pub fn new(items: Vec<String>, states: Vec<ItemSet>) -> Result<Self, TileError> {
        let report = validate_learning_space(items.len(), &states, STATE_BUDGET)?;
        if !report.is_valid() {
            return Err(TileError::InvalidSpace(report));
        }
        Ok(Self { items, states })
    }

    /// Every subset of the items, in binary counting order.
    pub fn powerset(items: Vec<String>) -> Result<Self, TileError> {
        let q = items.len();
        if q > 12 {
            return Err(TileError::TooManyStates { states: 1 << q.min(63), budget: STATE_BUDGET });
        }
        let states = (0..1usize << q).map(|mask| (0..q).filter(|b| mask >> b & 1 == 1).collect()).collect();
        Self::new(items, states)
    }

    /// `∅ ⊂ {0} ⊂ {0,1} ⊂ …`.
    pub fn chain(items: Vec<String>) -> Result<Self, TileError> {
        let states = (0..=items.len()).map(ItemSet::full).collect();
        Self::new(items, states)
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn states(&self) -> &[ItemSet] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, state: &ItemSet) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }
}

/// States joined when they differ by exactly one item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateGraph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl StateGraph {
    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Breadth-first distances from `source`; `None` where unreachable.
    pub fn distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_vertices()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices() == 0 || self.distances(0).iter().all(Option::is_some)
    }
}

pub fn learning_space_graph(space: &LearningSpace) -> StateGraph {
    let index: HashMap<&ItemSet, usize> = space.states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut adjacency = vec![Vec::new(); space.num_states()];
    let mut edges = Vec::new();
    for (u, state) in space.states.iter().enumerate() {
        for q in (0..space.items.len()).filter(|&q| !state.contains(q)) {
            if let Some(&v) = index.get(&state.with(q)) {
                adjacency[u].push(v);
                adjacency[v].push(u);
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    edges.sort_unstable();
    StateGraph { adjacency, edges }
}

/// Maps each state to a category index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingFunction {
    categories: Vec<usize>,
    num_categories: usize,
}

impl RankingFunction {
    pub fn new(space: &LearningSpace, categories: Vec<usize>, num_categories: usize) -> Result<Self, TileError> {
        if categories.len() != space.num_states() {
            return Err(TileError::RankingNotTotal { states: space.num_states(), given: categories.len() });
        }
        if let Some(state) = categories.iter().position(|&c| c >= num_categories) {
            return Err(TileError::UnknownCategory { state, category: categories[state] });
        }
        Ok(Self { categories, num_categories })
    }

    /// Rank each state by how many items it holds.
    pub fn by_size(space: &LearningSpace) -> Self {
        Self { categories: space.states().iter().map(ItemSet::len).collect(), num_categories: space.items().len() + 1 }
    }

    pub fn category(&self, state: usize) -> usize {
        self.categories[state]
    }

    pub fn num_categories(&self) -> usize {
        self.num_categories
    }
}
