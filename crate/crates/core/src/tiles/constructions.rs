//! The four tiles built from an instance.
//!
//! Every construction makes one tile per interval and joins them. In the
//! interval ending at test `i`, internal vertices are copies of knowledge
//! states tagged with `i`; wall vertices are categories (total tile) or
//! subjects ordered by the layout (the other three).

use std::collections::BTreeSet;

use super::{join_tiles, LearningSpace, RankingFunction, StateGraph, Tile, TileError, TileVertex};
use crate::model::{check_dimensions, layout_is_valid, CategorySet, CombinatorialLayout, OpdInstance, SigmaOrdering};

/// Panel data where each test reveals a knowledge state, ranked into
/// categories by a ranking function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePanel {
    instance: OpdInstance,
    states: Vec<Vec<usize>>,
}

impl StatePanel {
    /// `states[i][s]` is the state of subject `s` at test `i`. Subjects are
    /// named `s1..sn`.
    pub fn new(
        space: &LearningSpace,
        alpha: &RankingFunction,
        categories: CategorySet,
        sigma: Option<SigmaOrdering>,
        states: Vec<Vec<usize>>,
    ) -> Result<Self, TileError> {
        if categories.len() != alpha.num_categories() {
            return Err(TileError::CategoryMismatch { ranking: alpha.num_categories(), instance: categories.len() });
        }
        for (timestamp, row) in states.iter().enumerate() {
            if let Some((subject, &state)) = row.iter().enumerate().find(|(_, &v)| v >= space.num_states()) {
                return Err(TileError::UnknownState { timestamp, subject, state });
            }
        }
        let n = states.first().map_or(0, Vec::len);
        let tests = states.iter().map(|row| row.iter().map(|&v| alpha.category(v)).collect()).collect();
        let subjects = (1..=n).map(|j| format!("s{j}")).collect();
        let instance = OpdInstance::new(subjects, categories, tests, sigma)?;
        Ok(Self { instance, states })
    }

    pub fn instance(&self) -> &OpdInstance {
        &self.instance
    }

    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    /// State of `subject` at test `timestamp`.
    pub fn state(&self, timestamp: usize, subject: usize) -> usize {
        self.states[timestamp][subject]
    }
}

/// Every state reachable in the learning space between consecutive tests,
/// with categories as walls.
pub fn total_learning_tile(
    inst: &OpdInstance,
    space: &LearningSpace,
    graph: &StateGraph,
    alpha: &RankingFunction,
) -> Result<Tile, TileError> {
    let sigma = inst.require_sigma()?;
    if alpha.num_categories() != inst.num_categories() {
        return Err(TileError::CategoryMismatch { ranking: alpha.num_categories(), instance: inst.num_categories() });
    }
    let k = inst.num_categories();
    let q = space.num_states();
    let tiles = (1..=inst.num_intervals())
        .map(|i| {
            // left wall at 0..k, right wall at k..2k, both in sigma order
            let mut vertices: Vec<TileVertex> = Vec::with_capacity(2 * k + q);
            vertices.extend(sigma.order().iter().map(|&c| TileVertex::Category { test: i - 1, category: c }));
            vertices.extend(sigma.order().iter().map(|&c| TileVertex::Category { test: i, category: c }));
            vertices.extend((0..q).map(|v| TileVertex::State { test: i, state: v }));
            let internal = |v: usize| 2 * k + v;
            let mut edges = Vec::new();
            for v in 0..q {
                let rank = sigma.rank(alpha.category(v));
                edges.push((rank, internal(v)));
                edges.push((internal(v), k + rank));
            }
            edges.extend(graph.edges().iter().map(|&(u, v)| (internal(u), internal(v))));
            Tile::new(vertices, edges, (0..k).collect(), (k..2 * k).collect())
        })
        .collect::<Result<Vec<_>, _>>()?;
    join_tiles(&tiles)
}

/// Internal part of one interval: state vertices, state edges, and for each
/// subject the states its wall vertices attach to.
struct Interval {
    vertices: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
    attach: Vec<(usize, usize)>,
}

fn subject_tile(i: usize, layout: &CombinatorialLayout, interval: &Interval) -> Result<Tile, TileError> {
    let n = layout.num_subjects();
    let mut vertices: Vec<TileVertex> = Vec::with_capacity(2 * n + interval.vertices.len());
    vertices.extend(layout.pi(i - 1).iter().map(|&s| TileVertex::Subject { test: i - 1, subject: s }));
    vertices.extend(layout.pi(i).iter().map(|&s| TileVertex::Subject { test: i, subject: s }));
    let mut left = vec![0; n];
    let mut right = vec![0; n];
    for (p, &s) in layout.pi(i - 1).iter().enumerate() {
        left[s] = p;
    }
    for (p, &s) in layout.pi(i).iter().enumerate() {
        right[s] = n + p;
    }
    let mut index = std::collections::HashMap::new();
    for &v in &interval.vertices {
        index.insert(v, vertices.len());
        vertices.push(TileVertex::State { test: i, state: v });
    }
    let mut edges: Vec<(usize, usize)> = interval.edges.iter().map(|(u, v)| (index[u], index[v])).collect();
    for (s, &(first, last)) in interval.attach.iter().enumerate() {
        edges.push((left[s], index[&first]));
        edges.push((index[&last], right[s]));
    }
    Tile::new(vertices, edges, (0..n).collect(), (n..2 * n).collect())
}

fn check_layout(inst: &OpdInstance, layout: &CombinatorialLayout) -> Result<(), TileError> {
    check_dimensions(inst, layout)?;
    if !layout_is_valid(inst, layout)? {
        return Err(TileError::Layout(crate::layout::LayoutError::InvalidLayout));
    }
    Ok(())
}

/// Union of all shortest paths each subject could have taken between
/// consecutive tests.
pub fn possibilistic_learning_tile(
    panel: &StatePanel,
    graph: &StateGraph,
    layout: &CombinatorialLayout,
) -> Result<Tile, TileError> {
    check_layout(&panel.instance, layout)?;
    let n = panel.instance.num_subjects();
    let tiles = (1..panel.states.len())
        .map(|i| {
            let mut interval = Interval { vertices: BTreeSet::new(), edges: BTreeSet::new(), attach: Vec::new() };
            for s in 0..n {
                let (from, to) = (panel.state(i - 1, s), panel.state(i, s));
                let ds = graph.distances(from);
                let dt = graph.distances(to);
                let total = ds[to].ok_or(TileError::Unreachable { from, to })?;
                let on_path = |v: usize| matches!((ds[v], dt[v]), (Some(a), Some(b)) if a + b == total);
                interval.vertices.extend((0..graph.num_vertices()).filter(|&v| on_path(v)));
                for &(u, v) in graph.edges() {
                    let forward =
                        |a: usize, b: usize| matches!((ds[a], dt[b]), (Some(x), Some(y)) if x + 1 + y == total);
                    if forward(u, v) || forward(v, u) {
                        interval.edges.insert((u, v));
                    }
                }
                interval.attach.push((from, to));
            }
            subject_tile(i, layout, &interval)
        })
        .collect::<Result<Vec<_>, _>>()?;
    join_tiles(&tiles)
}

/// Union of the walks the subjects actually took. `walks[i][s]` is the walk
/// of subject `s` from test `i` to test `i + 1`, as state indices.
pub fn exact_learning_tile(
    panel: &StatePanel,
    graph: &StateGraph,
    walks: &[Vec<Vec<usize>>],
    layout: &CombinatorialLayout,
) -> Result<Tile, TileError> {
    check_layout(&panel.instance, layout)?;
    let n = panel.instance.num_subjects();
    let tiles = (1..panel.states.len())
        .map(|i| {
            let mut interval = Interval { vertices: BTreeSet::new(), edges: BTreeSet::new(), attach: Vec::new() };
            for s in 0..n {
                let walk = walks
                    .get(i - 1)
                    .and_then(|w| w.get(s))
                    .ok_or(TileError::MissingWalk { interval: i - 1, subject: s })?;
                let (first, last) = match (walk.first(), walk.last()) {
                    (Some(&a), Some(&b)) if a == panel.state(i - 1, s) && b == panel.state(i, s) => (a, b),
                    _ => return Err(TileError::WrongEndpoints { interval: i - 1, subject: s }),
                };
                for (step, w) in walk.windows(2).enumerate() {
                    if w[0] >= graph.num_vertices() || w[1] >= graph.num_vertices() || !graph.has_edge(w[0], w[1]) {
                        return Err(TileError::NotAWalk { interval: i - 1, subject: s, step });
                    }
                    interval.edges.insert((w[0].min(w[1]), w[0].max(w[1])));
                }
                interval.vertices.extend(walk.iter().copied());
                interval.attach.push((first, last));
            }
            subject_tile(i, layout, &interval)
        })
        .collect::<Result<Vec<_>, _>>()?;
    join_tiles(&tiles)
}

/// Each subject is a straight edge from its position in `π_{i−1}` to its
/// position in `π_i`.
pub fn ordinal_panel_tile(inst: &OpdInstance, layout: &CombinatorialLayout) -> Result<Tile, TileError> {
    check_dimensions(inst, layout)?;
    if inst.sigma().is_some() && !layout_is_valid(inst, layout)? {
        return Err(TileError::Layout(crate::layout::LayoutError::InvalidLayout));
    }
    let n = inst.num_subjects();
    let tiles = (1..layout.num_timestamps())
        .map(|i| {
            let mut vertices: Vec<TileVertex> =
                layout.pi(i - 1).iter().map(|&s| TileVertex::Subject { test: i - 1, subject: s }).collect();
            vertices.extend(layout.pi(i).iter().map(|&s| TileVertex::Subject { test: i, subject: s }));
            let mut right = vec![0; n];
            for (p, &s) in layout.pi(i).iter().enumerate() {
                right[s] = n + p;
            }
            let edges = layout.pi(i - 1).iter().enumerate().map(|(p, &s)| (p, right[s]));
            Tile::new(vertices, edges, (0..n).collect(), (n..2 * n).collect())
        })
        .collect::<Result<Vec<_>, _>>()?;
    join_tiles(&tiles)
}
