//! Tiles: graphs with an ordered left and right wall.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::TileError;

/// What a tile vertex stands for.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TileVertex {
    /// Category wall vertex at a timestamp.
    Category {
        test: usize,
        category: usize,
    },
    /// Subject wall vertex at a timestamp.
    Subject {
        test: usize,
        subject: usize,
    },
    /// Copy of a knowledge state inside the interval ending at `test`.
    State {
        test: usize,
        state: usize,
    },
    Named(String),
}

impl fmt::Display for TileVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Category { test, category } => write!(f, "c{test}.{category}"),
            Self::Subject { test, subject } => write!(f, "s{test}.{subject}"),
            Self::State { test, state } => write!(f, "k{test}.{state}"),
            Self::Named(name) => f.write_str(name),
        }
    }
}

/// A graph with walls. `walls[0]` is the left wall and the last entry the
/// right wall; a join records the identified walls in between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    vertices: Vec<TileVertex>,
    edges: Vec<(usize, usize)>,
    walls: Vec<Vec<usize>>,
}

impl Tile {
    /// Edges are stored once, with the smaller endpoint first.
    pub fn new(
        vertices: Vec<TileVertex>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self, TileError> {
        let n = vertices.len();
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| v >= n || u == v) {
            return Err(TileError::BadEdge { edge: (u, v), vertices: n });
        }
        let mut seen = vec![false; n];
        for &w in left.iter().chain(&right) {
            if w >= n {
                return Err(TileError::VertexOutOfRange { vertex: w, vertices: n });
            }
            if seen[w] {
                return Err(TileError::RepeatedWallVertex { vertex: w });
            }
            seen[w] = true;
        }
        Ok(Self { vertices, edges: edges.into_iter().collect(), walls: vec![left, right] })
    }

    pub fn vertices(&self) -> &[TileVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn left_wall(&self) -> &[usize] {
        &self.walls[0]
    }

    pub fn right_wall(&self) -> &[usize] {
        self.walls.last().expect("a tile always has two walls")
    }

    /// All walls from left to right, including those identified by joins.
    pub fn walls(&self) -> &[Vec<usize>] {
        &self.walls
    }

    pub fn intermediate_walls(&self) -> &[Vec<usize>] {
        &self.walls[1..self.walls.len() - 1]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Vertex labels of the edges, for comparing tiles built separately.
    pub fn labelled_edges(&self) -> BTreeSet<(TileVertex, TileVertex)> {
        self.edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.vertices[u].clone(), self.vertices[v].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    pub fn labelled_vertices(&self) -> BTreeSet<TileVertex> {
        self.vertices.iter().cloned().collect()
    }

    /// Crossings of the drawing that puts wall `j` on a vertical line at
    /// `x = j`, in wall order from the bottom, with straight edges.
    ///
    /// Needs every edge to join two consecutive walls.
    pub fn straight_line_crossings(&self) -> Result<Vec<u64>, TileError> {
        let mut place: HashMap<usize, (usize, usize)> = HashMap::new();
        for (j, wall) in self.walls.iter().enumerate() {
            for (p, &v) in wall.iter().enumerate() {
                place.insert(v, (j, p));
            }
        }
        let mut per_gap: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.walls.len() - 1];
        for &(u, v) in &self.edges {
            let (Some(&(ju, pu)), Some(&(jv, pv))) = (place.get(&u), place.get(&v)) else {
                return Err(TileError::NotStraight { edge: (u, v) });
            };
            match (ju + 1 == jv, jv + 1 == ju) {
                (true, _) => per_gap[ju].push((pu, pv)),
                (_, true) => per_gap[jv].push((pv, pu)),
                _ => return Err(TileError::NotStraight { edge: (u, v) }),
            }
        }
        Ok(per_gap
            .iter()
            .map(|gap| {
                let mut count = 0;
                for (i, a) in gap.iter().enumerate() {
                    for b in &gap[i + 1..] {
                        if a.0 != b.0 && a.1 != b.1 && (a.0 < b.0) != (a.1 < b.1) {
                            count += 1;
                        }
                    }
                }
                count
            })
            .collect())
    }
}

/// Joins tiles left to right, identifying each right wall with the next
/// left wall position by position. Labels of identified vertices come from
/// the left tile.
pub fn join_tiles(tiles: &[Tile]) -> Result<Tile, TileError> {
    let (first, rest) = tiles.split_first().ok_or(TileError::EmptyJoin)?;
    let mut out = first.clone();
    for (index, tile) in rest.iter().enumerate() {
        let right = out.right_wall().to_vec();
        if right.len() != tile.left_wall().len() {
            return Err(TileError::IncompatibleWalls {
                index: index + 1,
                right: right.len(),
                left: tile.left_wall().len(),
            });
        }
        let mut map = vec![usize::MAX; tile.num_vertices()];
        for (&src, &dst) in tile.left_wall().iter().zip(&right) {
            map[src] = dst;
        }
        for (v, label) in tile.vertices.iter().enumerate() {
            if map[v] == usize::MAX {
                map[v] = out.vertices.len();
                out.vertices.push(label.clone());
            }
        }
        let mut edges: BTreeSet<(usize, usize)> = out.edges.iter().copied().collect();
        edges.extend(tile.edges.iter().map(|&(u, v)| {
            let (a, b) = (map[u], map[v]);
            (a.min(b), a.max(b))
        }));
        out.edges = edges.into_iter().collect();
        out.walls.extend(tile.walls[1..].iter().map(|w| w.iter().map(|&v| map[v]).collect()));
    }
    Ok(out)
}
