//! Two-layer crossing minimization as a category-order problem.
//!
//! Each edge becomes a subject that sits at its left endpoint in the first
//! test and at its right endpoint in the second. A sigma over all vertices
//! orders both layers at once, and two edges cross in the layout exactly
//! when they cross in the two-layer drawing with those vertex orders.

use super::SigmaError;
use crate::model::{CategorySet, OpdInstance};

/// A bipartite graph with left vertices `0..left` and right vertices
/// `left..left + right`. Edges use these global ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Self {
        Self { left, right, edges }
    }

    /// Each edge as `(left endpoint, right endpoint)`, in global ids.
    pub fn oriented_edges(&self) -> Result<Vec<(usize, usize)>, SigmaError> {
        let total = self.left + self.right;
        self.edges
            .iter()
            .map(|&(u, v)| {
                if u >= total || v >= total {
                    return Err(SigmaError::VertexOutOfRange { edge: (u, v), vertices: total });
                }
                match (u < self.left, v < self.left) {
                    (true, false) => Ok((u, v)),
                    (false, true) => Ok((v, u)),
                    _ => Err(SigmaError::NotBipartite { edge: (u, v) }),
                }
            })
            .collect()
    }
}

/// Subjects `e1..` are the edges, categories `L1.. R1..` the vertices,
/// and the instance has no sigma.
pub fn bipartite_reduction(graph: &BipartiteGraph) -> Result<OpdInstance, SigmaError> {
    let edges = graph.oriented_edges()?;
    let labels = (1..=graph.left).map(|i| format!("L{i}")).chain((1..=graph.right).map(|j| format!("R{j}")));
    let categories = CategorySet::new(labels)?;
    let tests = vec![edges.iter().map(|e| e.0).collect(), edges.iter().map(|e| e.1).collect()];
    let subjects = (1..=edges.len()).map(|e| format!("e{e}")).collect();
    Ok(OpdInstance::new(subjects, categories, tests, None)?)
}
