//! Plain-text edge lists for tiles.
//!
//! ```text
//! # tile: 4 vertices, 2 edges, 2 walls
//! vertex 0 s0.1
//! edge 0 3
//! wall 0 0 1
//! ```
//!
//! Vertex labels are `s<test>.<subject>`, `c<test>.<category>` or
//! `k<test>.<state>`; wall lines list vertex ids from the bottom up, left
//! wall first.

use std::fmt::Write;

use crate::tiles::Tile;

pub fn tile_to_text(tile: &Tile) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# tile: {} vertices, {} edges, {} walls",
        tile.num_vertices(),
        tile.num_edges(),
        tile.walls().len()
    );
    for (i, v) in tile.vertices().iter().enumerate() {
        let _ = writeln!(out, "vertex {i} {v}");
    }
    for (u, v) in tile.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    for (j, wall) in tile.walls().iter().enumerate() {
        let _ = write!(out, "wall {j}");
        for v in wall {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}
