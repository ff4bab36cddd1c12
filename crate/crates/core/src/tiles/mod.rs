//! Learning spaces, tiles and the tile constructions of an instance.

mod constructions;
mod itemset;
mod space;
mod tile;

use thiserror::Error;

use crate::layout::LayoutError;
use crate::model::ModelError;

pub use constructions::{
    exact_learning_tile, ordinal_panel_tile, possibilistic_learning_tile, total_learning_tile, StatePanel,
};
pub use itemset::ItemSet;
pub use space::{
    learning_space_graph, validate_learning_space, LearningSpace, RankingFunction, SpaceReport, SpaceViolation,
    StateGraph, STATE_BUDGET,
};
pub use tile::{join_tiles, Tile, TileVertex};

#[derive(Debug, Error)]
pub enum TileError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("not a learning space:\n{0}")]
    InvalidSpace(SpaceReport),
    #[error("{states} states exceeds the budget of {budget}")]
    TooManyStates { states: usize, budget: usize },
    #[error("ranking covers {given} states, the space has {states}")]
    RankingNotTotal { states: usize, given: usize },
    #[error("state {state} is ranked into unknown category {category}")]
    UnknownCategory { state: usize, category: usize },
    #[error("ranking has {ranking} categories, the instance {instance}")]
    CategoryMismatch { ranking: usize, instance: usize },
    #[error("subject {subject} at test {timestamp} has unknown state {state}")]
    UnknownState { timestamp: usize, subject: usize, state: usize },
    #[error("edge {edge:?} is a loop or leaves the {vertices} vertices")]
    BadEdge { edge: (usize, usize), vertices: usize },
    #[error("wall vertex {vertex} is not among the {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("vertex {vertex} appears twice on the walls")]
    RepeatedWallVertex { vertex: usize },
    #[error("cannot join an empty sequence of tiles")]
    EmptyJoin,
    #[error("tile {index}: left wall has {left} vertices, previous right wall {right}")]
    IncompatibleWalls { index: usize, right: usize, left: usize },
    #[error("edge {edge:?} does not join consecutive walls")]
    NotStraight { edge: (usize, usize) },
    #[error("state {to} is unreachable from state {from}")]
    Unreachable { from: usize, to: usize },
    #[error("no walk for subject {subject} in interval {interval}")]
    MissingWalk { interval: usize, subject: usize },
    #[error("walk of subject {subject} in interval {interval} does not join its observed states")]
    WrongEndpoints { interval: usize, subject: usize },
    #[error("walk of subject {subject} in interval {interval} leaves the graph at step {step}")]
    NotAWalk { interval: usize, subject: usize, step: usize },
}
