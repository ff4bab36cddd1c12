//! Choosing the category order.
//!
//! [`compute_tables`] reduces an instance to weighted events between
//! category pairs, [`objective_for_sigma`] scores an order against them, and
//! [`optimal_sigma_exact`] finds the best order by branch-and-bound. Larger
//! problems can be handed to a MILP solver through [`export_ilp`].

mod lp;
mod reduction;
mod search;
mod tables;

use thiserror::Error;

use crate::layout::LayoutError;
use crate::model::ModelError;

pub use lp::{export_ilp, parse_lp, LpConstraint, LpParseError, LpProblem, Sense};
pub use reduction::{bipartite_reduction, BipartiteGraph};
pub use search::{
    all_objectives, brute_force_optimal_sigma, optimal_sigma_exact, optimal_sigma_for_tables, SigmaSolution,
    BRUTE_FORCE_MAX_CATEGORIES, SEARCH_BUDGET,
};
pub use tables::{compute_tables, objective_for_sigma, Counts, PairKey, ResponsibilityTables};

#[derive(Debug, Error)]
pub enum SigmaError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("search gave up after {budget} nodes; export the integer program and use a MILP solver instead")]
    BudgetExceeded { budget: u64 },
    #[error("{k} categories is too many for exhaustive enumeration (at most {max})")]
    TooManyCategories { k: usize, max: usize },
    #[error("edge {edge:?} joins two vertices of the same part")]
    NotBipartite { edge: (usize, usize) },
    #[error("edge {edge:?} refers to a vertex outside 0..{vertices}")]
    VertexOutOfRange { edge: (usize, usize), vertices: usize },
}
