//! Crossing-minimal drawings of ordinal panel data.
//!
//! An instance follows `n` subjects through `m + 1` tests, each of which
//! puts every subject into one of `k` ordered categories. A drawing stacks
//! the categories vertically and runs one curve per subject from test to
//! test; this crate finds drawings with the fewest curve crossings and
//! studies how many crossings instances can force.
//!
//! - [`model`]: instances, category orders, layouts.
//! - [`layout`]: crossing counts, the optimal two-pass layout, an exhaustive oracle.
//! - [`analysis`]: extremal and expected crossing numbers and matching generators.
//! - [`sigma`]: choosing the category order that minimizes crossings.
//! - [`tiles`]: learning spaces and the tile graphs built on them.
//! - [`io`]: CSV/JSON instances, layout files, SVG, tile export.
//!
//! ```
//! use panelcross::layout::{optimal_layout, pcr};
//! use panelcross::model::OpdInstance;
//!
//! let inst = OpdInstance::from_trajectories(
//!     &["low", "high"],
//!     &[("ann", &["low", "high"]), ("bob", &["high", "low"])],
//! )?;
//! assert_eq!(pcr(&inst)?, 1);
//! assert_eq!(optimal_layout(&inst)?.pis(), &[vec![0, 1], vec![1, 0]]);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod analysis;
pub mod io;
pub mod layout;
pub mod model;
pub mod sigma;
pub mod tiles;

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/layouts.md")]
    mod layouts {}
    #[doc = include_str!("../../../book/src/extremal.md")]
    mod extremal {}
    #[doc = include_str!("../../../book/src/random.md")]
    mod random {}
    #[doc = include_str!("../../../book/src/category-order.md")]
    mod category_order {}
    #[doc = include_str!("../../../book/src/tiles.md")]
    mod tiles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
