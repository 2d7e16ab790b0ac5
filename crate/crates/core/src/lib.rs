//! Aggregation of noisy local ordinal constraints into global structures.
//!
//! Constraints (comparisons, betweenness triples, must/cannot-link pairs,
//! rooted triplets, unrooted quartets) are turned into a signed, possibly
//! directed graph. An approximate maximum cut of that graph is found with a
//! low-rank relaxation and hyperplane rounding, and the cut is decoded into a
//! ranking, partition or tree.

pub mod analysis;
mod arena;
pub mod decoder;
pub mod error;
pub mod evaluator;
pub mod generator;
pub mod graph;
pub mod maxcut;
pub mod model;
pub mod pipeline;
pub mod reductions;

pub use error::{Error, Result};
