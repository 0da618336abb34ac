//! Generalized wheels, necklaces and the constructions that relate them.
//!
//! Bead and matching indices in the public API are 1-based, matching the
//! usual `B_1, …, B_n` and `M_1, …, M_n` with `M_n` closing the cycle; the
//! vectors that store them are 0-based.

mod grid;
mod necklace;
mod refine;
mod tight;
mod wheel;

use thiserror::Error;

use crate::connectivity::ConnectivityError;
use crate::graph::GraphError;

pub use grid::{
    biclique_minor, find_tree_path, grid_in_biclique, validate_grid_embedding, wheel_to_grid_or_biclique,
    GridOrBiclique,
};
pub use necklace::{
    attachment_sequences, contract, find_jumps, is_long_jump, is_long_jump_free, is_supported_by, necklace_graph,
    reverse, supports, validate_necklace, zigzag_necklace, Condition, ConditionResult, Jump, Necklace, NecklaceParams,
    NecklaceReport,
};
pub use refine::{canonical_names, is_refined, necklace_to_wheel, wheel_necklace};
pub use tight::{tight_example, TightExample};
pub use wheel::{build_wheel, verify_rim_transversal, BuiltWheel, WheelSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("invalid wheel: {0}")]
    InvalidWheel(String),
    #[error("invalid necklace: {0}")]
    InvalidNecklace(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}
