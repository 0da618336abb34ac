//! Building necklaces in a graph from a large θ-connected set.
//!
//! The existence bounds are far beyond anything a computer can reach, so the
//! constructions here run on the instance they are given: they look for the
//! structure the argument promises and report a hypothesis failure when it
//! is not there. The bound formulas are exposed for hypothesis checks only.

mod bounds;
mod initial;
mod search;
mod surgery;

use thiserror::Error;

use crate::connectivity::ConnectivityError;
use crate::graph::{Graph, GraphError};
use crate::structures::{validate_necklace, Necklace, StructureError};

pub use bounds::{extract_path_bound, init_bound, path_or_hub_bound};
pub use initial::{bead_spanning_tree, init_necklace, long_path_or_high_degree};
pub use search::search_necklace;
pub use surgery::{extract_path, jump_increase_s, remove_hub, reroute_disjoint_paths};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractionError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("construction produced an invalid necklace: {0}")]
    Invalid(String),
    #[error("search budget of {0} states exhausted")]
    BudgetExhausted(usize),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}

/// Final check shared by every construction.
fn checked(g: &Graph, nk: Necklace) -> Result<Necklace, ExtractionError> {
    let report = validate_necklace(g, &nk);
    if report.is_valid() {
        Ok(nk)
    } else {
        Err(ExtractionError::Invalid(format!("{} fails {:?}", nk.params, report.failed())))
    }
}
