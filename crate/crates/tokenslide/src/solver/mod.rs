//! Decision procedures: an exact breadth-first oracle and polynomial-time
//! solvers for oriented cycles, path forests and cographs, plus a
//! class-dispatching front door.

use std::fmt;

use thiserror::Error;

use crate::graph::Vertex;
use crate::instance::ReconfSequence;

pub mod auto;
pub mod cograph;
pub mod cycle;
pub mod exact;
pub mod path_forest;

pub use auto::solve_auto;
pub use cograph::solve_cograph;
pub use cycle::{analyze_cycle, is_locked, solve_cycle, CycleAnalysis};
pub use exact::{
    apply_and_validate, apply_and_validate_undirected, solve_exact, solve_exact_undirected,
};
pub use path_forest::{is_path_forest, solve_path_forest};

/// Route taken by a solve call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AlgorithmTag {
    #[default]
    Exact,
    Cycle,
    PathForest,
    Cograph,
}

impl fmt::Display for AlgorithmTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgorithmTag::Exact => "exact",
            AlgorithmTag::Cycle => "cycle",
            AlgorithmTag::PathForest => "path_forest",
            AlgorithmTag::Cograph => "cograph",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states_expanded: u64,
    pub frontier_peak: u64,
    pub algorithm_tag: AlgorithmTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub answer: bool,
    /// Present only on yes, and only when requested.
    pub witness: Option<ReconfSequence>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_states: u64,
    pub max_moves: Option<u32>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_states: 10_000_000, max_moves: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// A truncated search: never a substitute for a no answer.
    #[error("state limit hit after expanding {states_expanded} configurations")]
    StateLimitExceeded { states_expanded: u64 },
    #[error("graph is not an oriented cycle")]
    NotACycle,
    #[error("underlying graph is not a disjoint union of paths")]
    NotAPathForest,
    #[error("underlying graph is not a cograph")]
    NotACograph,
    #[error("internal solver failure: {0}")]
    Internal(String),
}

/// Step numbers are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("step {step}: no token on vertex {vertex}")]
    NoTokenAtSource { step: usize, vertex: Vertex },
    #[error("step {step}: no arc {from} -> {to}")]
    NotAnArc { step: usize, from: Vertex, to: Vertex },
    #[error("step {step}: no edge between {from} and {to}")]
    NotAnEdge { step: usize, from: Vertex, to: Vertex },
    #[error("step {step}: destination vertex {vertex} is occupied")]
    DestinationOccupied { step: usize, vertex: Vertex },
    #[error("step {step}: resulting token set is not independent")]
    ResultNotIndependent { step: usize },
}
