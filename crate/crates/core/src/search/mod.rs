//! Exhaustive searches over bounded colorings: witnesses, avoiders, finite
//! Ramsey sets and invariant separators.

mod avoid;
mod clique;
mod compiled;
mod graph;
mod ramsey;
mod separator;
mod solver;
mod witness;

use thiserror::Error;

use crate::coloring::ColoringError;
use crate::config::EvalError;

pub use avoid::{avoiding_coloring, forcing_number};
pub use clique::max_clique;
pub use graph::{good_pair_graph, h_cap, GoodPairGraph, Mode};
pub use ramsey::{max_ramsey_set, ramsey_threshold, RamseyOptions, RamseySetReport};
pub use separator::{
    default_family, separator_search, DescriptorTally, Regime, SampleSpec, SeparatorReport,
};
pub use solver::Budget;
pub use witness::{asymmetric_witness, find_witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("node budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Maps `f` over `items` on `workers` threads, returning results in input
/// order. One worker runs inline on the calling thread.
pub fn par_map<T, R, F>(workers: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    use rayon::prelude::*;
    if workers <= 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
        Err(_) => items.into_iter().map(f).collect(),
    }
}
