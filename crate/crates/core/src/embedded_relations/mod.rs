//! Embedded minor and immersion deciders with replayable witnesses, the
//! tangent/transverse classifier for path families and path-swaps.

mod abstract_minor;
mod ordered;
mod paths;
mod script;
mod search;

pub use abstract_minor::{abstract_minor, abstract_minor_with};
pub use ordered::{compile_witness, ordered_immersion, ordered_immersion_with, OrderedWitness};
pub use paths::{
    classify_family, format_word, make_tangent, parse_word, reduce_word, transverse_vertices, Letter, PathFamily,
    Tangency,
};
pub use script::{replay, OpScript};
pub use search::{embedded_immersion, embedded_immersion_with, embedded_minor, embedded_minor_with, Engine};

use crate::decomposition::LeavingGraph;
use crate::{Error, Result};

/// Size limits for the exhaustive deciders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest accepted dart count. Immersion deciders count both graphs,
    /// minor deciders count the host.
    pub max_darts: usize,
    /// Largest number of distinct states a breadth-first search may visit.
    pub max_states: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_darts: 14, max_states: 2_000_000 }
    }
}

/// Whether `l1` is an embedded immersion of `l2` with the hub of `l1`
/// mapped to the hub of `l2`, so that the stubs correspond in circular
/// order.
pub fn leq_leaving(l1: &LeavingGraph, l2: &LeavingGraph, directed: bool) -> Result<bool> {
    leq_leaving_with(l1, l2, directed, Engine::Ordered, &SearchOptions::default())
}

pub fn leq_leaving_with(
    l1: &LeavingGraph,
    l2: &LeavingGraph,
    directed: bool,
    engine: Engine,
    opts: &SearchOptions,
) -> Result<bool> {
    if l1.stubs().len() != l2.stubs().len() {
        return Ok(false);
    }
    let darts = l1.graph.num_darts() + l2.graph.num_darts();
    if darts > opts.max_darts {
        return Err(Error::TooLarge(format!("{darts} darts (cap {})", opts.max_darts)));
    }
    Ok(search::pinned_immersion(&l1.graph, &l2.graph, directed, (l1.hub, l2.hub), engine, opts)?.is_some())
}

/// [`leq_leaving`] with a prescribed stub correspondence: stub `i` of `l1`
/// (in hub rotation order) must be carried by stub `(i + offset) % k` of
/// `l2`. Uses the ordered engine.
pub fn leq_leaving_aligned(
    l1: &LeavingGraph,
    l2: &LeavingGraph,
    directed: bool,
    offset: usize,
    opts: &SearchOptions,
) -> Result<bool> {
    if l1.stubs().len() != l2.stubs().len() {
        return Ok(false);
    }
    let darts = l1.graph.num_darts() + l2.graph.num_darts();
    if darts > opts.max_darts {
        return Err(Error::TooLarge(format!("{darts} darts (cap {})", opts.max_darts)));
    }
    Ok(search::aligned_immersion(&l1.graph, &l2.graph, directed, (l1.hub, l2.hub), offset, opts)?.is_some())
}
