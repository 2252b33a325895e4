//! Recognition and canonisation of interval graphs.
//!
//! Max cliques are read off pairs of closed neighbourhoods. The relation
//! `≺_M` recovers the order of the cliques seen from a possible end `M`;
//! collapsing incomparable cliques twice yields the modules `W_G` and the
//! graph `L_G` with exactly two clique orders. The coloured modular
//! decomposition tree combines these per connected component of every
//! decomposition module, and the canon is assembled bottom-up over the tree.

mod canon;
mod cliques;
mod graph;
mod lcanon;
mod model;
mod modules;
mod order;
mod tree;

use thiserror::Error;

pub(crate) use graph::number_classes;

pub use canon::{canon_from_tree, interval_canon, Canon};
pub use cliques::{max_cliques, span, spans, MaxClique};
pub use graph::Graph;
pub use lcanon::{canon_l, edges_of, LCanon};
pub use model::{is_interval, recognise, IntervalModel};
pub use modules::{
    decomposition_components, decomposition_sets, l_graph, modular_partition, v_set,
    vertex_partition, ModularPartition, PEntry, VertexPartition,
};
pub use order::{clique_preorder, collapse_incomparables, possible_ends, CliquePreorder, Collapse};
pub use tree::{build_modular_tree, coloured_tree_preorder, Colour, ColouredTree, NodeKind, Side};

/// Errors raised by the interval graph pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("invalid graph: {0}")]
    Input(String),
    #[error("not an interval graph: {0}")]
    NotInterval(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Whether two interval graphs are isomorphic, by comparing canons.
pub fn interval_isomorphic(g: &Graph, h: &Graph) -> Result<bool, IntervalError> {
    Ok(g.len() == h.len() && interval_canon(g)? == interval_canon(h)?)
}
