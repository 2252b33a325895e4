//! Directed trees: subtree isomorphism, the subtree order and canonisation,
//! each decided through a recursion gadget, plus direct oracles.
//!
//! The gadgets are built natively as labelled graphs and queried with the
//! memoised engine at resource `|N(T)|^5 - 1`. Trees with fewer than four
//! vertices are decided by the oracles.

mod canon;
mod circuit;
mod gadget;
mod iso;
mod oracle;
mod order;
mod tree;

use thiserror::Error;

pub use canon::{build_canon_gadget, canon_from_gadget, tree_canon, CanonEdges};
pub use circuit::{circuit_value, output_gate, path_property, CircuitError, CIRCUIT_FORMULA};
pub use gadget::{Gadget, GadgetVertex};
pub use iso::{build_iso_gadget, tree_isomorphic, IsoDecider};
pub use oracle::{
    canon_string, coloured_canon, oracle_isomorphic, preorder_canon, tree_canon_oracle,
    ColouredOrder,
};
pub use order::{build_order_gadget, tree_order_less, OrderDecider, OrderRule};
pub use tree::{all_trees, DirectedTree};

/// Smallest tree size for which the gadgets are built.
pub const MIN_GADGET_SIZE: usize = 4;

/// Errors about trees and their input formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("not a directed tree: {0}")]
    NotATree(String),
    #[error("bad tree format: {0}")]
    Format(String),
    #[error("gadgets need at least {MIN_GADGET_SIZE} vertices, the tree has {0}")]
    TooSmall(usize),
}
