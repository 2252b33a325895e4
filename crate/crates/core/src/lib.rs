//! Limited-recursion logics over finite relational structures.
//!
//! The crate evaluates first-order logic with counting extended by the
//! limited recursion operators `lrec` and `lrec=` over finite structures,
//! and builds two applications on top of that machinery: canonisation of
//! directed trees and canonisation of interval graphs.
//!
//! * [`structures`] holds structures, the number sort and its tuple encoding.
//! * [`syntax`] parses and prints formulae and expands the `dtc` abbreviation.
//! * [`evaluator`] decides formulae with a memoised engine and a streaming
//!   engine that walks the unravelling of the recursion graph.
//! * [`treelogic`] decides subtree isomorphism and order through recursion
//!   gadgets and computes canonical copies of directed trees.
//! * [`intervalcanon`] recognises and canonises interval graphs via the
//!   coloured modular decomposition tree.

pub mod evaluator;
pub mod intervalcanon;
pub mod structures;
pub mod syntax;
pub mod treelogic;
