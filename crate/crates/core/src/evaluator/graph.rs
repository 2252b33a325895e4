//! Labelled recursion graphs and the relation `X` they define.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A directed graph with a finite label set on every vertex.
///
/// `(a, l)` belongs to `X` iff `l > 0` and the number of successors `b` with
/// `(b, (l-1) / indeg(b))` in `X` lies in the label set of `a`.
pub trait RecursionGraph {
    type Vertex: Clone + Eq + Hash + Ord + Debug;

    /// Out-neighbours of `v` in increasing order.
    fn successors(&self, v: &Self::Vertex) -> Rc<[Self::Vertex]>;

    /// Number of in-neighbours of `v` in the whole graph.
    fn in_degree(&self, v: &Self::Vertex) -> usize;

    /// Whether `count` is in the label set of `v`.
    fn label_contains(&self, v: &Self::Vertex, count: usize) -> bool;
}

/// The resource handed to successor `b` of a vertex queried with `resource`.
///
/// Callers guarantee `resource > 0` and `in_degree >= 1`.
pub fn child_resource(resource: &BigUint, in_degree: usize) -> BigUint {
    debug_assert!(!resource.is_zero() && in_degree > 0);
    (resource - BigUint::one()) / BigUint::from(in_degree)
}

/// A materialised graph on `0..n` with explicit label sets.
#[derive(Clone, Debug, Default)]
pub struct LabelledGraph {
    successors: Vec<Rc<[usize]>>,
    in_degree: Vec<usize>,
    labels: Vec<BTreeSet<usize>>,
}

impl LabelledGraph {
    /// Builds a graph; duplicate edges are ignored.
    pub fn new(n: usize, edges: &[(usize, usize)], labels: Vec<BTreeSet<usize>>) -> Self {
        assert_eq!(labels.len(), n, "one label set per vertex");
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            succ[a].insert(b);
        }
        let mut in_degree = vec![0; n];
        for s in &succ {
            for &b in s {
                in_degree[b] += 1;
            }
        }
        Self {
            successors: succ
                .into_iter()
                .map(|s| s.into_iter().collect::<Vec<_>>().into())
                .collect(),
            in_degree,
            labels,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self, v: usize) -> &BTreeSet<usize> {
        &self.labels[v]
    }
}

impl RecursionGraph for LabelledGraph {
    type Vertex = usize;

    fn successors(&self, v: &usize) -> Rc<[usize]> {
        self.successors[*v].clone()
    }

    fn in_degree(&self, v: &usize) -> usize {
        self.in_degree[*v]
    }

    fn label_contains(&self, v: &usize, count: usize) -> bool {
        self.labels[*v].contains(&count)
    }
}
