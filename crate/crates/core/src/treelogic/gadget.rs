//! Interning builder for natively constructed recursion graphs.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use num_bigint::BigUint;

use crate::evaluator::{LabelledGraph, MemoEngine};

/// A gadget vertex `(type, x1, x2, x3, x4, k)` of the subtree gadgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GadgetVertex {
    pub tag: usize,
    pub vertices: [usize; 4],
    pub k: usize,
}

impl GadgetVertex {
    pub fn new(tag: usize, vertices: [usize; 4], k: usize) -> Self {
        Self { tag, vertices, k }
    }

    /// The vertex standing for the pair `(v, w)`.
    pub fn pair(v: usize, w: usize) -> Self {
        Self::new(0, [v, w, v, w], 0)
    }
}

pub(crate) struct Builder<K> {
    index: HashMap<K, usize>,
    keys: Vec<K>,
    edges: BTreeSet<(usize, usize)>,
    labels: Vec<BTreeSet<usize>>,
}

impl<K: Clone + Eq + Hash> Builder<K> {
    pub(crate) fn new() -> Self {
        Self {
            index: HashMap::new(),
            keys: Vec::new(),
            edges: BTreeSet::new(),
            labels: Vec::new(),
        }
    }

    pub(crate) fn vertex(&mut self, key: K) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.keys.len();
        self.index.insert(key.clone(), i);
        self.keys.push(key);
        self.labels.push(BTreeSet::new());
        i
    }

    pub(crate) fn label(&mut self, v: usize, label: impl IntoIterator<Item = usize>) {
        self.labels[v] = label.into_iter().collect();
    }

    pub(crate) fn edge(&mut self, a: usize, b: usize) {
        self.edges.insert((a, b));
    }

    pub(crate) fn finish(self) -> Gadget<K> {
        let edges: Vec<(usize, usize)> = self.edges.into_iter().collect();
        Gadget {
            graph: LabelledGraph::new(self.keys.len(), &edges, self.labels),
            index: self.index,
            keys: self.keys,
            edge_count: edges.len(),
        }
    }
}

/// A materialised recursion graph whose vertices carry keys.
#[derive(Debug)]
pub struct Gadget<K> {
    graph: LabelledGraph,
    index: HashMap<K, usize>,
    keys: Vec<K>,
    edge_count: usize,
}

impl<K: Clone + Eq + Hash> Gadget<K> {
    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn id(&self, key: &K) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn key(&self, id: usize) -> &K {
        &self.keys[id]
    }

    pub fn vertex_count(&self) -> usize {
        self.keys.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Membership of `(key, resource)`; keys outside the gadget have no
    /// edges and empty labels.
    pub fn member(&self, memo: &mut MemoEngine<usize>, key: &K, resource: &BigUint) -> bool {
        match self.id(key) {
            Some(id) => memo.member(&self.graph, &id, resource),
            None => false,
        }
    }
}

/// `|N(T)|^5 - 1` for a tree on `n` vertices.
pub(crate) fn full_resource(n: usize) -> BigUint {
    BigUint::from(n + 1).pow(5) - 1u8
}
