//! Simple undirected graphs on `0..n`.

use std::collections::BTreeSet;

use super::IntervalError;
use crate::structures::{Structure, UnionFind};

/// An undirected loop-free graph stored as an adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
}

impl Graph {
    /// The graph on `0..n` without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![vec![false; n]; n],
        }
    }

    /// Builds a graph from an edge list; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, IntervalError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(IntervalError::Input(format!(
                    "edge ({u}, {v}) is out of range"
                )));
            }
            if u == v {
                return Err(IntervalError::Input(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Reads the relation `E` of a structure, which must be symmetric and
    /// loop-free.
    pub fn from_structure(s: &Structure) -> Result<Self, IntervalError> {
        let tuples = s
            .tuples("E")
            .map_err(|e| IntervalError::Input(e.to_string()))?;
        let edges: Vec<(usize, usize)> = tuples.iter().map(|t| (t[0], t[1])).collect();
        for &(u, v) in &edges {
            if !s.holds("E", &[v, u]) {
                return Err(IntervalError::Input(format!(
                    "E is not symmetric: ({u}, {v}) has no reverse"
                )));
            }
        }
        Self::from_edges(s.universe_size(), &edges)
    }

    /// The graph as a structure with a symmetric `E`.
    pub fn to_structure(&self) -> Structure {
        Structure::undirected(self.len(), &self.edges()).expect("edges are in range")
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u][v] = true;
            self.adj[v][u] = true;
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.adj[v][u]).collect()
    }

    /// `N^c(v)`, the closed neighbourhood, as a sorted list.
    pub fn closed_neighbourhood(&self, v: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| u == v || self.adj[v][u])
            .collect()
    }

    /// Edges `(u, v)` with `u < v` in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adj[u][v])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.adj[u][v]))
    }

    /// The subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut g = Graph::empty(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.adj[vertices[i]][vertices[j]] {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Connected components of the subgraph induced by `within`, each
    /// sorted, ordered by least member.
    pub fn components_within(&self, within: &[usize]) -> Vec<Vec<usize>> {
        let inside: BTreeSet<usize> = within.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &inside {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for &u in &inside {
                    if self.adj[v][u] && seen.insert(u) {
                        comp.push(u);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components, each sorted, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.components_within(&all)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices adjacent to every other vertex.
    pub fn apices(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&v| (0..n).all(|u| u == v || self.adj[v][u]))
            .collect()
    }

    /// Whether every vertex outside `set` sees all of `set` or none of it.
    pub fn is_module(&self, set: &[usize]) -> bool {
        let inside: BTreeSet<usize> = set.iter().copied().collect();
        (0..self.len()).filter(|v| !inside.contains(v)).all(|v| {
            let seen = set.iter().filter(|&&w| self.adj[v][w]).count();
            seen == 0 || seen == set.len()
        })
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.len());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// The quotient by the partition given by `class_of`, classes numbered
    /// `0..count`; two classes are adjacent when some members are.
    pub fn quotient(&self, class_of: &[usize], count: usize) -> Graph {
        let mut g = Graph::empty(count);
        for (u, v) in self.edges() {
            g.add_edge(class_of[u], class_of[v]);
        }
        g
    }
}

/// Numbers the classes of a union-find by least member and returns the
/// class of every element, the members of every class, in that numbering.
pub(crate) fn number_classes(uf: &mut UnionFind, n: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut number = vec![usize::MAX; n];
    let mut class_of = vec![0; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if number[r] == usize::MAX {
            number[r] = members.len();
            members.push(Vec::new());
        }
        class_of[v] = number[r];
        members[number[r]].push(v);
    }
    (class_of, members)
}
