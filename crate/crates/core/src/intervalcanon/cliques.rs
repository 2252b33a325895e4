//! Max cliques read off pairs of closed neighbourhoods.

use std::collections::BTreeMap;

use super::Graph;

/// A max clique with the least pair `(u, v)`, `u <= v`, such that the
/// clique is `N^c(u) ∩ N^c(v)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MaxClique {
    pub vertices: Vec<usize>,
    pub witness: (usize, usize),
}

impl MaxClique {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// The sets `N^c(u) ∩ N^c(v)` that are cliques and inclusion-maximal among
/// such sets, sorted by vertex list.
///
/// On interval graphs these are exactly the max cliques; on other graphs
/// some max cliques may be missing, which the recognition step detects.
pub fn max_cliques(g: &Graph) -> Vec<MaxClique> {
    let n = g.len();
    let closed: Vec<Vec<usize>> = (0..n).map(|v| g.closed_neighbourhood(v)).collect();
    let mut found: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for u in 0..n {
        for v in u..n {
            let set = intersect(&closed[u], &closed[v]);
            if !set.is_empty() && g.is_clique(&set) {
                found.entry(set).or_insert((u, v));
            }
        }
    }
    let sets: Vec<&Vec<usize>> = found.keys().collect();
    found
        .iter()
        .filter(|(s, _)| !sets.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
        .map(|(s, &w)| MaxClique {
            vertices: s.clone(),
            witness: w,
        })
        .collect()
}

/// Number of the given cliques containing `v`.
pub fn span(cliques: &[MaxClique], v: usize) -> usize {
    cliques.iter().filter(|c| c.contains(v)).count()
}

/// Spans of all vertices of a graph on `n` vertices.
pub fn spans(cliques: &[MaxClique], n: usize) -> Vec<usize> {
    (0..n).map(|v| span(cliques, v)).collect()
}
