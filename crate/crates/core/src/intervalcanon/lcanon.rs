//! Canonical copies of graphs whose max cliques are linearly ordered.

use super::{clique_preorder, max_cliques, Graph, IntervalError};

/// The canonical copy `K(L)` of a graph `L` with linearly ordered max
/// cliques, read off the one of its two clique orders whose sorted interval
/// list is smaller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LCanon {
    /// Number of max cliques.
    pub cliques: usize,
    /// Intervals of the canonical vertices `0..|L|` under the chosen order,
    /// positions counted from 1, in increasing order.
    pub intervals: Vec<(usize, usize)>,
    /// Canonical number of every vertex of `L`.
    pub number: Vec<usize>,
    /// Max cliques of `L` in the chosen order, as vertex lists of `L`.
    pub order: Vec<Vec<usize>>,
    /// Whether both orders give the same interval list.
    pub symmetric: bool,
}

impl LCanon {
    pub fn size(&self) -> usize {
        self.intervals.len()
    }

    /// Interval of a vertex of `L` under the chosen order.
    pub fn interval_of(&self, v: usize) -> (usize, usize) {
        self.intervals[self.number[v]]
    }

    /// Edges `(p, q)`, `p < q`, of `K(L)` on the vertices `1..=|L|`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        edges_of(&self.intervals)
    }

    /// Positions the clique at position `k` of the chosen order takes in the
    /// orders that the canon does not tell apart: both when the two orders
    /// give the same canon, only `k` otherwise.
    pub fn positions(&self, k: usize) -> Vec<usize> {
        if self.symmetric && self.cliques > 1 {
            let mirror = self.cliques + 1 - k;
            vec![k.min(mirror), k.max(mirror)]
        } else {
            vec![k]
        }
    }

    /// The colour of a component vertex: the pair `(0, |L|)` followed by the
    /// edges of `K(L)`.
    pub fn colour(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, self.size())];
        out.extend(self.edges());
        out
    }
}

/// Edges `(p, q)`, `p < q`, between intersecting intervals, numbered from 1.
pub fn edges_of(intervals: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let n = intervals.len();
    let mut out = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let (a, b) = (intervals[p], intervals[q]);
            if a.0 <= b.1 && b.0 <= a.1 {
                out.push((p + 1, q + 1));
            }
        }
    }
    out
}

/// Computes `K(L)` for a graph whose max cliques are linearly ordered by
/// `≺_N` for some clique `N`.
pub fn canon_l(l: &Graph) -> Result<LCanon, IntervalError> {
    let n = l.len();
    let cliques = max_cliques(l);
    let m = cliques.len();
    let order: Vec<usize> = if m <= 1 {
        (0..m).collect()
    } else {
        let linear = (0..m)
            .map(|e| clique_preorder(&cliques, e))
            .find(|o| o.is_linear())
            .ok_or_else(|| {
                IntervalError::NotInterval("the max cliques admit no linear order".into())
            })?;
        linear.classes.iter().map(|c| c[0]).collect()
    };
    let mut forward = vec![(usize::MAX, 0); n];
    for (i, &c) in order.iter().enumerate() {
        for &v in &cliques[c].vertices {
            let (l, r) = &mut forward[v];
            *l = (*l).min(i + 1);
            *r = (*r).max(i + 1);
        }
    }
    for v in 0..n {
        let (l, r) = forward[v];
        let count = cliques.iter().filter(|c| c.contains(v)).count();
        if l == usize::MAX || count != r + 1 - l {
            return Err(IntervalError::NotInterval(format!(
                "vertex {v} does not lie in consecutive max cliques"
            )));
        }
    }
    let backward: Vec<(usize, usize)> = forward
        .iter()
        .map(|&(l, r)| (m + 1 - r, m + 1 - l))
        .collect();
    let sorted = |iv: &[(usize, usize)]| {
        let mut s = iv.to_vec();
        s.sort_unstable();
        s
    };
    let (key_f, key_b) = (sorted(&forward), sorted(&backward));
    let symmetric = key_f == key_b;
    let (chosen, intervals, clique_order) = if key_b < key_f {
        (
            backward,
            key_b,
            order.iter().rev().copied().collect::<Vec<_>>(),
        )
    } else {
        (forward, key_f, order)
    };
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.sort_by_key(|&v| (chosen[v], v));
    let mut number = vec![0; n];
    for (i, &v) in vertices.iter().enumerate() {
        number[v] = i;
    }
    Ok(LCanon {
        cliques: m,
        intervals,
        number,
        order: clique_order
            .iter()
            .map(|&c| cliques[c].vertices.clone())
            .collect(),
        symmetric,
    })
}
