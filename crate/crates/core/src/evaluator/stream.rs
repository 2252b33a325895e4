//! Decision of `X` by walking the unravelling of the recursion graph.
//!
//! The unravelling `T` has one node per path `(a0,l0) ... (am,lm)` from the
//! query, where `l(i+1) = (l(i) - 1) / indeg(a(i+1))`; nodes with resource 0
//! are failing leaves. A node is in `Y` iff it does not fail and the number
//! of its children in `Y` is in its label set; the root is in `Y` iff the
//! query is in `X`.
//!
//! `Y` is decided depth-first, children visited in decreasing subtree size
//! (ties by vertex). Every node on the current path keeps two counters, the
//! processed children `t` and those in `Y` among them `c`. Ancestors reserve
//! `ceil(log2 j)` bits per counter, `j` being the rank of the child on the
//! path; the current node reserves `ceil(log2 |T|)`. The total
//! `2 * sum` is checked against `6 * log2 |T|` at every step.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use super::graph::{child_resource, RecursionGraph};

/// Failures of the streaming engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StreamError {
    #[error("unravelling exceeds {limit} nodes")]
    TooLarge { limit: usize },
    #[error("counter budget exceeded: {bits} bits per counter set on a path, unravelling of {size} nodes")]
    BudgetExceeded { bits: u64, size: usize },
}

/// Outcome of a streaming decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamReport {
    pub verdict: bool,
    /// Number of nodes of the unravelling.
    pub unravelling_size: usize,
    /// Largest `sum_i l_v(i)` seen on any path.
    pub max_counter_bits: u64,
}

/// Default cap on the size of the unravelling.
pub const DEFAULT_NODE_LIMIT: usize = 5_000_000;

struct Node<V> {
    vertex: V,
    resource: BigUint,
    children: Vec<usize>,
    size: usize,
}

fn ceil_log2(x: usize) -> u64 {
    if x <= 1 {
        0
    } else {
        u64::from(usize::BITS - (x - 1).leading_zeros())
    }
}

/// Whether `2 * bits <= 6 * log2(size)`, i.e. `2^bits <= size^3`.
fn within_budget(bits: u64, size: usize) -> bool {
    let cube = BigUint::from(size).pow(3);
    BigUint::from(1u8) << bits <= cube
}

/// Decides `(vertex, resource) in X` via the unravelling.
pub fn stream_membership<G: RecursionGraph>(
    g: &G,
    vertex: &G::Vertex,
    resource: &BigUint,
    node_limit: usize,
) -> Result<StreamReport, StreamError> {
    let mut nodes = vec![Node {
        vertex: vertex.clone(),
        resource: resource.clone(),
        children: Vec::new(),
        size: 1,
    }];
    let mut pending = vec![0usize];
    while let Some(idx) = pending.pop() {
        if nodes[idx].resource.is_zero() {
            continue;
        }
        let successors = g.successors(&nodes[idx].vertex);
        let mut kids = Vec::with_capacity(successors.len());
        for b in successors.iter() {
            if nodes.len() >= node_limit {
                return Err(StreamError::TooLarge { limit: node_limit });
            }
            let res = child_resource(&nodes[idx].resource, g.in_degree(b));
            kids.push(nodes.len());
            pending.push(nodes.len());
            nodes.push(Node {
                vertex: b.clone(),
                resource: res,
                children: Vec::new(),
                size: 1,
            });
        }
        nodes[idx].children = kids;
    }
    // Children always have larger indices than their parent.
    for idx in (0..nodes.len()).rev() {
        let total: usize = nodes[idx].children.iter().map(|&c| nodes[c].size).sum();
        nodes[idx].size += total;
    }
    for idx in 0..nodes.len() {
        let mut kids = std::mem::take(&mut nodes[idx].children);
        kids.sort_by(|&a, &b| {
            nodes[b]
                .size
                .cmp(&nodes[a].size)
                .then_with(|| nodes[a].vertex.cmp(&nodes[b].vertex))
                .then_with(|| nodes[a].resource.cmp(&nodes[b].resource))
        });
        nodes[idx].children = kids;
    }

    let size = nodes.len();
    let own_bits = ceil_log2(size);
    // Path entries: (node, t, c); ancestor_bits[i] belongs to path[i].
    let mut path: Vec<(usize, usize, usize)> = vec![(0, 0, 0)];
    let mut ancestor_bits: Vec<u64> = Vec::new();
    let mut ancestor_sum = 0u64;
    let mut max_bits = own_bits;
    if !within_budget(own_bits, size) {
        return Err(StreamError::BudgetExceeded {
            bits: own_bits,
            size,
        });
    }
    loop {
        let &(v, t, c) = path.last().expect("path is non-empty");
        if t < nodes[v].children.len() {
            let child = nodes[v].children[t];
            let bits = ceil_log2(t + 1);
            ancestor_bits.push(bits);
            ancestor_sum += bits;
            path.push((child, 0, 0));
            let total = ancestor_sum + own_bits;
            max_bits = max_bits.max(total);
            if !within_budget(total, size) {
                return Err(StreamError::BudgetExceeded { bits: total, size });
            }
            continue;
        }
        let node = &nodes[v];
        let succeeds = !node.resource.is_zero() && g.label_contains(&node.vertex, c);
        path.pop();
        let Some(parent) = path.last_mut() else {
            return Ok(StreamReport {
                verdict: succeeds,
                unravelling_size: size,
                max_counter_bits: max_bits,
            });
        };
        ancestor_sum -= ancestor_bits.pop().expect("one entry per ancestor");
        parent.1 += 1;
        parent.2 += usize::from(succeeds);
        debug_assert!(parent.1 < (1usize << own_bits.min(63)) || size <= 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        let got: Vec<u64> = [1, 2, 3, 4, 5, 8, 9]
            .iter()
            .map(|&x| ceil_log2(x))
            .collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn budget_is_exact() {
        assert!(within_budget(0, 1));
        assert!(!within_budget(1, 1));
        assert!(within_budget(3, 2));
        assert!(!within_budget(4, 2));
    }
}
