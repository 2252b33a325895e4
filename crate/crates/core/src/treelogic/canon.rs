//! The canonisation recursion over `V(T) x N(T)^2`.
//!
//! The vertex `(v, m, n)` asks whether `(m, n)` is an edge of the canonical
//! copy of the subtree at `v`, numbered in preorder from 1. For a child `w`
//! of `v` with `e` isomorphic siblings (itself included) and offsets
//! `p_i = 2 + (sizes of the children below w) + i * size(w)`, `(v, 1, p_i)`
//! holds outright and `(v, p_i - 1 + m, p_i - 1 + n)` holds iff `(m, n)`
//! holds at all `e` siblings. Only `m, n` in `1..=size(w)` are copied, so
//! the blocks of different children never overlap.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::gadget::{Builder, Gadget};
use super::{DirectedTree, IsoDecider, OrderDecider, OrderRule};
use crate::evaluator::MemoEngine;

/// Canonical edges on `1..=|V(T)|`.
pub type CanonEdges = BTreeSet<(usize, usize)>;

/// Builds the canonisation gadget from the subtree order and isomorphism.
pub fn build_canon_gadget(
    t: &DirectedTree,
    less: &[Vec<bool>],
    iso: &[Vec<bool>],
) -> Gadget<(usize, usize, usize)> {
    let mut b = Builder::new();
    for v in 0..t.len() {
        for &w in t.children(v) {
            let below: usize = t
                .children(v)
                .iter()
                .filter(|&&c| less[c][w])
                .map(|&c| t.size(c))
                .sum();
            let twins: Vec<usize> = t
                .children(v)
                .iter()
                .copied()
                .filter(|&c| iso[c][w])
                .collect();
            let e = twins.len();
            for i in 0..e {
                let p = 2 + below + i * t.size(w);
                let direct = b.vertex((v, 1, p));
                b.label(direct, [0]);
                for m in 1..=t.size(w) {
                    for n in 1..=t.size(w) {
                        let copy = b.vertex((v, p - 1 + m, p - 1 + n));
                        b.label(copy, [e]);
                        let target = b.vertex((w, m, n));
                        b.edge(copy, target);
                    }
                }
            }
        }
    }
    b.finish()
}

/// Canonical edges read off the gadget: `(m, n)` is an edge iff
/// `((root, m, n), r)` is in the relation for some `r` in `N(T)`.
pub fn canon_from_gadget(t: &DirectedTree, g: &Gadget<(usize, usize, usize)>) -> CanonEdges {
    let n = t.len();
    let mut memo = MemoEngine::new();
    let mut out = CanonEdges::new();
    for a in 1..=n {
        for b in 1..=n {
            let key = (t.root(), a, b);
            if g.id(&key).is_none() {
                continue;
            }
            if (0..=n).any(|r| g.member(&mut memo, &key, &BigUint::from(r))) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Canonical copy of `t` computed through the order, isomorphism and
/// canonisation gadgets.
pub fn tree_canon(t: &DirectedTree) -> CanonEdges {
    let iso = IsoDecider::new(t).matrix(t.len());
    let less = OrderDecider::with_iso(t, &iso, OrderRule::Repaired).matrix(t.len());
    canon_from_gadget(t, &build_canon_gadget(t, &less, &iso))
}
