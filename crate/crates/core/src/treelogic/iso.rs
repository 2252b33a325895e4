//! The subtree isomorphism gadget.
//!
//! For every pair `(v, w)` the vertex `(0, v, w, v, w, 0)` stands for
//! "the subtrees at `v` and `w` are isomorphic". Pairs with different
//! profiles are easy: no edges, empty label. Otherwise the vertex checks
//! that every child `v'` of `v` has a partner `w'` of `w` and a number `k`
//! such that `v' ~ w'`, exactly `k` children of `w` are isomorphic to `v'`
//! and exactly `k` children of `v` are isomorphic to `w'`.

use std::cell::RefCell;

use num_bigint::BigUint;

use super::gadget::{full_resource, Builder, Gadget, GadgetVertex};
use super::{DirectedTree, TreeError, MIN_GADGET_SIZE};
use crate::evaluator::MemoEngine;

/// Builds the isomorphism gadget of a tree with at least four vertices.
pub fn build_iso_gadget(t: &DirectedTree) -> Result<Gadget<GadgetVertex>, TreeError> {
    let n = t.len();
    if n < MIN_GADGET_SIZE {
        return Err(TreeError::TooSmall(n));
    }
    let mut b = Builder::new();
    let positive = |out: usize| 1..=n.max(out);
    for v in 0..n {
        for w in 0..n {
            let root = b.vertex(GadgetVertex::pair(v, w));
            if t.profile(v) != t.profile(w) {
                continue;
            }
            b.label(root, [t.children(v).len()]);
            for &vh in t.children(v) {
                let s = t.size(vh);
                let count = t.children_of_size(v, s);
                let partners: Vec<usize> = t
                    .children(w)
                    .iter()
                    .copied()
                    .filter(|&c| t.size(c) == s)
                    .collect();
                let first = b.vertex(GadgetVertex::new(1, [v, w, vh, w], 0));
                b.edge(root, first);
                b.label(first, positive(partners.len() * count));
                for &wh in &partners {
                    for k in 1..=count {
                        let choice = b.vertex(GadgetVertex::new(2, [v, w, vh, wh], k));
                        b.edge(first, choice);
                        let pair = b.vertex(GadgetVertex::pair(vh, wh));
                        b.edge(choice, pair);
                        if count == 1 {
                            b.label(choice, [1]);
                            continue;
                        }
                        b.label(choice, [3]);
                        let left = b.vertex(GadgetVertex::new(3, [v, w, vh, wh], k));
                        let right = b.vertex(GadgetVertex::new(4, [v, w, vh, wh], k));
                        b.edge(choice, left);
                        b.edge(choice, right);
                        b.label(left, [k]);
                        b.label(right, [k]);
                        for &wr in &partners {
                            let p = b.vertex(GadgetVertex::pair(vh, wr));
                            b.edge(left, p);
                        }
                        for &vr in t.children(v).iter().filter(|&&c| t.size(c) == s) {
                            let p = b.vertex(GadgetVertex::pair(vr, wh));
                            b.edge(right, p);
                        }
                    }
                }
            }
        }
    }
    Ok(b.finish())
}

/// Subtree isomorphism decided through the gadget, with a shared cache.
pub struct IsoDecider {
    gadget: Option<Gadget<GadgetVertex>>,
    memo: RefCell<MemoEngine<usize>>,
    resource: BigUint,
    fallback: Option<DirectedTree>,
}

impl IsoDecider {
    /// Trees below the gadget's minimum size are decided by the oracle.
    pub fn new(t: &DirectedTree) -> Self {
        match build_iso_gadget(t) {
            Ok(g) => Self {
                gadget: Some(g),
                memo: RefCell::new(MemoEngine::new()),
                resource: full_resource(t.len()),
                fallback: None,
            },
            Err(_) => Self {
                gadget: None,
                memo: RefCell::new(MemoEngine::new()),
                resource: full_resource(t.len()),
                fallback: Some(t.clone()),
            },
        }
    }

    pub fn gadget(&self) -> Option<&Gadget<GadgetVertex>> {
        self.gadget.as_ref()
    }

    /// Membership of `((0, v, w, v, w, 0), resource)` in the gadget relation.
    pub fn member_at(&self, v: usize, w: usize, resource: &BigUint) -> Option<bool> {
        let g = self.gadget.as_ref()?;
        Some(g.member(
            &mut self.memo.borrow_mut(),
            &GadgetVertex::pair(v, w),
            resource,
        ))
    }

    pub fn isomorphic(&self, v: usize, w: usize) -> bool {
        match &self.fallback {
            Some(t) => super::oracle_isomorphic(t, v, w),
            None => self
                .member_at(v, w, &self.resource)
                .expect("gadget is built"),
        }
    }

    /// The full isomorphism matrix.
    pub fn matrix(&self, n: usize) -> Vec<Vec<bool>> {
        (0..n)
            .map(|v| (0..n).map(|w| self.isomorphic(v, w)).collect())
            .collect()
    }
}

/// Whether the subtrees at `v` and `w` are isomorphic.
pub fn tree_isomorphic(t: &DirectedTree, v: usize, w: usize) -> bool {
    IsoDecider::new(t).isomorphic(v, w)
}
