//! The subtree order gadget.
//!
//! `v < w` holds when the profile of `v` is lexicographically smaller, or
//! the profiles agree and the smallest isomorphism class of children on
//! which `v` and `w` disagree occurs more often below `v`. For equal
//! profiles the vertex `(0, v, w, v, w, 0)` guesses a good child `v'` of
//! `v`, a child `w'` of `w` of the same size and a count `k`, then checks
//! `v' < w'` and three counts of children below `v'`.

use std::cell::RefCell;

use num_bigint::BigUint;

use super::gadget::{full_resource, Builder, Gadget, GadgetVertex};
use super::{ColouredOrder, DirectedTree, IsoDecider, TreeError, MIN_GADGET_SIZE};
use crate::evaluator::MemoEngine;

/// Which counting rule the order gadget uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrderRule {
    /// `k` ranges over `0..=#s(v)` and the third count collects children
    /// `v''` of `v` with `v'' < v'`; this decides the order exactly.
    #[default]
    Repaired,
    /// `k` ranges over `1..=#s(v)` and the third count collects children
    /// `v''` with `v'' < w'`. Some trees are left unordered by this rule.
    Literal,
}

/// Builds the order gadget from an isomorphism matrix of `t`.
pub fn build_order_gadget(
    t: &DirectedTree,
    iso: &[Vec<bool>],
    rule: OrderRule,
) -> Result<Gadget<GadgetVertex>, TreeError> {
    let n = t.len();
    if n < MIN_GADGET_SIZE {
        return Err(TreeError::TooSmall(n));
    }
    // theta(u, x): children of u isomorphic to x.
    let theta = |u: usize, x: usize| t.children(u).iter().filter(|&&c| iso[c][x]).count();
    let mut b = Builder::new();
    for v in 0..n {
        for w in 0..n {
            let root = b.vertex(GadgetVertex::pair(v, w));
            let (pv, pw) = (t.profile(v), t.profile(w));
            if pv < pw {
                b.label(root, [0]);
            }
            if pv != pw {
                continue;
            }
            let good = t.children(v).iter().copied().filter(|&vh| {
                theta(v, vh) > theta(w, vh)
                    && t.children(v)
                        .iter()
                        .filter(|&&c| t.size(c) < t.size(vh))
                        .all(|&c| theta(v, c) == theta(w, c))
            });
            let good: Vec<usize> = good.collect();
            let mut out = 0;
            for &vh in &good {
                let s = t.size(vh);
                let count = t.children_of_size(v, s);
                let same_size = |u: usize| -> Vec<usize> {
                    t.children(u)
                        .iter()
                        .copied()
                        .filter(|&c| t.size(c) == s)
                        .collect()
                };
                let (v_kids, w_kids) = (same_size(v), same_size(w));
                let ks = match rule {
                    OrderRule::Repaired => 0..=count,
                    OrderRule::Literal => 1..=count,
                };
                for &wh in &w_kids {
                    for k in ks.clone() {
                        let guess = b.vertex(GadgetVertex::new(1, [v, w, vh, wh], k));
                        b.edge(root, guess);
                        out += 1;
                        let pair = b.vertex(GadgetVertex::pair(vh, wh));
                        b.edge(guess, pair);
                        if count == 1 {
                            b.label(guess, [1]);
                            continue;
                        }
                        b.label(guess, [4]);
                        let below_w = b.vertex(GadgetVertex::new(2, [v, w, vh, wh], k));
                        let below_v = b.vertex(GadgetVertex::new(3, [v, w, vh, wh], k));
                        let balanced = b.vertex(GadgetVertex::new(4, [v, w, vh, wh], k));
                        for c in [below_w, below_v, balanced] {
                            b.edge(guess, c);
                            b.label(c, [k]);
                        }
                        for &wr in &w_kids {
                            let p = b.vertex(GadgetVertex::pair(wr, vh));
                            b.edge(below_w, p);
                        }
                        let target = match rule {
                            OrderRule::Repaired => vh,
                            OrderRule::Literal => wh,
                        };
                        for &vr in v_kids.iter().filter(|&&c| !iso[c][vh]) {
                            let p = b.vertex(GadgetVertex::pair(vr, target));
                            b.edge(below_v, p);
                        }
                        for &wp in w_kids.iter().filter(|&&c| theta(v, c) == theta(w, c)) {
                            let p = b.vertex(GadgetVertex::pair(wp, vh));
                            b.edge(balanced, p);
                        }
                    }
                }
            }
            b.label(root, 1..=n.max(out));
        }
    }
    Ok(b.finish())
}

/// The subtree order decided through the gadget, with a shared cache.
pub struct OrderDecider {
    gadget: Option<Gadget<GadgetVertex>>,
    memo: RefCell<MemoEngine<usize>>,
    resource: BigUint,
    fallback: Option<ColouredOrder>,
}

impl OrderDecider {
    pub fn new(t: &DirectedTree, rule: OrderRule) -> Self {
        let iso = IsoDecider::new(t).matrix(t.len());
        Self::with_iso(t, &iso, rule)
    }

    /// Uses a precomputed isomorphism matrix for the counts.
    pub fn with_iso(t: &DirectedTree, iso: &[Vec<bool>], rule: OrderRule) -> Self {
        let (gadget, fallback) = match build_order_gadget(t, iso, rule) {
            Ok(g) => (Some(g), None),
            Err(_) => (None, Some(ColouredOrder::plain(t))),
        };
        Self {
            gadget,
            memo: RefCell::new(MemoEngine::new()),
            resource: full_resource(t.len()),
            fallback,
        }
    }

    pub fn gadget(&self) -> Option<&Gadget<GadgetVertex>> {
        self.gadget.as_ref()
    }

    pub fn member_at(&self, v: usize, w: usize, resource: &BigUint) -> Option<bool> {
        let g = self.gadget.as_ref()?;
        Some(g.member(
            &mut self.memo.borrow_mut(),
            &GadgetVertex::pair(v, w),
            resource,
        ))
    }

    pub fn less(&self, v: usize, w: usize) -> bool {
        match &self.fallback {
            Some(order) => order.less(v, w),
            None => self
                .member_at(v, w, &self.resource)
                .expect("gadget is built"),
        }
    }

    /// The full strict order matrix.
    pub fn matrix(&self, n: usize) -> Vec<Vec<bool>> {
        (0..n)
            .map(|v| (0..n).map(|w| self.less(v, w)).collect())
            .collect()
    }
}

/// Whether `v` precedes `w` in the subtree order.
pub fn tree_order_less(t: &DirectedTree, v: usize, w: usize) -> bool {
    OrderDecider::new(t, OrderRule::Repaired).less(v, w)
}
