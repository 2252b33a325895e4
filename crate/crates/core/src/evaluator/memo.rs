//! Memoised top-down decision of `X`.
//!
//! The table is keyed by the exact pair `(vertex, resource)`: membership is
//! not monotone in the resource, so no entry can answer for another value.

use std::collections::HashMap;
use std::hash::Hash;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::Zero;

use super::graph::{child_resource, RecursionGraph};

struct Frame<V> {
    vertex: V,
    resource: BigUint,
    successors: Rc<[V]>,
    next: usize,
    count: usize,
}

/// A verdict cache for one recursion graph.
#[derive(Debug)]
pub struct MemoEngine<V> {
    table: HashMap<(V, BigUint), bool>,
}

impl<V> Default for MemoEngine<V> {
    fn default() -> Self {
        Self {
            table: HashMap::new(),
        }
    }
}

impl<V: Clone + Eq + Hash> MemoEngine<V> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of cached verdicts.
    pub fn cached(&self) -> usize {
        self.table.len()
    }

    /// Decides `(vertex, resource) in X`.
    ///
    /// The recursion runs on an explicit stack; resources strictly decrease
    /// along it, so it terminates on cyclic graphs as well.
    pub fn member<G>(&mut self, g: &G, vertex: &V, resource: &BigUint) -> bool
    where
        G: RecursionGraph<Vertex = V>,
    {
        if resource.is_zero() {
            return false;
        }
        if let Some(&known) = self.table.get(&(vertex.clone(), resource.clone())) {
            return known;
        }
        let mut stack = vec![Frame {
            vertex: vertex.clone(),
            resource: resource.clone(),
            successors: g.successors(vertex),
            next: 0,
            count: 0,
        }];
        loop {
            let top = stack.last_mut().expect("stack is non-empty");
            if top.next < top.successors.len() {
                let child = top.successors[top.next].clone();
                let res = child_resource(&top.resource, g.in_degree(&child));
                if res.is_zero() {
                    top.next += 1;
                    continue;
                }
                match self.table.get(&(child.clone(), res.clone())) {
                    Some(&verdict) => {
                        top.count += usize::from(verdict);
                        top.next += 1;
                    }
                    None => {
                        let successors = g.successors(&child);
                        stack.push(Frame {
                            vertex: child,
                            resource: res,
                            successors,
                            next: 0,
                            count: 0,
                        });
                    }
                }
                continue;
            }
            let done = stack.pop().expect("stack is non-empty");
            let verdict = g.label_contains(&done.vertex, done.count);
            self.table.insert((done.vertex, done.resource), verdict);
            match stack.last_mut() {
                Some(parent) => {
                    parent.count += usize::from(verdict);
                    parent.next += 1;
                }
                None => return verdict,
            }
        }
    }
}
