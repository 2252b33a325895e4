//! Interval models and recognition.

use std::fmt::Write as _;

use super::{canon_l, l_graph, Graph, IntervalError};

/// An ordering of the max cliques and, per vertex, the positions `[l, r]`
/// (counted from 1) of the first and last clique containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalModel {
    pub cliques: Vec<Vec<usize>>,
    pub intervals: Vec<(usize, usize)>,
}

impl IntervalModel {
    /// Derives intervals from an ordered clique list.
    pub fn from_cliques(n: usize, cliques: Vec<Vec<usize>>) -> Result<Self, IntervalError> {
        let mut intervals = vec![(usize::MAX, 0); n];
        for (i, c) in cliques.iter().enumerate() {
            for &v in c {
                let (l, r) = &mut intervals[v];
                *l = (*l).min(i + 1);
                *r = (*r).max(i + 1);
            }
        }
        if let Some(v) = intervals.iter().position(|&(l, _)| l == usize::MAX) {
            return Err(IntervalError::NotInterval(format!(
                "vertex {v} lies in no clique"
            )));
        }
        Ok(Self { cliques, intervals })
    }

    /// Checks that every vertex occupies consecutive cliques and that two
    /// vertices are adjacent exactly when their intervals meet.
    pub fn verify(&self, g: &Graph) -> Result<(), IntervalError> {
        for (v, &(l, r)) in self.intervals.iter().enumerate() {
            let count = self.cliques.iter().filter(|c| c.contains(&v)).count();
            if count != r + 1 - l {
                return Err(IntervalError::NotInterval(format!(
                    "vertex {v} does not lie in consecutive cliques"
                )));
            }
        }
        for u in 0..g.len() {
            for v in u + 1..g.len() {
                let (a, b) = (self.intervals[u], self.intervals[v]);
                if g.adjacent(u, v) != (a.0 <= b.1 && b.0 <= a.1) {
                    return Err(IntervalError::NotInterval(format!(
                        "vertices {u} and {v} violate the model"
                    )));
                }
            }
        }
        Ok(())
    }

    /// One `v l r` line per vertex.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (v, (l, r)) in self.intervals.iter().enumerate() {
            writeln!(out, "{v} {l} {r}").expect("writing to a string");
        }
        out
    }
}

/// Max cliques of the connected set `d` in a consecutive order: the clique
/// order of `L` with every module clique expanded by the orders of the
/// module's components.
fn order_component(g: &Graph, d: &[usize]) -> Result<Vec<Vec<usize>>, IntervalError> {
    let sub = g.induced(d);
    let (l, partition) = l_graph(&sub)?;
    let lc = canon_l(&l)?;
    let mut out = Vec::new();
    for clique in &lc.order {
        let mut base = Vec::new();
        let mut module = None;
        for &w in clique {
            let class = &partition.classes[w];
            if class.len() > 1 {
                if module.replace(class).is_some() {
                    return Err(IntervalError::NotInterval(
                        "a max clique meets two modules".into(),
                    ));
                }
            } else {
                base.push(d[class[0]]);
            }
        }
        match module {
            None => out.push(base),
            Some(class) => {
                let members: Vec<usize> = class.iter().map(|&v| d[v]).collect();
                for comp in g.components_within(&members) {
                    for inner in order_component(g, &comp)? {
                        let mut c = base.clone();
                        c.extend(inner);
                        out.push(c);
                    }
                }
            }
        }
    }
    for c in &mut out {
        c.sort_unstable();
    }
    Ok(out)
}

/// Builds an interval model and verifies it against the graph.
pub fn recognise(g: &Graph) -> Result<IntervalModel, IntervalError> {
    let mut cliques = Vec::new();
    for comp in g.components() {
        cliques.extend(order_component(g, &comp)?);
    }
    let model = IntervalModel::from_cliques(g.len(), cliques)?;
    model.verify(g)?;
    Ok(model)
}

/// Whether the graph is an interval graph.
pub fn is_interval(g: &Graph) -> bool {
    recognise(g).is_ok()
}
