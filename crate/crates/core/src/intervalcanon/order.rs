//! The relation `≺_M` on max cliques, possible ends and the collapse of
//! incomparable cliques.

use std::collections::BTreeSet;

use super::{number_classes, spans, Graph, IntervalError, MaxClique};
use crate::structures::UnionFind;

/// The least fixed point of `≺_M` for a fixed clique `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliquePreorder {
    /// Index of `M` in the clique list.
    pub end: usize,
    less: Vec<Vec<bool>>,
    /// Whether `C ≺_M D` and `D ≺_M C` never hold together.
    pub asymmetric: bool,
    /// Classes of mutually incomparable cliques. When the relation is a
    /// strict weak order they are listed in increasing order.
    pub classes: Vec<Vec<usize>>,
}

impl CliquePreorder {
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn len(&self) -> usize {
        self.less.len()
    }

    pub fn is_empty(&self) -> bool {
        self.less.is_empty()
    }

    /// Irreflexive, transitive, with transitive incomparability.
    pub fn is_strict_weak_order(&self) -> bool {
        let m = self.len();
        let incomparable = |a: usize, b: usize| !self.less[a][b] && !self.less[b][a];
        (0..m).all(|a| !self.less[a][a])
            && (0..m).all(|a| {
                (0..m).all(|b| {
                    (0..m).all(|c| {
                        (!(self.less[a][b] && self.less[b][c]) || self.less[a][c])
                            && (!(incomparable(a, b) && incomparable(b, c)) || incomparable(a, c))
                    })
                })
            })
    }

    /// Whether every two distinct cliques are comparable.
    pub fn is_linear(&self) -> bool {
        self.asymmetric && self.classes.iter().all(|c| c.len() == 1)
    }
}

fn meets_outside(e: &MaxClique, c: &MaxClique, d: &MaxClique) -> bool {
    e.vertices.iter().any(|&x| c.contains(x) && !d.contains(x))
}

/// Computes `≺_M` for `M = cliques[end]` as reachability from the pairs
/// `(M, C)` in the graph whose edges are single applications of the rule.
pub fn clique_preorder(cliques: &[MaxClique], end: usize) -> CliquePreorder {
    let m = cliques.len();
    let mut less = vec![vec![false; m]; m];
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for c in 0..m {
        if c != end {
            less[end][c] = true;
            queue.push((end, c));
        }
    }
    while let Some((x, y)) = queue.pop() {
        // From E ≺ D with E = x, D = y: C ≺ D whenever (E ∩ C) \ D ≠ ∅.
        for c in 0..m {
            if !less[c][y] && meets_outside(&cliques[x], &cliques[c], &cliques[y]) {
                less[c][y] = true;
                queue.push((c, y));
            }
        }
        // From C ≺ E with C = x, E = y: C ≺ D whenever (E ∩ D) \ C ≠ ∅.
        for d in 0..m {
            if !less[x][d] && meets_outside(&cliques[y], &cliques[d], &cliques[x]) {
                less[x][d] = true;
                queue.push((x, d));
            }
        }
    }
    let asymmetric = (0..m).all(|a| (0..m).all(|b| !(less[a][b] && less[b][a])));

    let mut uf = UnionFind::new(m);
    for a in 0..m {
        for b in 0..m {
            if a != b && !less[a][b] && !less[b][a] {
                uf.union(a, b);
            }
        }
    }
    let (_, mut classes) = number_classes(&mut uf, m);
    let below = |c: &Vec<usize>| (0..m).filter(|&x| less[x][c[0]]).count();
    classes.sort_by_key(|c| (below(c), c[0]));
    CliquePreorder {
        end,
        less,
        asymmetric,
        classes,
    }
}

/// Indices of the cliques `M` for which `≺_M` is asymmetric.
pub fn possible_ends(cliques: &[MaxClique]) -> Vec<usize> {
    (0..cliques.len())
        .filter(|&m| clique_preorder(cliques, m).asymmetric)
        .collect()
}

/// The quotient `G_M` of a graph by `∼_M` together with the order that
/// `≺_M` induces on its max cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub graph: Graph,
    /// Class of every vertex of the input graph.
    pub class_of: Vec<usize>,
    /// Members of every class, classes numbered by least member.
    pub members: Vec<Vec<usize>>,
    /// Max cliques of the quotient in increasing order, as sorted class lists.
    pub clique_order: Vec<Vec<usize>>,
    /// The sets `S_C` merged into one class each.
    pub merged: Vec<Vec<usize>>,
}

/// Collapses, for every class `C` of at least two `≺_M`-incomparable
/// cliques, the vertices of `∪C` whose span is at most `|C|`.
pub fn collapse_incomparables(
    g: &Graph,
    cliques: &[MaxClique],
    end: usize,
) -> Result<Collapse, IntervalError> {
    let order = clique_preorder(cliques, end);
    if !order.asymmetric || !order.is_strict_weak_order() {
        return Err(IntervalError::NotInterval(format!(
            "clique {:?} is not a possible end",
            cliques[end].vertices
        )));
    }
    let n = g.len();
    let span = spans(cliques, n);
    let mut uf = UnionFind::new(n);
    let mut merged = Vec::new();
    for class in order.classes.iter().filter(|c| c.len() > 1) {
        let union: BTreeSet<usize> = class
            .iter()
            .flat_map(|&c| cliques[c].vertices.iter().copied())
            .collect();
        let s: Vec<usize> = union
            .into_iter()
            .filter(|&v| span[v] <= class.len())
            .collect();
        for w in s.windows(2) {
            uf.union(w[0], w[1]);
        }
        merged.push(s);
    }
    let (class_of, members) = number_classes(&mut uf, n);
    let graph = g.quotient(&class_of, members.len());
    let clique_order = order
        .classes
        .iter()
        .map(|class| {
            let image: BTreeSet<usize> = class
                .iter()
                .flat_map(|&c| cliques[c].vertices.iter().map(|&v| class_of[v]))
                .collect();
            image.into_iter().collect()
        })
        .collect();
    Ok(Collapse {
        graph,
        class_of,
        members,
        clique_order,
        merged,
    })
}
