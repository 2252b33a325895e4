//! The coloured modular decomposition tree.

use std::cmp::Ordering;

use super::{canon_l, l_graph, Graph, IntervalError, LCanon};
use crate::treelogic::{ColouredOrder, DirectedTree};

/// Colours are sets of pairs compared lexicographically as sorted lists.
pub type Colour = Vec<(usize, usize)>;

/// Which part of the clique order an arrangement vertex governs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    /// The only order, when the two orders give different canons or the
    /// component has a single max clique.
    Only,
    /// Cliques before the middle under the chosen order.
    First,
    /// The middle clique of a symmetric order with an odd number of cliques.
    Middle,
    /// Cliques after the middle under the chosen order.
    Second,
}

/// The role of a tree vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// The root `s_V`.
    Root,
    /// A component vertex for a set `V_{M,n}`, coloured by `K(L)`.
    Component { vertices: Vec<usize>, l: LCanon },
    /// An arrangement vertex, uncoloured.
    Arrangement { side: Side },
    /// A module vertex coloured by the positions of its clique.
    Module {
        vertices: Vec<usize>,
        positions: Vec<usize>,
    },
}

/// The coloured modular decomposition tree of an interval graph.
#[derive(Clone, Debug)]
pub struct ColouredTree {
    pub tree: DirectedTree,
    pub kinds: Vec<NodeKind>,
    pub colours: Vec<Colour>,
    order: ColouredOrder,
}

impl ColouredTree {
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn root(&self) -> usize {
        self.tree.root()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        self.tree.children(v)
    }

    /// Number of graph vertices below `v`.
    pub fn vertex_count(&self, v: usize) -> usize {
        match &self.kinds[v] {
            NodeKind::Component { vertices, .. } | NodeKind::Module { vertices, .. } => {
                vertices.len()
            }
            _ => self.children(v).iter().map(|&c| self.vertex_count(c)).sum(),
        }
    }

    /// The refined total preorder `≺'` on subtrees: colours first, then
    /// profiles and recursively the sorted children.
    pub fn cmp(&self, a: usize, b: usize) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Children of `v` in ascending `≺'` order.
    pub fn sorted_children(&self, v: usize) -> Vec<usize> {
        let mut kids = self.children(v).to_vec();
        self.order.sort(&mut kids);
        kids
    }
}

/// Compares the subtrees at `a` and `b` under `≺'`.
pub fn coloured_tree_preorder(t: &ColouredTree, a: usize, b: usize) -> Ordering {
    t.cmp(a, b)
}

fn position_colour(positions: &[usize]) -> Colour {
    let mut out: Colour = Vec::new();
    for &p in positions {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, count)) => *count += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort_unstable();
    out
}

struct Builder<'g> {
    g: &'g Graph,
    parent: Vec<Option<usize>>,
    kinds: Vec<NodeKind>,
    colours: Vec<Colour>,
}

impl Builder<'_> {
    fn push(&mut self, parent: Option<usize>, kind: NodeKind, colour: Colour) -> usize {
        self.parent.push(parent);
        self.kinds.push(kind);
        self.colours.push(colour);
        self.kinds.len() - 1
    }

    /// Adds the component vertex for the connected vertex set `d`.
    fn component(&mut self, parent: usize, d: Vec<usize>) -> Result<(), IntervalError> {
        let sub = self.g.induced(&d);
        let (l, partition) = l_graph(&sub)?;
        let lc = canon_l(&l)?;
        let colour = lc.colour();
        let m = lc.cliques;
        let symmetric = lc.symmetric && m > 1;
        let mut groups: Vec<(Side, usize, Vec<usize>)> = Vec::new();
        for (w, class) in partition.classes.iter().enumerate() {
            if class.len() < 2 {
                continue;
            }
            let (k, r) = lc.interval_of(w);
            if k != r {
                return Err(IntervalError::NotInterval(
                    "a module lies in more than one max clique".into(),
                ));
            }
            let side = if !symmetric {
                Side::Only
            } else if 2 * k == m + 1 {
                Side::Middle
            } else if 2 * k < m + 1 {
                Side::First
            } else {
                Side::Second
            };
            groups.push((side, k, class.iter().map(|&v| d[v]).collect()));
        }
        groups.sort();
        let node = self.push(
            Some(parent),
            NodeKind::Component {
                vertices: d,
                l: lc.clone(),
            },
            colour,
        );
        let mut current: Option<(Side, usize)> = None;
        for (side, k, module) in groups {
            let arrangement = match current {
                Some((s, a)) if s == side => a,
                _ => {
                    let a = self.push(Some(node), NodeKind::Arrangement { side }, Vec::new());
                    current = Some((side, a));
                    a
                }
            };
            let positions = lc.positions(k);
            let colour = position_colour(&positions);
            let s = self.push(
                Some(arrangement),
                NodeKind::Module {
                    vertices: module.clone(),
                    positions,
                },
                colour,
            );
            for comp in self.g.components_within(&module) {
                self.component(s, comp)?;
            }
        }
        Ok(())
    }
}

/// Builds the coloured modular decomposition tree of an interval graph.
pub fn build_modular_tree(g: &Graph) -> Result<ColouredTree, IntervalError> {
    let mut b = Builder {
        g,
        parent: Vec::new(),
        kinds: Vec::new(),
        colours: Vec::new(),
    };
    let root = b.push(None, NodeKind::Root, Vec::new());
    for comp in g.components() {
        b.component(root, comp)?;
    }
    let tree = DirectedTree::from_parents(&b.parent)
        .expect("the builder links every vertex to its parent");
    let order = ColouredOrder::new(&tree, &b.colours);
    Ok(ColouredTree {
        tree,
        kinds: b.kinds,
        colours: b.colours,
        order,
    })
}
