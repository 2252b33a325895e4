//! Canonical copies of interval graphs computed bottom-up over the coloured
//! modular decomposition tree.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{build_modular_tree, recognise, ColouredTree, Graph, IntervalError, NodeKind, Side};

/// A graph on `1..=n` given by its edges `(u, v)`, `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Canon {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Canon {
    fn from_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        Self {
            n,
            edges: set.into_iter().collect(),
        }
    }

    /// `n <count>` followed by one `u v` line per edge.
    pub fn render(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in &self.edges {
            writeln!(out, "{u} {v}").expect("writing to a string");
        }
        out
    }

    /// The canon as a graph on `0..n`.
    pub fn to_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        Graph::from_edges(self.n, &edges).expect("canon edges are in range")
    }
}

/// Disjoint union of the canons in the given order, shifting each by the
/// sizes before it.
fn concat(parts: &[Canon]) -> Canon {
    let mut set = BTreeSet::new();
    let mut offset = 0;
    for part in parts {
        set.extend(part.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        offset += part.n;
    }
    Canon::from_set(offset, set)
}

fn module_canon(t: &ColouredTree, s: usize) -> Canon {
    let kids: Vec<Canon> = t
        .sorted_children(s)
        .into_iter()
        .map(|c| node_canon(t, c))
        .collect();
    concat(&kids)
}

fn node_canon(t: &ColouredTree, v: usize) -> Canon {
    match &t.kinds[v] {
        NodeKind::Component { l, .. } => component_canon(t, v, l),
        NodeKind::Module { .. } => module_canon(t, v),
        NodeKind::Root => {
            let mut parts: Vec<Canon> = t.children(v).iter().map(|&c| node_canon(t, c)).collect();
            parts.sort();
            concat(&parts)
        }
        NodeKind::Arrangement { .. } => {
            unreachable!("arrangement vertices are handled by their component")
        }
    }
}

fn module_positions(t: &ColouredTree, s: usize) -> &[usize] {
    match &t.kinds[s] {
        NodeKind::Module { positions, .. } => positions,
        _ => unreachable!("arrangement children are module vertices"),
    }
}

fn component_canon(t: &ColouredTree, v: usize, l: &super::LCanon) -> Canon {
    let size = l.size();
    let arrangements = t.children(v);
    if arrangements.is_empty() {
        return Canon {
            n: size,
            edges: l.edges(),
        };
    }
    if l.cliques == 1 {
        // Apices: the rest first, then the apices as universal vertices.
        let module = t.children(arrangements[0])[0];
        let rest = module_canon(t, module);
        let total = rest.n + size - 1;
        let mut set: BTreeSet<(usize, usize)> = rest.edges.iter().copied().collect();
        for a in rest.n + 1..=total {
            for u in 1..a {
                set.insert((u, a));
            }
        }
        return Canon::from_set(total, set);
    }

    // Blocks in layout order with the clique each one replaces a vertex of.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let by_position = |a: &usize, b: &usize| {
        module_positions(t, *a)
            .cmp(module_positions(t, *b))
            .then(a.cmp(b))
    };
    let side = |a: usize| match t.kinds[a] {
        NodeKind::Arrangement { side } => side,
        _ => unreachable!("component children are arrangement vertices"),
    };
    let mut middle = Vec::new();
    let mut sides = Vec::new();
    for &a in arrangements {
        match side(a) {
            Side::Middle => middle.push(a),
            Side::Only => sides.push(a),
            Side::First | Side::Second => sides.push(a),
        }
    }
    for a in middle {
        for &s in t.children(a) {
            blocks.push((s, module_positions(t, s)[0]));
        }
    }
    // The smaller side in the refined order takes the first half.
    sides.sort_by(|&a, &b| t.cmp(a, b).then(a.cmp(&b)));
    for (i, &a) in sides.iter().enumerate() {
        let mut modules = t.children(a).to_vec();
        modules.sort_by(by_position);
        for s in modules {
            let p = module_positions(t, s);
            let clique = if i == 0 { p[0] } else { p[p.len() - 1] };
            blocks.push((s, clique));
        }
    }

    // The vertex each block replaces: the least one private to its clique.
    let mut removed: Vec<usize> = Vec::new();
    for &(_, k) in &blocks {
        let z = (0..size)
            .find(|&i| l.intervals[i] == (k, k) && !removed.contains(&i))
            .expect("every module clique has a private vertex");
        removed.push(z);
    }
    let removed_set: BTreeSet<usize> = removed.iter().copied().collect();
    let mut f = vec![0; size];
    let mut kept = 0;
    for (i, slot) in f.iter_mut().enumerate() {
        if !removed_set.contains(&i) {
            kept += 1;
            *slot = kept;
        }
    }
    let meets = |a: (usize, usize), b: (usize, usize)| a.0 <= b.1 && b.0 <= a.1;
    let mut set = BTreeSet::new();
    for (p, q) in l.edges() {
        if !removed_set.contains(&(p - 1)) && !removed_set.contains(&(q - 1)) {
            set.insert((f[p - 1], f[q - 1]));
        }
    }
    let mut offset = kept;
    for (&(s, _), &z) in blocks.iter().zip(&removed) {
        let part = module_canon(t, s);
        set.extend(part.edges.iter().map(|&(u, w)| (u + offset, w + offset)));
        for x in (0..size).filter(|&x| x != z && !removed_set.contains(&x)) {
            if meets(l.intervals[x], l.intervals[z]) {
                for u in 1..=part.n {
                    set.insert((f[x], u + offset));
                }
            }
        }
        offset += part.n;
    }
    Canon::from_set(offset, set)
}

/// The canonical copy of the graph described by a coloured tree.
pub fn canon_from_tree(t: &ColouredTree) -> Canon {
    node_canon(t, t.root())
}

/// The canonical copy of an interval graph; non-interval graphs are rejected.
pub fn interval_canon(g: &Graph) -> Result<Canon, IntervalError> {
    recognise(g)?;
    Ok(canon_from_tree(&build_modular_tree(g)?))
}
