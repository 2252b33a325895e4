//! Direct recursive computations used as independent witnesses.

use std::cmp::Ordering;

use super::DirectedTree;

/// Bottom-up canonical string of the subtree at `v`: the sorted child
/// strings wrapped in parentheses.
pub fn canon_string(t: &DirectedTree, v: usize) -> String {
    let mut kids: Vec<String> = t.children(v).iter().map(|&c| canon_string(t, c)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Canonical string of the whole tree.
pub fn tree_canon_oracle(t: &DirectedTree) -> String {
    canon_string(t, t.root())
}

/// Whether the subtrees at `v` and `w` are isomorphic.
pub fn oracle_isomorphic(t: &DirectedTree, v: usize, w: usize) -> bool {
    canon_string(t, v) == canon_string(t, w)
}

/// The coloured subtree order: colour first, then the profile, then the
/// children of both sides sorted ascending and compared position by position.
///
/// With a single colour this is the uncoloured subtree order.
#[derive(Clone, Debug)]
pub struct ColouredOrder {
    keys: Vec<Vec<usize>>,
}

impl ColouredOrder {
    pub fn new<C: Ord>(t: &DirectedTree, colours: &[C]) -> Self {
        assert_eq!(colours.len(), t.len(), "one colour per vertex");
        let mut distinct: Vec<&C> = colours.iter().collect();
        distinct.sort();
        distinct.dedup();
        let rank = |c: &C| distinct.binary_search(&c).expect("colour is listed");
        // Keys are prefix-free (the profile fixes the number of children and
        // every child key is itself prefix-free), so comparing concatenated
        // keys compares child lists position by position.
        let mut keys: Vec<Vec<usize>> = vec![Vec::new(); t.len()];
        let mut order: Vec<usize> = (0..t.len()).collect();
        order.sort_by_key(|&v| t.size(v));
        for v in order {
            let mut kids: Vec<&Vec<usize>> = t.children(v).iter().map(|&c| &keys[c]).collect();
            kids.sort();
            let mut key = vec![rank(&colours[v])];
            key.extend(t.profile(v));
            for k in kids {
                key.extend_from_slice(k);
            }
            keys[v] = key;
        }
        Self { keys }
    }

    /// The uncoloured order.
    pub fn plain(t: &DirectedTree) -> Self {
        Self::new(t, &vec![(); t.len()])
    }

    pub fn cmp(&self, v: usize, w: usize) -> Ordering {
        self.keys[v].cmp(&self.keys[w])
    }

    pub fn less(&self, v: usize, w: usize) -> bool {
        self.cmp(v, w) == Ordering::Less
    }

    /// Ascending order of `vertices`.
    pub fn sort(&self, vertices: &mut [usize]) {
        vertices.sort_by(|&a, &b| self.cmp(a, b).then(a.cmp(&b)));
    }
}

/// Preorder numbering from 1 with children visited in ascending coloured
/// order; returns the renumbered edges and the colours in the new numbering.
pub fn coloured_canon<C: Ord + Clone>(
    t: &DirectedTree,
    colours: &[C],
) -> (Vec<(usize, usize)>, Vec<C>) {
    let order = ColouredOrder::new(t, colours);
    let mut number = vec![0; t.len()];
    let mut out_colours = Vec::with_capacity(t.len());
    let mut edges = Vec::new();
    let mut stack = vec![t.root()];
    while let Some(v) = stack.pop() {
        number[v] = out_colours.len() + 1;
        out_colours.push(colours[v].clone());
        if let Some(p) = t.parent(v) {
            edges.push((number[p], number[v]));
        }
        let mut kids = t.children(v).to_vec();
        order.sort(&mut kids);
        stack.extend(kids.into_iter().rev());
    }
    edges.sort_unstable();
    (edges, out_colours)
}

/// Canonical edges of the uncoloured tree, vertices numbered from 1.
pub fn preorder_canon(t: &DirectedTree) -> Vec<(usize, usize)> {
    coloured_canon(t, &vec![(); t.len()]).0
}
