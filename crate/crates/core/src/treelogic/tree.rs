//! Directed trees given by parent arrays.

use std::collections::BTreeSet;

use super::TreeError;
use crate::structures::Structure;

/// A directed tree on `0..n`, edges pointing from parent to child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    size: Vec<usize>,
    depth: Vec<usize>,
}

impl DirectedTree {
    /// Builds a tree from its parent array; exactly one entry is `None`.
    pub fn from_parents(parent: &[Option<usize>]) -> Result<Self, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::NotATree("the tree has no vertices".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        let [root] = roots.as_slice() else {
            return Err(TreeError::NotATree(format!("{} roots", roots.len())));
        };
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(TreeError::NotATree(format!(
                        "parent {p} of {v} is out of range"
                    )));
                }
                children[p].push(v);
            }
        }
        // Breadth-first order from the root must reach every vertex.
        let mut order = vec![*root];
        let mut depth = vec![0; n];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                order.push(c);
            }
            i += 1;
        }
        if order.len() != n {
            return Err(TreeError::NotATree(
                "the parent array contains a cycle".into(),
            ));
        }
        let mut size = vec![1; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        Ok(Self {
            parent: parent.to_vec(),
            children,
            root: *root,
            size,
            depth,
        })
    }

    /// Reads a tree from the binary relation `E` of a structure.
    pub fn from_structure(s: &Structure) -> Result<Self, TreeError> {
        let mut parent = vec![None; s.universe_size()];
        let edges = s
            .tuples("E")
            .map_err(|e| TreeError::NotATree(e.to_string()))?;
        for e in edges {
            if parent[e[1]].replace(e[0]).is_some() {
                return Err(TreeError::NotATree(format!(
                    "vertex {} has two parents",
                    e[1]
                )));
            }
        }
        Self::from_parents(&parent)
    }

    /// Builds a tree on `0..n` from its edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        let mut parent = vec![None; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(TreeError::NotATree(format!(
                    "edge ({a}, {b}) is out of range"
                )));
            }
            if parent[b].replace(a).is_some() {
                return Err(TreeError::NotATree(format!("vertex {b} has two parents")));
            }
        }
        Self::from_parents(&parent)
    }

    /// Parses the line format `parents - 0 0 1`, `-` marking the root.
    pub fn parse_parent_line(line: &str) -> Result<Self, TreeError> {
        let mut words = line.split_whitespace();
        if words.next() != Some("parents") {
            return Err(TreeError::Format(
                "expected `parents` followed by the array".into(),
            ));
        }
        let parent = words
            .map(|w| match w {
                "-" => Ok(None),
                _ => w
                    .parse::<usize>()
                    .map(Some)
                    .map_err(|_| TreeError::Format(format!("bad parent `{w}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_parents(&parent)
    }

    /// The tree in the `parents ...` line format.
    pub fn to_parent_line(&self) -> String {
        let mut out = String::from("parents");
        for p in &self.parent {
            match p {
                Some(p) => out.push_str(&format!(" {p}")),
                None => out.push_str(" -"),
            }
        }
        out
    }

    /// The tree as a structure over `{E}`.
    pub fn to_structure(&self) -> Structure {
        Structure::digraph(self.len(), &self.edges()).expect("tree edges are in range")
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Parent-child pairs in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = (0..self.len())
            .filter_map(|v| self.parent[v].map(|p| (p, v)))
            .collect();
        set.into_iter().collect()
    }

    /// Number of vertices of the subtree rooted at `v`.
    pub fn size(&self, v: usize) -> usize {
        self.size[v]
    }

    /// Number of children of `v` whose subtree has `s` vertices.
    pub fn children_of_size(&self, v: usize, s: usize) -> usize {
        self.children[v]
            .iter()
            .filter(|&&c| self.size[c] == s)
            .count()
    }

    /// `(size(v), #1(v), ..., #(size(v)-1)(v))`.
    pub fn profile(&self, v: usize) -> Vec<usize> {
        let s = self.size[v];
        let mut p = vec![0; s];
        p[0] = s;
        for &c in &self.children[v] {
            p[self.size[c]] += 1;
        }
        p
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, TreeError> {
        let mut parent = vec![None; self.len()];
        for v in 0..self.len() {
            parent[perm[v]] = self.parent[v].map(|p| perm[p]);
        }
        Self::from_parents(&parent)
    }

    /// The tree with a new root `0` above the roots of `trees`, in order.
    pub fn join(trees: &[&DirectedTree]) -> Self {
        let mut parent = vec![None];
        for t in trees {
            let offset = parent.len();
            for v in 0..t.len() {
                parent.push(Some(t.parent[v].map_or(0, |p| p + offset)));
            }
        }
        Self::from_parents(&parent).expect("joining trees yields a tree")
    }
}

/// One representative of every isomorphism class of trees on `n` vertices,
/// each with `parent(v) < v`, ordered by their canonical strings.
pub fn all_trees(n: usize) -> Vec<DirectedTree> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![DirectedTree::from_parents(&[None]).expect("single vertex")];
    for _ in 1..n {
        let mut next = std::collections::BTreeMap::new();
        for t in &level {
            for p in 0..t.len() {
                let mut parent = t.parent.clone();
                parent.push(Some(p));
                let grown = DirectedTree::from_parents(&parent).expect("attaching a leaf");
                next.entry(super::canon_string(&grown, grown.root()))
                    .or_insert(grown);
            }
        }
        level = next.into_values().collect();
    }
    level
}
