//! Disjoint-set forest used for quotients and equivalence closures.

/// Union-find over `0..n` with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
        true
    }

    /// Class index of every element, classes numbered by their minimum member.
    pub fn class_indices(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_class = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if root_class[r] == usize::MAX {
                root_class[r] = count;
                count += 1;
            }
            out[x] = root_class[r];
        }
        (out, count)
    }
}
