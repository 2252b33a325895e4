//! Brute-force oracles and fixtures for interval graphs.

use std::collections::{BTreeMap, BTreeSet};

use lrec::intervalcanon::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn pair_bit(u: usize, v: usize) -> u64 {
    let (a, b) = (u.min(v), u.max(v));
    1u64 << (b * (b - 1) / 2 + a)
}

/// Least adjacency bitmask over all relabellings; graphs up to 11 vertices.
pub fn brute_canon_with(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let edges = g.edges();
    perms
        .iter()
        .map(|p| {
            edges
                .iter()
                .fold(0u64, |m, &(u, v)| m | pair_bit(p[u], p[v]))
        })
        .min()
        .unwrap_or(0)
}

pub fn brute_canon(g: &Graph) -> u64 {
    brute_canon_with(g, &permutations(g.len()))
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.len() == h.len() && g.edge_count() == h.edge_count() && brute_canon(g) == brute_canon(h)
}

/// Maximal cliques by Bron–Kerbosch with pivoting.
pub fn bron_kerbosch(g: &Graph) -> BTreeSet<Vec<usize>> {
    fn go(g: &Graph, r: Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            let mut r = r;
            r.sort_unstable();
            out.insert(r);
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| g.adjacent(u, v)).count());
        let pivot = pivot.expect("p or x is non-empty");
        let (mut p, mut x) = (p, x);
        for v in p.clone() {
            if g.adjacent(pivot, v) {
                continue;
            }
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.iter().copied().filter(|&u| g.adjacent(u, v)).collect();
            let x2 = x.iter().copied().filter(|&u| g.adjacent(u, v)).collect();
            go(g, r2, p2, x2, out);
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let mut out = BTreeSet::new();
    if !g.is_empty() {
        go(g, Vec::new(), (0..g.len()).collect(), Vec::new(), &mut out);
    }
    out
}

/// Orders of the max cliques in which every vertex lies in consecutive
/// cliques, found by backtracking; stops after `limit` orders.
pub fn consecutive_orders(g: &Graph, limit: usize) -> Vec<Vec<Vec<usize>>> {
    let cliques: Vec<Vec<usize>> = bron_kerbosch(g).into_iter().collect();
    let mut out = Vec::new();
    // state: 0 unseen, 1 open, 2 closed
    fn go(
        cliques: &[Vec<usize>],
        used: &mut Vec<bool>,
        state: &mut Vec<u8>,
        order: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if order.len() == cliques.len() {
            out.push(order.iter().map(|&c| cliques[c].clone()).collect());
            return;
        }
        for c in 0..cliques.len() {
            if used[c] {
                continue;
            }
            let saved = state.clone();
            let mut ok = true;
            for v in 0..state.len() {
                let inside = cliques[c].binary_search(&v).is_ok();
                match (inside, state[v]) {
                    (true, 2) => ok = false,
                    (true, _) => state[v] = 1,
                    (false, 1) => state[v] = 2,
                    _ => {}
                }
            }
            if ok {
                used[c] = true;
                order.push(c);
                go(cliques, used, state, order, out, limit);
                order.pop();
                used[c] = false;
            }
            *state = saved;
        }
    }
    go(
        &cliques,
        &mut vec![false; cliques.len()],
        &mut vec![0; g.len()],
        &mut Vec::new(),
        &mut out,
        limit,
    );
    out
}

/// Interval test by searching for a consecutive clique order.
pub fn is_interval_oracle(g: &Graph) -> bool {
    g.is_empty() || !consecutive_orders(g, 1).is_empty()
}

/// The cliques that come first in some consecutive clique order.
pub fn possible_end_oracle(g: &Graph) -> BTreeSet<Vec<usize>> {
    consecutive_orders(g, usize::MAX)
        .into_iter()
        .map(|o| o[0].clone())
        .collect()
}

/// Representatives of all graphs on `n` vertices up to isomorphism that
/// satisfy `keep`, for a property inherited by induced subgraphs.
pub fn graph_classes(max: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Vec<Graph>> {
    let mut levels = vec![vec![Graph::empty(0)]];
    for n in 1..=max {
        let perms = permutations(n);
        let mut next: BTreeMap<u64, Graph> = BTreeMap::new();
        for g in &levels[n - 1] {
            for mask in 0u32..(1 << (n - 1)) {
                let mut h = Graph::empty(n);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for u in 0..n - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, n - 1);
                    }
                }
                if keep(&h) {
                    next.entry(brute_canon_with(&h, &perms)).or_insert(h);
                }
            }
        }
        levels.push(next.into_values().collect());
    }
    levels
}

/// Interval graphs up to isomorphism by vertex count, obtained by filtering
/// every one-vertex extension of the smaller classes.
pub fn interval_classes(max: usize) -> Vec<Vec<Graph>> {
    graph_classes(max, is_interval_oracle)
}

/// A uniformly random relabelling.
pub fn shuffle<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..g.len()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// The interval graph of a list of closed intervals.
pub fn from_intervals(intervals: &[(usize, usize)]) -> Graph {
    let n = intervals.len();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (intervals[u], intervals[v]);
            if a.0 <= b.1 && b.0 <= a.1 {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Names and intervals of the graph drawn with its coloured modular
/// decomposition tree: eleven clique columns at positions 0 to 10.
pub const TREE_FIGURE: [(&str, (usize, usize)); 20] = [
    ("a", (0, 0)),
    ("b", (0, 3)),
    ("c", (1, 9)),
    ("d", (6, 10)),
    ("e", (10, 10)),
    ("f", (1, 1)),
    ("g", (2, 2)),
    ("h", (2, 3)),
    ("j", (3, 3)),
    ("k", (4, 5)),
    ("l", (4, 5)),
    ("m", (4, 4)),
    ("n", (5, 5)),
    ("o", (6, 8)),
    ("p", (7, 9)),
    ("q", (7, 9)),
    ("r", (9, 9)),
    ("s", (6, 6)),
    ("t", (7, 7)),
    ("u", (8, 8)),
];

pub fn tree_figure() -> Graph {
    let intervals: Vec<(usize, usize)> = TREE_FIGURE.iter().map(|&(_, iv)| iv).collect();
    from_intervals(&intervals)
}

pub fn figure_vertex(name: &str) -> usize {
    TREE_FIGURE
        .iter()
        .position(|&(n, _)| n == name)
        .expect("vertex of the figure")
}

/// Vertex set of the figure graph by names.
pub fn figure_set(names: &str) -> Vec<usize> {
    let mut out: Vec<usize> = names
        .chars()
        .map(|c| figure_vertex(&c.to_string()))
        .collect();
    out.sort_unstable();
    out
}

/// The partition of max cliques by its definition: maximal proper subsets
/// `C` such that every clique outside `C` meets all members of `C` alike.
pub fn brute_clique_partition(cliques: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let m = cliques.len();
    let meet = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        a.iter().copied().filter(|x| b.contains(x)).collect()
    };
    let good: Vec<u32> = (1u32..(1 << m) - 1)
        .filter(|&s| {
            let inside: Vec<usize> = (0..m).filter(|&i| s >> i & 1 == 1).collect();
            (0..m).filter(|&b| s >> b & 1 == 0).all(|b| {
                inside
                    .windows(2)
                    .all(|w| meet(&cliques[b], &cliques[w[0]]) == meet(&cliques[b], &cliques[w[1]]))
            })
        })
        .collect();
    good.iter()
        .filter(|&&s| !good.iter().any(|&t| t != s && t & s == s))
        .map(|&s| (0..m).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// The vertex modules by definition: components, apices and the rest, or
/// the sets `S_C` of the brute-force clique partition.
pub fn brute_vertex_modules(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.len();
    if n <= 1 {
        return (0..n).map(|v| vec![v]).collect();
    }
    if !g.is_connected() {
        return g.components();
    }
    let apices = g.apices();
    if !apices.is_empty() {
        let mut out: Vec<Vec<usize>> = apices.iter().map(|&a| vec![a]).collect();
        let rest: Vec<usize> = (0..n).filter(|v| !apices.contains(v)).collect();
        if !rest.is_empty() {
            out.push(rest);
        }
        return out;
    }
    let cliques: Vec<Vec<usize>> = bron_kerbosch(g).into_iter().collect();
    let mut covered = BTreeSet::new();
    let mut out = Vec::new();
    for cell in brute_clique_partition(&cliques) {
        if cell.len() < 2 {
            continue;
        }
        let s: Vec<usize> = (0..n)
            .filter(|&v| {
                cell.iter().any(|&c| cliques[c].contains(&v))
                    && !(0..cliques.len()).any(|b| !cell.contains(&b) && cliques[b].contains(&v))
            })
            .collect();
        covered.extend(s.iter().copied());
        out.push(s);
    }
    out.extend((0..n).filter(|v| !covered.contains(v)).map(|v| vec![v]));
    out.sort();
    out
}

/// Connected components of decomposition modules, found by recursing over
/// the modular decomposition tree.
pub fn decomposition_oracle(g: &Graph) -> BTreeSet<Vec<usize>> {
    fn go(g: &Graph, w: &[usize], is_decomposition: bool, out: &mut BTreeSet<Vec<usize>>) {
        let sub = g.induced(w);
        if is_decomposition {
            for c in sub.components() {
                out.insert(c.iter().map(|&v| w[v]).collect());
            }
        }
        if w.len() <= 1 {
            return;
        }
        let connected = sub.is_connected();
        for module in brute_vertex_modules(&sub) {
            if module.len() > 1 {
                let global: Vec<usize> = module.iter().map(|&v| w[v]).collect();
                go(g, &global, connected, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    let all: Vec<usize> = (0..g.len()).collect();
    go(g, &all, true, &mut out);
    out
}
