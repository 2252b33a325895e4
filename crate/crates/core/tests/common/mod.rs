//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use lrec::structures::{circuit_vocabulary, Structure};
use lrec::syntax::{parse_formula, Formula, Recursion};

pub mod interval;

/// The circuit evaluation formula with output gate `z`.
pub const CIRCUIT: &str = "exists #r1 exists #r2 (
    [lrec x, y, #p : E(x, y) ;
        (Pand(x) and count(y; E(x, y)) = #p)
        or (Por(x) and #p > 0)
        or (Pnot(x) and #p = 0)
        or P1(x)
    ](z, (#r1, #r2))
    and forall #r (#r <= #r1 and #r <= #r2))";

/// Gate names of the small worked circuit, in element order.
pub const GATES: [&str; 11] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"];

/// The worked circuit: `a = and(b, c, d)`, `b = or(e, f)`, `d = not(g)`,
/// `g = and(h, i, j, k)`, leaves `c e h j k = 1` and `f i = 0`.
pub fn worked_circuit() -> Structure {
    let mut s = Structure::new(circuit_vocabulary(), GATES.len())
        .unwrap()
        .with_names(GATES.iter().map(|g| g.to_string()).collect())
        .unwrap();
    let edges = [
        ("a", "b"),
        ("a", "c"),
        ("a", "d"),
        ("b", "e"),
        ("b", "f"),
        ("d", "g"),
        ("g", "h"),
        ("g", "i"),
        ("g", "j"),
        ("g", "k"),
    ];
    for (x, y) in edges {
        let (x, y) = (s.element_by_name(x).unwrap(), s.element_by_name(y).unwrap());
        s.add_tuple("E", vec![x, y]).unwrap();
    }
    let kinds = [
        ("a", "Pand"),
        ("b", "Por"),
        ("c", "P1"),
        ("d", "Pnot"),
        ("e", "P1"),
        ("f", "P0"),
        ("g", "Pand"),
        ("h", "P1"),
        ("i", "P0"),
        ("j", "P1"),
        ("k", "P1"),
    ];
    for (g, kind) in kinds {
        let g = s.element_by_name(g).unwrap();
        s.add_tuple(kind, vec![g]).unwrap();
    }
    s
}

/// The recursion operator inside a formula (first one found, outermost first).
pub fn first_recursion(f: &Formula) -> Recursion {
    let mut found = None;
    f.visit(&mut |g| {
        if let Formula::Lrec(r) = g {
            if found.is_none() {
                found = Some(r.as_ref().clone());
            }
        }
    });
    found.expect("formula contains a recursion operator")
}

pub fn circuit_recursion() -> Recursion {
    first_recursion(&parse_formula(CIRCUIT).unwrap())
}

/// Direct bottom-up value of gate `g` in a circuit structure.
pub fn circuit_oracle(s: &Structure, g: usize) -> bool {
    let adj = s.adjacency("E").unwrap();
    let vals: Vec<bool> = adj[g].iter().map(|&c| circuit_oracle(s, c)).collect();
    if s.holds("Pand", &[g]) {
        vals.iter().all(|&v| v)
    } else if s.holds("Por", &[g]) {
        vals.iter().any(|&v| v)
    } else if s.holds("Pnot", &[g]) {
        !vals[0]
    } else {
        s.holds("P1", &[g])
    }
}

/// Whether following unique out-neighbours from `s` reaches `t`.
pub fn deterministic_path(adj: &[Vec<usize>], s: usize, t: usize) -> bool {
    let mut cur = s;
    for _ in 0..=adj.len() {
        if cur == t {
            return true;
        }
        match adj[cur].as_slice() {
            [next] => cur = *next,
            _ => return false,
        }
    }
    false
}

/// Connected component index of every vertex, by breadth-first search.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Lengths (in vertices) of the paths if `s` is a disjoint union of
/// directed paths, sorted; `None` otherwise.
pub fn directed_path_lengths(s: &Structure) -> Option<Vec<usize>> {
    let n = s.universe_size();
    let edges = s.tuples("E").ok()?;
    let mut out = vec![None; n];
    let mut indeg = vec![0; n];
    for e in &edges {
        if out[e[0]].replace(e[1]).is_some() {
            return None;
        }
        indeg[e[1]] += 1;
    }
    if indeg.iter().any(|&d| d > 1) {
        return None;
    }
    let mut seen = BTreeSet::new();
    let mut lengths = Vec::new();
    for start in (0..n).filter(|&v| indeg[v] == 0) {
        let mut len = 0;
        let mut cur = Some(start);
        while let Some(v) = cur {
            seen.insert(v);
            len += 1;
            cur = out[v];
        }
        lengths.push(len);
    }
    // Vertices not reached from a source lie on cycles.
    if seen.len() != n {
        return None;
    }
    lengths.sort_unstable();
    Some(lengths)
}
