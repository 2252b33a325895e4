//! Deterministic and seeded generators for test structures.

use rand::Rng;

use super::{Structure, StructureError, Vocabulary};

/// The layered graph `G_n`: two sides of `n` layers with `n` vertices each,
/// consecutive layers of a side joined completely. Vertices are numbered
/// side-major, then layer-major.
pub fn generate_layered_graph(n: usize) -> Result<Structure, StructureError> {
    if n == 0 {
        return Err(StructureError::Domain("layered graph needs n >= 1".into()));
    }
    let id = |side: usize, layer: usize, k: usize| (side * n + layer) * n + k;
    let mut edges = Vec::new();
    for side in 0..2 {
        for layer in 0..n - 1 {
            for a in 0..n {
                for b in 0..n {
                    edges.push((id(side, layer, a), id(side, layer + 1, b)));
                }
            }
        }
    }
    Structure::digraph(2 * n * n, &edges)
}

/// Parent array of a uniform random attachment tree rooted at 0.
pub fn random_tree_parents<R: Rng>(n: usize, rng: &mut R) -> Vec<Option<usize>> {
    (0..n)
        .map(|i| {
            if i == 0 {
                None
            } else {
                Some(rng.gen_range(0..i))
            }
        })
        .collect()
}

/// A random interval graph on `n` vertices with endpoints in `[0, 2n)`.
pub fn random_interval_graph<R: Rng>(
    n: usize,
    rng: &mut R,
) -> Result<(Structure, Vec<(usize, usize)>), StructureError> {
    let span = 2 * n.max(1);
    let intervals: Vec<(usize, usize)> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..span);
            let b = rng.gen_range(0..span);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (intervals[u], intervals[v]);
            if a.0 <= b.1 && b.0 <= a.1 {
                edges.push((u, v));
            }
        }
    }
    Ok((Structure::undirected(n, &edges)?, intervals))
}

/// The circuit vocabulary: `E(x,y)` means gate `y` is an input of gate `x`.
pub fn circuit_vocabulary() -> Vocabulary {
    Vocabulary::new([
        ("E", 2),
        ("Pand", 1),
        ("Por", 1),
        ("Pnot", 1),
        ("P0", 1),
        ("P1", 1),
    ])
    .expect("fixed vocabulary is valid")
}

/// A random tree-shaped circuit with fan-in at most 3 rooted at gate 0.
pub fn random_circuit<R: Rng>(gates: usize, rng: &mut R) -> Result<Structure, StructureError> {
    if gates == 0 {
        return Err(StructureError::Domain(
            "circuit needs at least one gate".into(),
        ));
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); gates];
    for g in 1..gates {
        let open: Vec<usize> = (0..g).filter(|&p| children[p].len() < 3).collect();
        let p = open[rng.gen_range(0..open.len())];
        children[p].push(g);
    }
    let mut s = Structure::new(circuit_vocabulary(), gates)?;
    for (g, cs) in children.iter().enumerate() {
        for &c in cs {
            s.add_tuple("E", vec![g, c])?;
        }
        let kind = match cs.len() {
            0 => {
                if rng.gen_bool(0.5) {
                    "P1"
                } else {
                    "P0"
                }
            }
            1 => ["Pnot", "Pand", "Por"][rng.gen_range(0..3)],
            _ => ["Pand", "Por"][rng.gen_range(0..2)],
        };
        s.add_tuple(kind, vec![g])?;
    }
    Ok(s)
}
