//! The partition of max cliques, the vertex modules and the sets `V_{M,n}`.

use std::collections::{BTreeSet, HashMap};

use super::{
    collapse_incomparables, max_cliques, number_classes, possible_ends, spans, Graph,
    IntervalError, MaxClique,
};
use crate::structures::UnionFind;

/// A partition of the vertices into modules, classes numbered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl VertexPartition {
    fn from_classes(n: usize, mut classes: Vec<Vec<usize>>) -> Self {
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort();
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                class_of[v] = i;
            }
        }
        Self { classes, class_of }
    }

    /// Classes with more than one vertex.
    pub fn modules(&self) -> Vec<&Vec<usize>> {
        self.classes.iter().filter(|c| c.len() > 1).collect()
    }
}

/// The partition of the max cliques of a connected apex-free interval graph
/// and the modules it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPartition {
    /// Cells of clique indices, each sorted, ordered by least clique.
    pub cells: Vec<Vec<usize>>,
    /// `S_C` for every cell with at least two cliques, in cell order.
    pub modules: Vec<Vec<usize>>,
    /// The vertex modules: the sets `S_C` and the remaining singletons.
    pub partition: VertexPartition,
}

/// Computes the partition by collapsing twice: first by `∼_M` for a possible
/// end `M`, then in `G_M` by `∼_Z` for the last clique `Z` of `G_M`.
pub fn modular_partition(
    g: &Graph,
    cliques: &[MaxClique],
) -> Result<ModularPartition, IntervalError> {
    if !g.is_connected() || !g.apices().is_empty() {
        return Err(IntervalError::Precondition(
            "the partition of max cliques needs a connected graph without apices".into(),
        ));
    }
    let ends = possible_ends(cliques);
    let Some(&end) = ends.first() else {
        return Err(IntervalError::NotInterval(
            "no max clique is a possible end".into(),
        ));
    };
    let first = collapse_incomparables(g, cliques, end)?;
    let inner = max_cliques(&first.graph);
    let last = first
        .clique_order
        .last()
        .expect("a connected graph has a max clique");
    let z = inner
        .iter()
        .position(|c| &c.vertices == last)
        .ok_or_else(|| {
            IntervalError::NotInterval("the collapsed cliques are not max cliques".into())
        })?;
    let second = collapse_incomparables(&first.graph, &inner, z)?;

    let n = g.len();
    let mut uf = UnionFind::new(n);
    let mut rep: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let class = second.class_of[first.class_of[v]];
        let r = *rep.entry(class).or_insert(v);
        uf.union(r, v);
    }
    let (_, classes) = number_classes(&mut uf, n);
    let partition = VertexPartition::from_classes(n, classes);

    let mut cell_of_module: Vec<Vec<usize>> = Vec::new();
    let mut module_of_clique: Vec<Option<usize>> = vec![None; cliques.len()];
    let modules: Vec<Vec<usize>> = partition.modules().into_iter().cloned().collect();
    for (i, module) in modules.iter().enumerate() {
        let mut cell = Vec::new();
        for (c, clique) in cliques.iter().enumerate() {
            if module.iter().any(|&v| clique.contains(v)) {
                if module_of_clique[c].replace(i).is_some() {
                    return Err(IntervalError::NotInterval(
                        "a max clique meets two modules".into(),
                    ));
                }
                cell.push(c);
            }
        }
        cell_of_module.push(cell);
    }
    let mut cells: Vec<Vec<usize>> = cell_of_module.clone();
    cells.extend(
        (0..cliques.len())
            .filter(|&c| module_of_clique[c].is_none())
            .map(|c| vec![c]),
    );
    cells.sort();
    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> =
        cell_of_module.into_iter().zip(modules).collect();
    pairs.sort();
    let modules = pairs.into_iter().map(|(_, m)| m).collect();
    Ok(ModularPartition {
        cells,
        modules,
        partition,
    })
}

/// The vertex modules `W_G` of an interval graph: connected components for
/// a disconnected graph, the apices and the rest when apices exist, and the
/// modules of the clique partition otherwise.
pub fn vertex_partition(g: &Graph) -> Result<VertexPartition, IntervalError> {
    let n = g.len();
    if n <= 1 {
        return Ok(VertexPartition::from_classes(
            n,
            (0..n).map(|v| vec![v]).collect(),
        ));
    }
    if !g.is_connected() {
        return Ok(VertexPartition::from_classes(n, g.components()));
    }
    let apices = g.apices();
    if !apices.is_empty() {
        let mut classes: Vec<Vec<usize>> = apices.iter().map(|&a| vec![a]).collect();
        let rest: Vec<usize> = (0..n).filter(|v| !apices.contains(v)).collect();
        if !rest.is_empty() {
            classes.push(rest);
        }
        return Ok(VertexPartition::from_classes(n, classes));
    }
    Ok(modular_partition(g, &max_cliques(g))?.partition)
}

/// The graph `L_G` obtained by collapsing every module of `W_G`.
pub fn l_graph(g: &Graph) -> Result<(Graph, VertexPartition), IntervalError> {
    let partition = vertex_partition(g)?;
    let l = g.quotient(&partition.class_of, partition.classes.len());
    Ok((l, partition))
}

/// A pair `(M, n)` of the set `P` with its vertex set `V_{M,n}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PEntry {
    pub clique: usize,
    pub n: usize,
    pub vertices: Vec<usize>,
}

/// `V_{M,n}`: the component of the vertices of span at most `n` that meets
/// `M`, or the empty set.
pub fn v_set(
    g: &Graph,
    cliques: &[MaxClique],
    span: &[usize],
    clique: usize,
    n: usize,
) -> Vec<usize> {
    let low: Vec<usize> = (0..g.len()).filter(|&v| span[v] <= n).collect();
    let Some(&seed) = cliques[clique].vertices.iter().find(|&&v| span[v] <= n) else {
        return Vec::new();
    };
    g.components_within(&low)
        .into_iter()
        .find(|c| c.binary_search(&seed).is_ok())
        .expect("the seed lies in some component")
}

/// The pairs `(M, n)` whose sets `V_{M,n}` are the connected components of
/// decomposition modules, selected by the two defining properties.
pub fn decomposition_components(g: &Graph) -> Result<Vec<PEntry>, IntervalError> {
    let n = g.len();
    let cliques = max_cliques(g);
    let span = spans(&cliques, n);
    let mut partitions: HashMap<Vec<usize>, VertexPartition> = HashMap::new();
    let mut out = Vec::new();
    for m in 0..cliques.len() {
        let sets: Vec<Vec<usize>> = (0..=n).map(|k| v_set(g, &cliques, &span, m, k)).collect();
        for k in 1..=n {
            let here = &sets[k];
            if here.is_empty() || (k < n && sets[k + 1] == *here) {
                continue;
            }
            let mut keep = true;
            for bigger in sets.iter().skip(k + 1) {
                if !g.is_module(bigger) {
                    continue;
                }
                let sub = g.induced(bigger);
                let local: Vec<usize> = here
                    .iter()
                    .map(|v| bigger.binary_search(v).expect("V_{M,n} grows with n"))
                    .collect();
                if !partitions.contains_key(bigger) {
                    partitions.insert(bigger.clone(), vertex_partition(&sub)?);
                }
                let partition = &partitions[bigger];
                let inside_class = partition
                    .modules()
                    .iter()
                    .any(|c| local.iter().all(|v| c.binary_search(v).is_ok()));
                let outer_apex = sub.apices().iter().any(|a| !local.contains(a));
                if !inside_class && !outer_apex {
                    keep = false;
                    break;
                }
            }
            if keep {
                out.push(PEntry {
                    clique: m,
                    n: k,
                    vertices: here.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// The distinct vertex sets of the entries of `P`.
pub fn decomposition_sets(entries: &[PEntry]) -> BTreeSet<Vec<usize>> {
    entries.iter().map(|e| e.vertices.clone()).collect()
}
