//! Quotients of edge relations by a partition of their vertex set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use super::StructureError;

/// A quotiented vertex set with its induced edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<T: Ord> {
    /// Lexicographically least member of each class, in increasing order.
    pub representatives: Vec<T>,
    /// Class index of every covered vertex.
    pub class_of: BTreeMap<T, usize>,
    /// Edges between class indices; self-loops are kept.
    pub edges: BTreeSet<(usize, usize)>,
}

/// Quotients `edges` by `classes`. Classes are indexed by their least member.
pub fn quotient_by_equivalence<T>(
    classes: &[Vec<T>],
    edges: &[(T, T)],
) -> Result<Quotient<T>, StructureError>
where
    T: Ord + Clone + Debug,
{
    let mut ordered: Vec<(T, &Vec<T>)> = Vec::with_capacity(classes.len());
    for class in classes {
        let min = class
            .iter()
            .min()
            .ok_or_else(|| StructureError::NotAPartition("empty class".into()))?;
        ordered.push((min.clone(), class));
    }
    ordered.sort_by(|a, b| a.0.cmp(&b.0));
    let mut class_of = BTreeMap::new();
    for (idx, (_, class)) in ordered.iter().enumerate() {
        for member in class.iter() {
            if class_of.insert(member.clone(), idx).is_some() {
                return Err(StructureError::NotAPartition(format!(
                    "{member:?} occurs in two classes"
                )));
            }
        }
    }
    let mut out = BTreeSet::new();
    for (a, b) in edges {
        let ca = class_of
            .get(a)
            .ok_or_else(|| StructureError::UncoveredEndpoint(format!("{a:?}")))?;
        let cb = class_of
            .get(b)
            .ok_or_else(|| StructureError::UncoveredEndpoint(format!("{b:?}")))?;
        out.insert((*ca, *cb));
    }
    Ok(Quotient {
        representatives: ordered.into_iter().map(|(m, _)| m).collect(),
        class_of,
        edges: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_partition_is_identity() {
        let q = quotient_by_equivalence(&[vec!['a'], vec!['b']], &[('a', 'b')]).unwrap();
        assert_eq!(q.representatives, vec!['a', 'b']);
        assert_eq!(q.edges, BTreeSet::from([(0, 1)]));
    }

    #[test]
    fn merged_pair_gives_loop() {
        let q = quotient_by_equivalence(&[vec!['b', 'a']], &[('a', 'b')]).unwrap();
        assert_eq!(q.representatives, vec!['a']);
        assert_eq!(q.edges, BTreeSet::from([(0, 0)]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(quotient_by_equivalence(&[vec![1], vec![1, 2]], &[]).is_err());
        assert!(quotient_by_equivalence(&[vec![1]], &[(1, 3)]).is_err());
    }
}
