//! Finite relational structures and their two-sorted universe.
//!
//! A structure over a vocabulary has elements `0..n`. Number variables range
//! over the derived number sort `{0, ..., n}`, which is never stored.

mod encoding;
mod format;
mod generate;
mod quotient;
mod union_find;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

pub use encoding::{num_decode, num_encode};
pub use format::{parse_structure, write_structure};
pub use generate::{
    circuit_vocabulary, generate_layered_graph, random_circuit, random_interval_graph,
    random_tree_parents,
};
pub use quotient::{quotient_by_equivalence, Quotient};
pub use union_find::UnionFind;

/// Errors raised while building, reading or encoding structures.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum StructureError {
    #[error("duplicate relation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("relation symbol `{0}` must have arity at least 1")]
    ZeroArity(String),
    #[error("unknown relation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("tuple for `{symbol}` has length {found}, expected {expected}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("element {element} out of range for universe of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("number {value} out of range [0, {max}]")]
    NumberOutOfRange { value: usize, max: usize },
    #[error("encoded value does not fit into {width} digits of base {base}")]
    EncodingRange { width: usize, base: usize },
    #[error("equivalence classes are not a partition: {0}")]
    NotAPartition(String),
    #[error("edge endpoint {0} is not covered by any class")]
    UncoveredEndpoint(String),
    #[error("{0}")]
    Domain(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A finite set of relation symbols with arities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    symbols: Vec<(String, usize)>,
}

impl Vocabulary {
    /// Builds a vocabulary, rejecting duplicate names and nullary symbols.
    pub fn new<I, S>(symbols: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<(String, usize)> = Vec::new();
        for (name, arity) in symbols {
            let name = name.into();
            if arity == 0 {
                return Err(StructureError::ZeroArity(name));
            }
            if out.iter().any(|(n, _)| *n == name) {
                return Err(StructureError::DuplicateSymbol(name));
            }
            out.push((name, arity));
        }
        Ok(Self { symbols: out })
    }

    /// Arity of `name`, if the symbol exists.
    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| *a)
    }

    /// Symbols in declaration order.
    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }
}

/// A value bound to a variable: an element or a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Element(usize),
    Number(usize),
}

impl Value {
    /// The underlying index or number.
    pub fn raw(self) -> usize {
        match self {
            Value::Element(a) | Value::Number(a) => a,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Element(a) => write!(f, "{a}"),
            Value::Number(a) => write!(f, "#{a}"),
        }
    }
}

/// A finite relational structure with universe `0..n`.
#[derive(Clone, Debug)]
pub struct Structure {
    vocab: Vocabulary,
    size: usize,
    relations: Vec<HashSet<Vec<usize>>>,
    names: Option<Vec<String>>,
}

impl Structure {
    /// An empty structure of the given universe size.
    pub fn new(vocab: Vocabulary, size: usize) -> Result<Self, StructureError> {
        if size == 0 {
            return Err(StructureError::EmptyUniverse);
        }
        let relations = vec![HashSet::new(); vocab.symbols.len()];
        Ok(Self {
            vocab,
            size,
            relations,
            names: None,
        })
    }

    /// A directed graph over the vocabulary `{E/2}`.
    pub fn digraph(size: usize, edges: &[(usize, usize)]) -> Result<Self, StructureError> {
        let mut s = Self::new(Vocabulary::new([("E", 2)])?, size)?;
        for &(a, b) in edges {
            s.add_tuple("E", vec![a, b])?;
        }
        Ok(s)
    }

    /// A symmetric graph over `{E/2}`; every edge is stored in both directions.
    pub fn undirected(size: usize, edges: &[(usize, usize)]) -> Result<Self, StructureError> {
        let mut s = Self::new(Vocabulary::new([("E", 2)])?, size)?;
        for &(a, b) in edges {
            s.add_tuple("E", vec![a, b])?;
            s.add_tuple("E", vec![b, a])?;
        }
        Ok(s)
    }

    /// Attaches element names; their number must equal the universe size.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, StructureError> {
        if names.len() != self.size {
            return Err(StructureError::Domain(format!(
                "{} names given for {} elements",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Inserts a tuple into relation `symbol`.
    pub fn add_tuple(&mut self, symbol: &str, tuple: Vec<usize>) -> Result<(), StructureError> {
        let idx = self.symbol_index(symbol)?;
        let arity = self.vocab.symbols[idx].1;
        if tuple.len() != arity {
            return Err(StructureError::ArityMismatch {
                symbol: symbol.to_string(),
                expected: arity,
                found: tuple.len(),
            });
        }
        if let Some(&bad) = tuple.iter().find(|&&a| a >= self.size) {
            return Err(StructureError::ElementOutOfRange {
                element: bad,
                size: self.size,
            });
        }
        self.relations[idx].insert(tuple);
        Ok(())
    }

    /// Position of `symbol` in the vocabulary.
    pub fn symbol_index(&self, symbol: &str) -> Result<usize, StructureError> {
        self.vocab
            .symbols
            .iter()
            .position(|(n, _)| n == symbol)
            .ok_or_else(|| StructureError::UnknownSymbol(symbol.to_string()))
    }

    /// Membership test by symbol position.
    pub fn holds_at(&self, index: usize, tuple: &[usize]) -> bool {
        self.relations[index].contains(tuple)
    }

    /// Membership test by symbol name; unknown symbols hold nowhere.
    pub fn holds(&self, symbol: &str, tuple: &[usize]) -> bool {
        self.symbol_index(symbol)
            .map(|i| self.holds_at(i, tuple))
            .unwrap_or(false)
    }

    /// Number of elements `n`; the number sort is `{0, ..., n}`.
    pub fn universe_size(&self) -> usize {
        self.size
    }

    /// The vocabulary.
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    /// The tuples of `symbol` in lexicographic order.
    pub fn tuples(&self, symbol: &str) -> Result<Vec<Vec<usize>>, StructureError> {
        let idx = self.symbol_index(symbol)?;
        let mut out: Vec<Vec<usize>> = self.relations[idx].iter().cloned().collect();
        out.sort();
        Ok(out)
    }

    /// Element names, if attached.
    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of element `a`.
    pub fn element_name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    /// Resolves an element by name or by decimal index.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Some(i);
            }
        }
        name.parse::<usize>().ok().filter(|&i| i < self.size)
    }

    /// Out-neighbour lists of the binary relation `symbol`.
    pub fn adjacency(&self, symbol: &str) -> Result<Vec<Vec<usize>>, StructureError> {
        let mut adj = vec![Vec::new(); self.size];
        for t in self.tuples(symbol)? {
            if t.len() != 2 {
                return Err(StructureError::ArityMismatch {
                    symbol: symbol.to_string(),
                    expected: 2,
                    found: t.len(),
                });
            }
            adj[t[0]].push(t[1]);
        }
        Ok(adj)
    }
}

/// Maps element names of a structure to indices; used by readers and tests.
pub fn name_index(structure: &Structure) -> HashMap<String, usize> {
    (0..structure.universe_size())
        .map(|a| (structure.element_name(a), a))
        .collect()
}

/// Relation contents keyed by symbol name, for deterministic comparisons.
pub fn relation_map(structure: &Structure) -> BTreeMap<String, Vec<Vec<usize>>> {
    structure
        .vocabulary()
        .symbols()
        .iter()
        .map(|(n, _)| (n.clone(), structure.tuples(n).unwrap_or_default()))
        .collect()
}
