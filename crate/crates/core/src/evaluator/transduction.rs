//! Application of transductions to structures.

use std::collections::BTreeMap;

use super::program::{Assignment, Domain, EvalOptions, Program};
use super::EvalError;
use crate::structures::{Structure, UnionFind, Value, Vocabulary};
use crate::syntax::{Formula, Sort, Variable};

/// A definition of one target relation: `R(x1, ..., xk) :<=> formula`, each
/// `xi` a tuple compatible with the universe tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetRelation {
    pub name: String,
    pub args: Vec<Vec<Variable>>,
    pub formula: Formula,
}

/// An interpretation of target structures in source structures.
///
/// Target elements are the classes of the tuples `u` satisfying `universe`
/// under the equivalence generated by `equivalence(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transduction {
    pub u: Vec<Variable>,
    pub v: Vec<Variable>,
    pub universe: Formula,
    pub equivalence: Formula,
    pub relations: Vec<TargetRelation>,
}

impl Transduction {
    /// Starts a transduction over `u` with equivalence variables `v`.
    pub fn new(
        u: Vec<Variable>,
        v: Vec<Variable>,
        universe: Formula,
        equivalence: Formula,
    ) -> Self {
        Self {
            u,
            v,
            universe,
            equivalence,
            relations: Vec::new(),
        }
    }

    /// Adds the definition of a target relation.
    pub fn relation(mut self, name: &str, args: Vec<Vec<Variable>>, formula: Formula) -> Self {
        self.relations.push(TargetRelation {
            name: name.to_string(),
            args,
            formula,
        });
        self
    }

    fn check(&self) -> Result<(), EvalError> {
        let shape: Vec<Sort> = self.u.iter().map(|x| x.sort).collect();
        let compatible = |t: &[Variable]| t.iter().map(|x| x.sort).eq(shape.iter().copied());
        if !compatible(&self.v) {
            return Err(EvalError::Transduction(
                "equivalence tuple is incompatible".into(),
            ));
        }
        for r in &self.relations {
            if r.args.is_empty() {
                return Err(EvalError::Transduction(format!(
                    "relation `{}` has no arguments",
                    r.name
                )));
            }
            if !r.args.iter().all(|t| compatible(t)) {
                return Err(EvalError::Transduction(format!(
                    "arguments of `{}` are incompatible with the universe tuple",
                    r.name
                )));
            }
        }
        Ok(())
    }
}

fn bind(alpha: &Assignment, vars: &[Variable], values: &[Value]) -> Assignment {
    let mut out = alpha.clone();
    for (x, &val) in vars.iter().zip(values) {
        out.bind(x.clone(), val);
    }
    out
}

/// Applies `theta` to `structure`; `alpha` binds the parameters.
///
/// Target elements are numbered in the lexicographic order of the least
/// universe tuple in each class.
pub fn apply_transduction(
    theta: &Transduction,
    structure: &Structure,
    alpha: &Assignment,
) -> Result<Structure, EvalError> {
    theta.check()?;
    let n = structure.universe_size();
    let sorts: Vec<Sort> = theta.u.iter().map(|x| x.sort).collect();
    let domain = Domain::new(&sorts, n)?;
    let options = EvalOptions::default();
    let universe = Program::compile(structure, &theta.universe, options.clone())?;
    let members: Vec<usize> = (0..domain.size())
        .filter_map(|id| {
            let a = bind(alpha, &theta.u, &domain.decode(id));
            match universe.eval(&a) {
                Ok(true) => Some(Ok(id)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<_, _>>()?;
    if members.is_empty() {
        return Err(EvalError::Transduction(
            "the universe formula is empty".into(),
        ));
    }

    let equivalence = Program::compile(structure, &theta.equivalence, options.clone())?;
    let mut uf = UnionFind::new(domain.size());
    for a in 0..domain.size() {
        let with_a = bind(alpha, &theta.u, &domain.decode(a));
        for b in 0..domain.size() {
            if equivalence.eval(&bind(&with_a, &theta.v, &domain.decode(b)))? {
                uf.union(a, b);
            }
        }
    }
    // Members are in increasing id order, so the first member of a class is
    // its least tuple.
    let mut class_number: BTreeMap<usize, usize> = BTreeMap::new();
    let mut element_of = Vec::with_capacity(members.len());
    for &id in &members {
        let root = uf.find(id);
        let next = class_number.len();
        element_of.push(*class_number.entry(root).or_insert(next));
    }

    let vocab = Vocabulary::new(
        theta
            .relations
            .iter()
            .map(|r| (r.name.clone(), r.args.len())),
    )
    .map_err(EvalError::Structure)?;
    let mut target = Structure::new(vocab, class_number.len()).map_err(EvalError::Structure)?;
    for r in &theta.relations {
        let program = Program::compile(structure, &r.formula, options.clone())?;
        let k = r.args.len();
        let mut pick = vec![0usize; k];
        loop {
            let mut a = alpha.clone();
            for (vars, &m) in r.args.iter().zip(&pick) {
                a = bind(&a, vars, &domain.decode(members[m]));
            }
            if program.eval(&a)? {
                let tuple = pick.iter().map(|&m| element_of[m]).collect();
                target
                    .add_tuple(&r.name, tuple)
                    .map_err(EvalError::Structure)?;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < members.len() {
                    break;
                }
                pick[i] = 0;
            }
            if pick.iter().all(|&m| m == 0) {
                break;
            }
        }
    }
    Ok(target)
}
