//! Formula syntax trees.

use std::fmt;

/// The two sorts of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    /// Ranges over the universe of the structure.
    Element,
    /// Ranges over the number sort `{0, ..., n}`.
    Number,
}

/// A sorted variable. Number variables print with a leading `#`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub name: String,
    pub sort: Sort,
}

impl Variable {
    pub fn element(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            sort: Sort::Element,
        }
    }

    pub fn number(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            sort: Sort::Number,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sort {
            Sort::Element => write!(f, "{}", self.name),
            Sort::Number => write!(f, "#{}", self.name),
        }
    }
}

/// A recursion operator `[lrec u,v,p : edge ; label](w, r)`, or its
/// quotienting variant `lreceq` when `equivalence` is present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recursion {
    pub u: Vec<Variable>,
    pub v: Vec<Variable>,
    pub p: Vec<Variable>,
    pub equivalence: Option<Formula>,
    pub edge: Formula,
    pub label: Formula,
    pub w: Vec<Variable>,
    pub r: Vec<Variable>,
}

/// The deterministic transitive closure abbreviation `[dtc u,v : body](s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dtc {
    pub u: Vec<Variable>,
    pub v: Vec<Variable>,
    pub body: Formula,
    pub s: Vec<Variable>,
    pub t: Vec<Variable>,
}

/// Formulae of first-order logic with counting, `lrec`, `lrec=` and `dtc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom {
        relation: String,
        args: Vec<Variable>,
    },
    Eq(Variable, Variable),
    Leq(Variable, Variable),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Variable, Box<Formula>),
    Forall(Variable, Box<Formula>),
    /// `count(vars; body) = number`: the number of `vars` tuples satisfying
    /// `body` equals the encoding of `number`.
    Count {
        vars: Vec<Variable>,
        body: Box<Formula>,
        number: Vec<Variable>,
    },
    Lrec(Box<Recursion>),
    Dtc(Box<Dtc>),
}

impl Formula {
    pub fn atom(relation: &str, args: &[Variable]) -> Self {
        Formula::Atom {
            relation: relation.to_string(),
            args: args.to_vec(),
        }
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Variable, f: Formula) -> Self {
        Formula::Exists(v, Box::new(f))
    }

    pub fn forall(v: Variable, f: Formula) -> Self {
        Formula::Forall(v, Box::new(f))
    }

    /// Nested existential quantification, outermost first.
    pub fn exists_all(vars: &[Variable], f: Formula) -> Self {
        vars.iter()
            .rev()
            .fold(f, |acc, v| Formula::exists(v.clone(), acc))
    }

    /// Nested universal quantification, outermost first.
    pub fn forall_all(vars: &[Variable], f: Formula) -> Self {
        vars.iter()
            .rev()
            .fold(f, |acc, v| Formula::forall(v.clone(), acc))
    }

    /// Conjunction of component-wise equalities; the tuples must be non-empty.
    pub fn tuple_eq(a: &[Variable], b: &[Variable]) -> Self {
        let mut parts = a
            .iter()
            .zip(b)
            .map(|(x, y)| Formula::Eq(x.clone(), y.clone()));
        let first = parts.next().expect("non-empty tuple");
        parts.fold(first, Formula::and)
    }

    /// Whether any `dtc` node occurs.
    pub fn contains_dtc(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Dtc(_)));
        found
    }

    /// Pre-order traversal over all subformulae.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Atom { .. } | Formula::Eq(..) | Formula::Leq(..) => {}
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Count { body, .. } => body.visit(f),
            Formula::Lrec(r) => {
                if let Some(eq) = &r.equivalence {
                    eq.visit(f);
                }
                r.edge.visit(f);
                r.label.visit(f);
            }
            Formula::Dtc(d) => d.body.visit(f),
        }
    }

    /// Every variable occurring anywhere, bound or free.
    pub fn all_variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.visit(&mut |f| match f {
            Formula::Atom { args, .. } => out.extend(args.iter().cloned()),
            Formula::Eq(a, b) | Formula::Leq(a, b) => {
                out.push(a.clone());
                out.push(b.clone());
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => out.push(v.clone()),
            Formula::Count { vars, number, .. } => {
                out.extend(vars.iter().cloned());
                out.extend(number.iter().cloned());
            }
            Formula::Lrec(r) => {
                for t in [&r.u, &r.v, &r.p, &r.w, &r.r] {
                    out.extend(t.iter().cloned());
                }
            }
            Formula::Dtc(d) => {
                for t in [&d.u, &d.v, &d.s, &d.t] {
                    out.extend(t.iter().cloned());
                }
            }
            _ => {}
        });
        out
    }
}
