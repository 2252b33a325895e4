//! Formula syntax: the tree, the concrete grammar, free variables and the
//! expansion of the `dtc` abbreviation into `lrec`.

mod ast;
mod dtc;
mod free;
mod parser;
mod printer;

use thiserror::Error;

pub use ast::{Dtc, Formula, Recursion, Sort, Variable};
pub use dtc::expand_dtc;
pub use free::{free_variables, rename_free};
pub use parser::{is_identifier, parse_formula};

/// Errors raised by the parser and the well-formedness check.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SyntaxError {
    #[error("{line}:{column}: {message}")]
    At {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ill-formed formula: {0}")]
    IllFormed(String),
}

impl SyntaxError {
    pub(crate) fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        SyntaxError::At {
            line,
            column,
            message: message.into(),
        }
    }
}

fn compatible(a: &[Variable], b: &[Variable]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.sort == y.sort)
}

fn show(t: &[Variable]) -> String {
    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn check_recursion(r: &Recursion) -> Result<(), String> {
    if r.u.is_empty() {
        return Err("recursion tuples must be non-empty".into());
    }
    if !compatible(&r.u, &r.v) || !compatible(&r.u, &r.w) {
        return Err(format!(
            "incompatible tuples {}, {} and {}: lengths and sorts must agree",
            show(&r.u),
            show(&r.v),
            show(&r.w)
        ));
    }
    for (what, t) in [("label", &r.p), ("resource", &r.r)] {
        if t.is_empty() || t.iter().any(|v| v.sort != Sort::Number) {
            return Err(format!(
                "{what} tuple {} must be a non-empty tuple of number variables",
                show(t)
            ));
        }
    }
    Ok(())
}

pub(crate) fn check_dtc(d: &Dtc) -> Result<(), String> {
    if d.u.is_empty() {
        return Err("dtc tuples must be non-empty".into());
    }
    if !compatible(&d.u, &d.v) || !compatible(&d.u, &d.s) || !compatible(&d.u, &d.t) {
        return Err(format!(
            "incompatible dtc tuples {}, {}, {}, {}",
            show(&d.u),
            show(&d.v),
            show(&d.s),
            show(&d.t)
        ));
    }
    Ok(())
}

/// Checks sorts and tuple shapes of a tree built programmatically.
pub fn check_well_formed(f: &Formula) -> Result<(), SyntaxError> {
    let mut result = Ok(());
    f.visit(&mut |g| {
        if result.is_err() {
            return;
        }
        let problem = match g {
            Formula::Atom { relation, args } => {
                if !is_identifier(relation) {
                    Some(format!("`{relation}` is not a valid relation name"))
                } else if args.iter().any(|v| v.sort != Sort::Element) {
                    Some(format!(
                        "arguments of `{relation}` must be structure variables"
                    ))
                } else {
                    None
                }
            }
            Formula::Eq(a, b) if a.sort != b.sort => {
                Some(format!("sort clash between `{a}` and `{b}`"))
            }
            Formula::Leq(a, b) if a.sort != Sort::Number || b.sort != Sort::Number => {
                Some(format!("`{a} <= {b}` needs number variables"))
            }
            Formula::Count { vars, number, .. } => {
                if vars.is_empty() || number.is_empty() {
                    Some("count needs non-empty tuples".into())
                } else if number.iter().any(|v| v.sort != Sort::Number) {
                    Some("count must be compared with number variables".into())
                } else {
                    None
                }
            }
            Formula::Lrec(r) => check_recursion(r).err(),
            Formula::Dtc(d) => check_dtc(d).err(),
            _ => None,
        };
        if let Some(p) = problem {
            result = Err(SyntaxError::IllFormed(p));
        }
    });
    if result.is_ok() {
        if let Some(v) = f.all_variables().iter().find(|v| !is_identifier(&v.name)) {
            return Err(SyntaxError::IllFormed(format!(
                "`{}` is not a valid variable name",
                v.name
            )));
        }
    }
    result
}
