//! Semantics of first-order logic with counting and the recursion operators.
//!
//! Formulae are compiled against a structure into a [`Program`], which owns
//! the per-operator caches. Recursion operators are decided either by the
//! memoised engine or by the streaming engine that walks the unravelling
//! under a counter budget.

mod graph;
mod memo;
mod program;
mod stream;
mod transduction;

use num_bigint::BigUint;
use thiserror::Error;

use crate::structures::{Structure, StructureError, Value};
use crate::syntax::{Formula, Recursion, SyntaxError, Variable};

pub use graph::{child_resource, LabelledGraph, RecursionGraph};
pub use memo::MemoEngine;
pub use program::{Assignment, Engine, EvalOptions, Program, QueryOutcome, StreamStats};
pub use stream::{stream_membership, StreamError, StreamReport, DEFAULT_NODE_LIMIT};
pub use transduction::{apply_transduction, TargetRelation, Transduction};

/// Errors raised during evaluation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("free variable {0} is not bound")]
    Unbound(Variable),
    #[error("value {value:?} is out of range or of the wrong sort for {variable}")]
    BadBinding { variable: Variable, value: Value },
    #[error("variable {0} has the wrong sort here")]
    Sort(Variable),
    #[error("unknown relation symbol `{0}`")]
    UnknownRelation(String),
    #[error("relation `{relation}` has arity {expected}, used with {found} arguments")]
    Arity {
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("tuple space of a recursion operator is too large")]
    DomainTooLarge,
    #[error("formula is not a recursion operator")]
    NotARecursion,
    #[error("query vertex does not belong to the tuple space of the operator")]
    BadVertex,
    #[error("ill-formed formula: {0}")]
    Syntax(SyntaxError),
    #[error(transparent)]
    Structure(StructureError),
    #[error(transparent)]
    Stream(StreamError),
    #[error("engines disagree: memoised {memo}, streaming {stream}")]
    EngineDisagreement { memo: bool, stream: bool },
    #[error("transduction undefined: {0}")]
    Transduction(String),
}

/// Decides `(A, alpha) |= phi` with the default options.
pub fn eval(structure: &Structure, alpha: &Assignment, phi: &Formula) -> Result<bool, EvalError> {
    Program::compile(structure, phi, EvalOptions::default())?.eval(alpha)
}

/// Decides `phi` with the given engine.
pub fn eval_with(
    structure: &Structure,
    alpha: &Assignment,
    phi: &Formula,
    engine: Engine,
) -> Result<bool, EvalError> {
    let options = EvalOptions {
        engine,
        ..EvalOptions::default()
    };
    Program::compile(structure, phi, options)?.eval(alpha)
}

fn query(
    structure: &Structure,
    alpha: &Assignment,
    rec: &Recursion,
    vertex: &[Value],
    resource: &BigUint,
    engine: Engine,
) -> Result<QueryOutcome, EvalError> {
    let options = EvalOptions {
        engine,
        ..EvalOptions::default()
    };
    let formula = Formula::Lrec(Box::new(rec.clone()));
    Program::compile(structure, &formula, options)?.recursion_query(alpha, vertex, resource)
}

/// Decides `(vertex, resource) in X` for `rec` with the memoised engine.
///
/// `alpha` binds the free variables of the edge and label formulae. For an
/// operator with an equivalence, `vertex` names its class.
pub fn lrec_membership(
    structure: &Structure,
    alpha: &Assignment,
    rec: &Recursion,
    vertex: &[Value],
    resource: &BigUint,
) -> Result<bool, EvalError> {
    Ok(query(structure, alpha, rec, vertex, resource, Engine::Memo)?.verdict)
}

/// Decides `(vertex, resource) in X` by walking the unravelling.
pub fn lrec_membership_streaming(
    structure: &Structure,
    alpha: &Assignment,
    rec: &Recursion,
    vertex: &[Value],
    resource: &BigUint,
) -> Result<StreamReport, EvalError> {
    let outcome = query(structure, alpha, rec, vertex, resource, Engine::Stream)?;
    Ok(outcome.stream.expect("streaming engine ran"))
}

/// Decides membership for an operator with an equivalence, on the quotient.
pub fn lrec_eq_membership(
    structure: &Structure,
    alpha: &Assignment,
    rec: &Recursion,
    vertex: &[Value],
    resource: &BigUint,
) -> Result<bool, EvalError> {
    if rec.equivalence.is_none() {
        return Err(EvalError::NotARecursion);
    }
    lrec_membership(structure, alpha, rec, vertex, resource)
}
