//! Evaluation of Boolean circuits with the path property through `lrec`.

use thiserror::Error;

use crate::evaluator::{eval, Assignment, EvalError};
use crate::structures::{Structure, Value};
use crate::syntax::{parse_formula, Variable};

/// "Gate `z` evaluates to 1", for circuits with the `|C|`-path property.
pub const CIRCUIT_FORMULA: &str = "exists #r1 exists #r2 (
    [lrec x, y, #p : E(x, y) ;
        (Pand(x) and count(y; E(x, y)) = #p)
        or (Por(x) and #p > 0)
        or (Pnot(x) and #p = 0)
        or P1(x)
    ](z, (#r1, #r2))
    and forall #r (#r <= #r1 and #r <= #r2))";

/// Reasons for rejecting a circuit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("the circuit is not over E, Pand, Por, Pnot, P0, P1: {0}")]
    Vocabulary(String),
    #[error("the circuit has a cycle through gate {0}")]
    Cycle(usize),
    #[error("the circuit has {0} output gates, expected one")]
    Outputs(usize),
    #[error("path {path:?} has in-degree product {product}, more than {limit}")]
    PathProperty {
        path: Vec<usize>,
        product: u128,
        limit: usize,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn check_vocabulary(c: &Structure) -> Result<(), CircuitError> {
    for (name, arity) in [
        ("E", 2),
        ("Pand", 1),
        ("Por", 1),
        ("Pnot", 1),
        ("P0", 1),
        ("P1", 1),
    ] {
        if c.vocabulary().arity(name) != Some(arity) {
            return Err(CircuitError::Vocabulary(format!("missing {name}/{arity}")));
        }
    }
    Ok(())
}

/// The unique gate without incoming edges.
pub fn output_gate(c: &Structure) -> Result<usize, CircuitError> {
    check_vocabulary(c)?;
    let mut indeg = vec![0usize; c.universe_size()];
    for e in c
        .tuples("E")
        .map_err(|e| CircuitError::Vocabulary(e.to_string()))?
    {
        indeg[e[1]] += 1;
    }
    let outputs: Vec<usize> = (0..indeg.len()).filter(|&g| indeg[g] == 0).collect();
    match outputs.as_slice() {
        [g] => Ok(*g),
        _ => Err(CircuitError::Outputs(outputs.len())),
    }
}

/// Checks that the circuit is acyclic and that the in-degrees of all but
/// the first gate of every path multiply to at most `|C|`.
///
/// Returns the largest product.
pub fn path_property(c: &Structure) -> Result<u128, CircuitError> {
    check_vocabulary(c)?;
    let n = c.universe_size();
    let adj = c
        .adjacency("E")
        .map_err(|e| CircuitError::Vocabulary(e.to_string()))?;
    let mut indeg = vec![0u128; n];
    for succ in &adj {
        for &b in succ {
            indeg[b] += 1;
        }
    }
    // best[v]: largest product over paths starting at v, and the next gate.
    let mut best: Vec<Option<(u128, Option<usize>)>> = vec![None; n];
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let b = adj[v][*i];
                *i += 1;
                match state[b] {
                    0 => {
                        state[b] = 1;
                        stack.push((b, 0));
                    }
                    1 => return Err(CircuitError::Cycle(b)),
                    _ => {}
                }
                continue;
            }
            let mut top = (1u128, None);
            for &b in &adj[v] {
                let (p, _) = best[b].expect("successor finished");
                let q = p.saturating_mul(indeg[b]);
                if q > top.0 {
                    top = (q, Some(b));
                }
            }
            best[v] = Some(top);
            state[v] = 2;
            stack.pop();
        }
    }
    let (start, (product, _)) = best
        .iter()
        .enumerate()
        .map(|(v, b)| (v, b.expect("all gates finished")))
        .max_by_key(|(v, (p, _))| (*p, std::cmp::Reverse(*v)))
        .expect("circuits are non-empty");
    if product > n as u128 {
        let mut path = vec![start];
        let mut cur = start;
        while let Some((_, Some(next))) = best[cur] {
            path.push(next);
            cur = next;
        }
        return Err(CircuitError::PathProperty {
            path,
            product,
            limit: n,
        });
    }
    Ok(product)
}

/// Value of the output gate, decided by the circuit formula.
pub fn circuit_value(c: &Structure) -> Result<bool, CircuitError> {
    path_property(c)?;
    let out = output_gate(c)?;
    let formula = parse_formula(CIRCUIT_FORMULA).expect("the circuit formula parses");
    let alpha = Assignment::new().with(Variable::element("z"), Value::Element(out));
    Ok(eval(c, &alpha, &formula)?)
}
