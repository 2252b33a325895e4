//! Expansion of `[dtc u,v : psi](s, t)` into a recursion operator.
//!
//! The abbreviation stands for
//! `exists r [lrec v,u,p : edge ; label](t, r)` with
//! `edge := psi(u,v) and forall v' (not psi(u,v') or v' = v)` and
//! `label := v = s or (not v = s and p != 0)`,
//! where `r` and `p` are fresh number tuples of length `|u|`.

use std::collections::{HashMap, HashSet};

use super::ast::{Dtc, Formula, Recursion, Variable};
use super::free::rename_free;
use super::parser::is_zero;

struct Fresh {
    used: HashSet<String>,
    next: usize,
}

impl Fresh {
    fn var(&mut self, stem: &str, like: &Variable) -> Variable {
        loop {
            let name = format!("_{stem}{}", self.next);
            self.next += 1;
            if self.used.insert(name.clone()) {
                return Variable {
                    name,
                    sort: like.sort,
                };
            }
        }
    }

    fn number(&mut self, stem: &str) -> Variable {
        self.var(stem, &Variable::number(""))
    }
}

/// Rewrites every `dtc` node into its `lrec` definition.
pub fn expand_dtc(f: &Formula) -> Formula {
    if !f.contains_dtc() {
        return f.clone();
    }
    let mut fresh = Fresh {
        used: f.all_variables().into_iter().map(|v| v.name).collect(),
        next: 0,
    };
    expand(f, &mut fresh)
}

fn expand(f: &Formula, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Atom { .. } | Formula::Eq(..) | Formula::Leq(..) => f.clone(),
        Formula::Not(a) => Formula::not(expand(a, fresh)),
        Formula::And(a, b) => Formula::and(expand(a, fresh), expand(b, fresh)),
        Formula::Or(a, b) => Formula::or(expand(a, fresh), expand(b, fresh)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), expand(a, fresh)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), expand(a, fresh)),
        Formula::Count { vars, body, number } => Formula::Count {
            vars: vars.clone(),
            body: Box::new(expand(body, fresh)),
            number: number.clone(),
        },
        Formula::Lrec(r) => Formula::Lrec(Box::new(Recursion {
            u: r.u.clone(),
            v: r.v.clone(),
            p: r.p.clone(),
            equivalence: r.equivalence.as_ref().map(|e| expand(e, fresh)),
            edge: expand(&r.edge, fresh),
            label: expand(&r.label, fresh),
            w: r.w.clone(),
            r: r.r.clone(),
        })),
        Formula::Dtc(d) => expand_one(d, fresh),
    }
}

fn expand_one(d: &Dtc, fresh: &mut Fresh) -> Formula {
    let body = expand(&d.body, fresh);
    // Fresh copies of the bound tuples keep `s` and `t` from being captured.
    let u: Vec<Variable> = d.u.iter().map(|x| fresh.var("u", x)).collect();
    let v: Vec<Variable> = d.v.iter().map(|x| fresh.var("v", x)).collect();
    let v2: Vec<Variable> = d.v.iter().map(|x| fresh.var("w", x)).collect();
    let p: Vec<Variable> = d.u.iter().map(|_| fresh.number("p")).collect();
    let r: Vec<Variable> = d.u.iter().map(|_| fresh.number("r")).collect();

    let onto = |target: &[Variable]| -> HashMap<Variable, Variable> {
        d.u.iter()
            .cloned()
            .zip(u.iter().cloned())
            .chain(d.v.iter().cloned().zip(target.iter().cloned()))
            .collect()
    };
    let psi = rename_free(&body, &onto(&v));
    let psi_other = rename_free(&body, &onto(&v2));
    let unique = Formula::forall_all(
        &v2,
        Formula::or(Formula::not(psi_other), Formula::tuple_eq(&v2, &v)),
    );
    let edge = Formula::and(psi, unique);

    let at_source = Formula::tuple_eq(&v, &d.s);
    let nonzero = p
        .iter()
        .map(|pi| Formula::not(is_zero(pi, &fresh.number("q"))))
        .reduce(Formula::or)
        .expect("non-empty tuple");
    let label = Formula::or(
        at_source.clone(),
        Formula::and(Formula::not(at_source), nonzero),
    );

    let rec = Recursion {
        u: v,
        v: u,
        p,
        equivalence: None,
        edge,
        label,
        w: d.t.clone(),
        r: r.clone(),
    };
    Formula::exists_all(&r, Formula::Lrec(Box::new(rec)))
}
