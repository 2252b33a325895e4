//! Free variables and renaming of free occurrences.

use std::collections::{BTreeSet, HashMap};

use super::ast::{Dtc, Formula, Recursion, Variable};

fn minus(mut set: BTreeSet<Variable>, bound: &[&[Variable]]) -> BTreeSet<Variable> {
    for t in bound {
        for v in t.iter() {
            set.remove(v);
        }
    }
    set
}

/// The free variables of `f`.
///
/// For recursion operators the bound tuples are removed per subformula:
/// `u, v` from the edge and equivalence formulae, `u, p` from the label
/// formula; `w` and `r` occur free.
pub fn free_variables(f: &Formula) -> BTreeSet<Variable> {
    match f {
        Formula::Atom { args, .. } => args.iter().cloned().collect(),
        Formula::Eq(a, b) | Formula::Leq(a, b) => [a.clone(), b.clone()].into_iter().collect(),
        Formula::Not(a) => free_variables(a),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let mut s = free_variables(a);
            s.extend(free_variables(b));
            s
        }
        Formula::Exists(v, a) | Formula::Forall(v, a) => {
            let mut s = free_variables(a);
            s.remove(v);
            s
        }
        Formula::Count { vars, body, number } => {
            let mut s = minus(free_variables(body), &[vars]);
            s.extend(number.iter().cloned());
            s
        }
        Formula::Lrec(r) => {
            let mut s = minus(free_variables(&r.edge), &[&r.u, &r.v]);
            if let Some(eq) = &r.equivalence {
                s.extend(minus(free_variables(eq), &[&r.u, &r.v]));
            }
            s.extend(minus(free_variables(&r.label), &[&r.u, &r.p]));
            s.extend(r.w.iter().cloned());
            s.extend(r.r.iter().cloned());
            s
        }
        Formula::Dtc(d) => {
            let mut s = minus(free_variables(&d.body), &[&d.u, &d.v]);
            s.extend(d.s.iter().cloned());
            s.extend(d.t.iter().cloned());
            s
        }
    }
}

fn rename_tuple(t: &[Variable], map: &HashMap<Variable, Variable>) -> Vec<Variable> {
    t.iter()
        .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
        .collect()
}

fn without(
    map: &HashMap<Variable, Variable>,
    bound: &[&[Variable]],
) -> HashMap<Variable, Variable> {
    let mut m = map.clone();
    for t in bound {
        for v in t.iter() {
            m.remove(v);
        }
    }
    m
}

/// Replaces free occurrences according to `map`.
///
/// Targets must not occur in `f` at all; this keeps the substitution free of
/// capture without renaming binders.
pub fn rename_free(f: &Formula, map: &HashMap<Variable, Variable>) -> Formula {
    if map.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Atom { relation, args } => Formula::Atom {
            relation: relation.clone(),
            args: rename_tuple(args, map),
        },
        Formula::Eq(a, b) => {
            let t = rename_tuple(&[a.clone(), b.clone()], map);
            Formula::Eq(t[0].clone(), t[1].clone())
        }
        Formula::Leq(a, b) => {
            let t = rename_tuple(&[a.clone(), b.clone()], map);
            Formula::Leq(t[0].clone(), t[1].clone())
        }
        Formula::Not(a) => Formula::not(rename_free(a, map)),
        Formula::And(a, b) => Formula::and(rename_free(a, map), rename_free(b, map)),
        Formula::Or(a, b) => Formula::or(rename_free(a, map), rename_free(b, map)),
        Formula::Exists(v, a) => Formula::exists(
            v.clone(),
            rename_free(a, &without(map, &[std::slice::from_ref(v)])),
        ),
        Formula::Forall(v, a) => Formula::forall(
            v.clone(),
            rename_free(a, &without(map, &[std::slice::from_ref(v)])),
        ),
        Formula::Count { vars, body, number } => Formula::Count {
            vars: vars.clone(),
            body: Box::new(rename_free(body, &without(map, &[vars]))),
            number: rename_tuple(number, map),
        },
        Formula::Lrec(r) => {
            let uv = without(map, &[&r.u, &r.v]);
            Formula::Lrec(Box::new(Recursion {
                u: r.u.clone(),
                v: r.v.clone(),
                p: r.p.clone(),
                equivalence: r.equivalence.as_ref().map(|e| rename_free(e, &uv)),
                edge: rename_free(&r.edge, &uv),
                label: rename_free(&r.label, &without(map, &[&r.u, &r.p])),
                w: rename_tuple(&r.w, map),
                r: rename_tuple(&r.r, map),
            }))
        }
        Formula::Dtc(d) => Formula::Dtc(Box::new(Dtc {
            u: d.u.clone(),
            v: d.v.clone(),
            body: rename_free(&d.body, &without(map, &[&d.u, &d.v])),
            s: rename_tuple(&d.s, map),
            t: rename_tuple(&d.t, map),
        })),
    }
}
