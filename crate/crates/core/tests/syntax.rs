use std::collections::BTreeSet;

use lrec::syntax::{
    check_well_formed, expand_dtc, free_variables, parse_formula, Formula, Recursion, Sort,
    SyntaxError, Variable,
};
use proptest::prelude::*;

const CIRCUIT: &str = "exists #r1 exists #r2 (
    [lrec x, y, #p : E(x, y) ;
        (Pand(x) and count(y; E(x, y)) = #p)
        or (Por(x) and #p > 0)
        or (Pnot(x) and #p = 0)
        or P1(x)
    ](z, (#r1, #r2))
    and forall #r (#r <= #r1 and #r <= #r2))";

fn el(n: &str) -> Variable {
    Variable::element(n)
}

fn num(n: &str) -> Variable {
    Variable::number(n)
}

#[test]
fn parses_atom() {
    assert_eq!(
        parse_formula("E(x,y)").unwrap(),
        Formula::atom("E", &[el("x"), el("y")])
    );
}

#[test]
fn parses_circuit_formula() {
    let f = parse_formula(CIRCUIT).unwrap();
    let Formula::Exists(r1, inner) = &f else {
        panic!("expected existential, got {f}")
    };
    let Formula::Exists(r2, body) = inner.as_ref() else {
        panic!("expected second existential")
    };
    assert_eq!((r1, r2), (&num("r1"), &num("r2")));
    let Formula::And(rec, _) = body.as_ref() else {
        panic!("expected conjunction")
    };
    let Formula::Lrec(rec) = rec.as_ref() else {
        panic!("expected lrec")
    };
    assert_eq!(rec.r, vec![num("r1"), num("r2")]);
    assert_eq!(free_variables(&f), BTreeSet::from([el("z")]));
}

#[test]
fn rejects_incompatible_tuples() {
    let err = parse_formula("[lrec (x, y), z, #p : E(x, z) ; #p = #p](w, #r)").unwrap_err();
    match err {
        SyntaxError::At {
            line,
            column,
            message,
        } => {
            assert_eq!((line, column), (1, 1));
            assert!(message.contains("incompatible"), "{message}");
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn rejects_sort_clashes_with_position() {
    let err = parse_formula("E(x, y) and\n  x = #p").unwrap_err();
    assert!(
        matches!(
            err,
            SyntaxError::At {
                line: 2,
                column: 3,
                ..
            }
        ),
        "{err:?}"
    );
    assert!(parse_formula("E(#p)").is_err());
    assert!(parse_formula("x <= y").is_err());
    assert!(parse_formula("count(x; E(x,x)) = y").is_err());
    assert!(parse_formula("#p = 2").is_err());
    assert!(parse_formula("E(x,y) and").is_err());
}

#[test]
fn free_variable_examples() {
    let f = parse_formula("#p <= #q").unwrap();
    assert_eq!(free_variables(&f), BTreeSet::from([num("p"), num("q")]));
    let closed = parse_formula("forall x exists y (E(x,y) or x = y)").unwrap();
    assert!(free_variables(&closed).is_empty());
    let f = parse_formula("[lreceq x, y, #p : E(x,y) ; E(x,z) ; x = t](s, #r)").unwrap();
    assert_eq!(
        free_variables(&f),
        BTreeSet::from([el("z"), el("t"), el("s"), num("r")])
    );
}

#[test]
fn dtc_free_variables_after_binding_resources() {
    let f = parse_formula("[dtc x, y : (E(x, y) and not P(z))](s, t)").unwrap();
    let expanded = expand_dtc(&f);
    let expected = BTreeSet::from([el("s"), el("t"), el("z")]);
    assert_eq!(free_variables(&f), expected);
    assert_eq!(free_variables(&expanded), expected);
    let Formula::Exists(_, rec) = &expanded else {
        panic!("expected bound resource")
    };
    assert!(matches!(rec.as_ref(), Formula::Lrec(_)));
}

#[test]
fn dtc_does_not_capture_endpoints() {
    let f = parse_formula("[dtc x, y : E(x, y)](y, x)").unwrap();
    let g = expand_dtc(&f);
    assert_eq!(free_variables(&g), BTreeSet::from([el("x"), el("y")]));
}

#[test]
fn formula_without_dtc_is_unchanged() {
    let f = parse_formula(CIRCUIT).unwrap();
    assert_eq!(expand_dtc(&f), f);
}

#[test]
fn sugar_lowers_to_core() {
    let f = parse_formula("P(x) -> Q(x)").unwrap();
    assert_eq!(
        f,
        Formula::or(
            Formula::not(Formula::atom("P", &[el("x")])),
            Formula::atom("Q", &[el("x")])
        )
    );
    let f = parse_formula("x != y").unwrap();
    assert_eq!(f, Formula::not(Formula::Eq(el("x"), el("y"))));
    let f = parse_formula("exists (x, y) E(x, y)").unwrap();
    assert_eq!(
        f,
        Formula::exists(
            el("x"),
            Formula::exists(el("y"), Formula::atom("E", &[el("x"), el("y")]))
        )
    );
}

#[test]
fn literals_become_bound_fresh_variables() {
    let f = parse_formula("#p = 0 and #_c0 = #p").unwrap();
    let fv = free_variables(&f);
    assert_eq!(fv, BTreeSet::from([num("p"), num("_c0")]));
    // The fresh name must avoid `_c0`, which the user already took.
    let printed = f.to_string();
    assert!(printed.contains("#_c1"), "{printed}");
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z", "a_1", "b'"]).prop_map(String::from)
}

fn var(sort: Sort) -> impl Strategy<Value = Variable> {
    name().prop_map(move |name| Variable { name, sort })
}

fn any_var() -> impl Strategy<Value = Variable> {
    prop_oneof![var(Sort::Element), var(Sort::Number)]
}

fn tuple_like(shape: Vec<Sort>) -> impl Strategy<Value = Vec<Variable>> {
    shape.into_iter().map(var).collect::<Vec<_>>()
}

fn sorts(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Sort>> {
    prop::collection::vec(prop_oneof![Just(Sort::Element), Just(Sort::Number)], len)
}

fn numbers(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Variable>> {
    prop::collection::vec(var(Sort::Number), len)
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (
            prop::sample::select(vec!["E", "P", "R_2"]),
            prop::collection::vec(var(Sort::Element), 1..3)
        )
            .prop_map(|(r, args)| Formula::atom(r, &args)),
        any_var().prop_flat_map(|a| {
            let s = a.sort;
            (Just(a), var(s)).prop_map(|(a, b)| Formula::Eq(a, b))
        }),
        (var(Sort::Number), var(Sort::Number)).prop_map(|(a, b)| Formula::Leq(a, b)),
    ];
    leaf.prop_recursive(4, 40, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (any_var(), inner.clone()).prop_map(|(v, a)| Formula::exists(v, a)),
            (any_var(), inner.clone()).prop_map(|(v, a)| Formula::forall(v, a)),
            (
                prop::collection::vec(any_var(), 1..3),
                inner.clone(),
                numbers(1..=2)
            )
                .prop_map(|(vars, body, number)| Formula::Count {
                    vars,
                    body: Box::new(body),
                    number
                }),
            (
                sorts(1..=2),
                inner.clone(),
                inner.clone(),
                prop::option::of(inner.clone()),
                numbers(1..=2),
                numbers(1..=2)
            )
                .prop_flat_map(|(shape, edge, label, equivalence, p, r)| {
                    (
                        tuple_like(shape.clone()),
                        tuple_like(shape.clone()),
                        tuple_like(shape),
                    )
                        .prop_map(move |(u, v, w)| {
                            Formula::Lrec(Box::new(Recursion {
                                u,
                                v,
                                p: p.clone(),
                                equivalence: equivalence.clone(),
                                edge: edge.clone(),
                                label: label.clone(),
                                w,
                                r: r.clone(),
                            }))
                        })
                }),
            (sorts(1..=2), inner).prop_flat_map(|(shape, body)| {
                (
                    tuple_like(shape.clone()),
                    tuple_like(shape.clone()),
                    tuple_like(shape.clone()),
                    tuple_like(shape),
                )
                    .prop_map(move |(u, v, s, t)| {
                        Formula::Dtc(Box::new(lrec::syntax::Dtc {
                            u,
                            v,
                            body: body.clone(),
                            s,
                            t,
                        }))
                    })
            }),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(f in formula()) {
        check_well_formed(&f).unwrap();
        let text = f.to_string();
        let back = parse_formula(&text).map_err(|e| TestCaseError::fail(format!("{e} in {text}")))?;
        prop_assert_eq!(back, f);
    }

    #[test]
    fn expand_dtc_is_idempotent_and_keeps_free_variables(f in formula()) {
        let once = expand_dtc(&f);
        prop_assert!(!once.contains_dtc());
        prop_assert_eq!(expand_dtc(&once), once.clone());
        prop_assert_eq!(free_variables(&once), free_variables(&f));
        check_well_formed(&once).unwrap();
    }
}
