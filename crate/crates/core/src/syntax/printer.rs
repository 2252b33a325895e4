//! Concrete syntax output. Every binary connective is parenthesised so the
//! printed text parses back to the same tree.

use std::fmt::{self, Display, Formatter, Write};

use super::ast::{Formula, Variable};

struct Tuple<'a>(&'a [Variable]);

impl Display for Tuple<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if let [single] = self.0 {
            return write!(f, "{single}");
        }
        f.write_char('(')?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_char(')')
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { relation, args } => {
                write!(f, "{relation}(")?;
                for (i, v) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_char(')')
            }
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Leq(a, b) => write!(f, "{a} <= {b}"),
            Formula::Not(a) => write!(f, "not {a}"),
            Formula::And(a, b) => write!(f, "({a} and {b})"),
            Formula::Or(a, b) => write!(f, "({a} or {b})"),
            Formula::Exists(v, a) => write!(f, "exists {v} {a}"),
            Formula::Forall(v, a) => write!(f, "forall {v} {a}"),
            Formula::Count { vars, body, number } => {
                f.write_str("count(")?;
                for (i, v) in vars.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "; {body}) = {}", Tuple(number))
            }
            Formula::Lrec(r) => {
                let (u, v, p) = (Tuple(&r.u), Tuple(&r.v), Tuple(&r.p));
                match &r.equivalence {
                    Some(eq) => write!(f, "[lreceq {u}, {v}, {p} : {eq} ; ")?,
                    None => write!(f, "[lrec {u}, {v}, {p} : ")?,
                }
                write!(
                    f,
                    "{} ; {}]({}, {})",
                    r.edge,
                    r.label,
                    Tuple(&r.w),
                    Tuple(&r.r)
                )
            }
            Formula::Dtc(d) => write!(
                f,
                "[dtc {}, {} : {}]({}, {})",
                Tuple(&d.u),
                Tuple(&d.v),
                d.body,
                Tuple(&d.s),
                Tuple(&d.t)
            ),
        }
    }
}
