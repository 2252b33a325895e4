//! Recursive-descent parser for the formula language.
//!
//! ```text
//! formula  := impl ("<->" impl)*
//! impl     := disj ("->" impl)?
//! disj     := conj ("or" conj)*
//! conj     := unary ("and" unary)*
//! unary    := "not" unary | ("exists" | "forall") binder unary | primary
//! binder   := var | "(" var ("," var)* ")"
//! primary  := "(" formula ")" | IDENT "(" var ("," var)* ")"
//!           | term ("=" | "!=" | "<=" | "<" | ">=" | ">") term
//!           | "count" "(" var ("," var)* ";" formula ")" "=" terms
//!           | "[" "lrec" vars "," vars "," vars ":" formula ";" formula "]" "(" terms "," terms ")"
//!           | "[" "lreceq" vars "," vars "," vars ":" formula ";" formula ";" formula "]" "(" terms "," terms ")"
//!           | "[" "dtc" vars "," vars ":" formula "]" "(" terms "," terms ")"
//! vars     := var | "(" var ("," var)* ")"
//! terms    := term | "(" term ("," term)* ")"
//! term     := var | "0" | "1"
//! var      := IDENT | "#" IDENT
//! ```
//!
//! `#`-prefixed identifiers are number variables. Implications, `!=`, strict
//! comparisons and the literals `0` and `1` are lowered to the core
//! constructors while parsing; literals become fresh number variables bound
//! next to the atom that uses them.

use std::collections::HashSet;

use super::ast::{Dtc, Formula, Recursion, Sort, Variable};
use super::SyntaxError;

const KEYWORDS: &[&str] = &[
    "not", "and", "or", "exists", "forall", "count", "lrec", "lreceq", "dtc",
];

/// Whether `name` can be printed as an identifier.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !KEYWORDS.contains(&name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    NumVar(String),
    Int(String),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const SYMBOLS: &[&str] = &[
    "<->", "->", "<=", ">=", "!=", "(", ")", "[", "]", ",", ";", ":", "=", "<", ">",
];

fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: start.0,
                column: start.1,
            })
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && ident_char(chars[j]) {
                j += 1;
            }
            push(&mut out, Tok::Ident(chars[i..j].iter().collect()));
            col += j - i;
            i = j;
        } else if c == '#' {
            let mut j = i + 1;
            if j >= chars.len() || !(chars[j].is_ascii_alphabetic() || chars[j] == '_') {
                return Err(SyntaxError::at(line, col, "expected identifier after `#`"));
            }
            while j < chars.len() && ident_char(chars[j]) {
                j += 1;
            }
            push(&mut out, Tok::NumVar(chars[i + 1..j].iter().collect()));
            col += j - i;
            i = j;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            push(&mut out, Tok::Int(chars[i..j].iter().collect()));
            col += j - i;
            i = j;
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
                return Err(SyntaxError::at(
                    line,
                    col,
                    format!("unexpected character `{c}`"),
                ));
            };
            push(&mut out, Tok::Sym(sym));
            col += sym.len();
            i += sym.len();
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Term {
    Var(Variable),
    Lit(u8),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    used: HashSet<String>,
    fresh: usize,
}

/// Parses a formula.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let toks = lex(text)?;
    let used = toks
        .iter()
        .filter_map(|t| match &t.tok {
            Tok::Ident(s) | Tok::NumVar(s) => Some(s.clone()),
            _ => None,
        })
        .collect();
    let mut p = Parser {
        toks,
        pos: 0,
        used,
        fresh: 0,
    };
    let f = p.formula()?;
    if p.peek() != &Tok::Eof {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn error(&self, msg: impl Into<String>) -> SyntaxError {
        let t = &self.toks[self.pos];
        let found = match &t.tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::NumVar(s) => format!("`#{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        };
        SyntaxError::at(t.line, t.column, format!("{}, found {found}", msg.into()))
    }

    fn position(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == k)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        if self.is_kw(k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.implication()?;
        while self.eat_sym("<->") {
            let right = self.implication()?;
            let forward = Formula::or(Formula::not(left.clone()), right.clone());
            let backward = Formula::or(Formula::not(right), left);
            left = Formula::and(forward, backward);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.disjunction()?;
        if self.eat_sym("->") {
            let right = self.implication()?;
            return Ok(Formula::or(Formula::not(left), right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.conjunction()?;
        while self.eat_kw("or") {
            left = Formula::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.unary()?;
        while self.eat_kw("and") {
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        if self.eat_kw("not") {
            return Ok(Formula::not(self.unary()?));
        }
        for (kw, universal) in [("exists", false), ("forall", true)] {
            if self.eat_kw(kw) {
                let vars = self.var_tuple()?;
                let body = self.unary()?;
                return Ok(if universal {
                    Formula::forall_all(&vars, body)
                } else {
                    Formula::exists_all(&vars, body)
                });
            }
        }
        self.primary()
    }

    fn variable(&mut self) -> Result<Variable, SyntaxError> {
        let v = match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => Variable::element(s),
            Tok::NumVar(s) => Variable::number(s),
            _ => return Err(self.error("expected variable")),
        };
        self.pos += 1;
        Ok(v)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        if let Tok::Int(s) = self.peek().clone() {
            let lit = match s.as_str() {
                "0" => 0,
                "1" => 1,
                _ => return Err(self.error("only the number constants 0 and 1 are allowed")),
            };
            self.pos += 1;
            return Ok(Term::Lit(lit));
        }
        Ok(Term::Var(self.variable()?))
    }

    fn var_tuple(&mut self) -> Result<Vec<Variable>, SyntaxError> {
        if self.eat_sym("(") {
            let mut out = vec![self.variable()?];
            while self.eat_sym(",") {
                out.push(self.variable()?);
            }
            self.expect_sym(")")?;
            Ok(out)
        } else {
            Ok(vec![self.variable()?])
        }
    }

    fn term_tuple(&mut self) -> Result<Vec<Term>, SyntaxError> {
        if self.eat_sym("(") {
            let mut out = vec![self.term()?];
            while self.eat_sym(",") {
                out.push(self.term()?);
            }
            self.expect_sym(")")?;
            Ok(out)
        } else {
            Ok(vec![self.term()?])
        }
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        let (line, column) = self.position();
        if self.eat_sym("(") {
            let f = self.formula()?;
            self.expect_sym(")")?;
            return Ok(f);
        }
        if self.is_sym("[") {
            return self.operator();
        }
        if self.is_kw("count") && matches!(self.peek_at(1), Tok::Sym("(")) {
            self.pos += 2;
            let mut vars = vec![self.variable()?];
            while self.eat_sym(",") {
                vars.push(self.variable()?);
            }
            self.expect_sym(";")?;
            let body = self.formula()?;
            self.expect_sym(")")?;
            self.expect_sym("=")?;
            let number = self.term_tuple()?;
            let mut pending = Vec::new();
            let number = self.lower_terms(number, &mut pending);
            check_sorts(&number, Sort::Number, "counted number", line, column)?;
            let f = Formula::Count {
                vars,
                body: Box::new(body),
                number,
            };
            return Ok(self.bind_literals(f, pending));
        }
        if let (Tok::Ident(name), Tok::Sym("(")) = (self.peek().clone(), self.peek_at(1)) {
            if KEYWORDS.contains(&name.as_str()) {
                return Err(self.error("unexpected keyword"));
            }
            self.pos += 2;
            let mut args = vec![self.variable()?];
            while self.eat_sym(",") {
                args.push(self.variable()?);
            }
            self.expect_sym(")")?;
            check_sorts(
                &args,
                Sort::Element,
                &format!("argument of `{name}`"),
                line,
                column,
            )?;
            return Ok(Formula::Atom {
                relation: name,
                args,
            });
        }
        let left = self.term()?;
        let op = match self.peek() {
            Tok::Sym(s @ ("=" | "!=" | "<=" | "<" | ">=" | ">")) => *s,
            _ => return Err(self.error("expected comparison operator")),
        };
        self.pos += 1;
        let right = self.term()?;
        let mut pending = Vec::new();
        let mut lowered = self.lower_terms(vec![left, right], &mut pending);
        let b = lowered.pop().expect("two terms");
        let a = lowered.pop().expect("two terms");
        if op == "=" || op == "!=" {
            if a.sort != b.sort {
                return Err(SyntaxError::at(
                    line,
                    column,
                    format!("sort clash: `{a}` and `{b}` have different sorts"),
                ));
            }
        } else {
            check_sorts(
                &[a.clone(), b.clone()],
                Sort::Number,
                "operand of `<=`",
                line,
                column,
            )?;
        }
        let f = match op {
            "=" => Formula::Eq(a, b),
            "!=" => Formula::not(Formula::Eq(a, b)),
            "<=" => Formula::Leq(a, b),
            ">=" => Formula::Leq(b, a),
            "<" => Formula::not(Formula::Leq(b, a)),
            ">" => Formula::not(Formula::Leq(a, b)),
            _ => unreachable!(),
        };
        Ok(self.bind_literals(f, pending))
    }

    fn operator(&mut self) -> Result<Formula, SyntaxError> {
        let (line, column) = self.position();
        self.expect_sym("[")?;
        let kind = match self.peek() {
            Tok::Ident(k) if k == "lrec" || k == "lreceq" || k == "dtc" => k.clone(),
            _ => return Err(self.error("expected `lrec`, `lreceq` or `dtc`")),
        };
        self.pos += 1;
        let u = self.var_tuple()?;
        self.expect_sym(",")?;
        let v = self.var_tuple()?;
        if kind == "dtc" {
            self.expect_sym(":")?;
            let body = self.formula()?;
            self.expect_sym("]")?;
            self.expect_sym("(")?;
            let (s, t) = (self.term_tuple()?, {
                self.expect_sym(",")?;
                self.term_tuple()?
            });
            self.expect_sym(")")?;
            let mut pending = Vec::new();
            let s = self.lower_terms(s, &mut pending);
            let t = self.lower_terms(t, &mut pending);
            let d = Dtc { u, v, body, s, t };
            super::check_dtc(&d).map_err(|m| SyntaxError::at(line, column, m))?;
            return Ok(self.bind_literals(Formula::Dtc(Box::new(d)), pending));
        }
        self.expect_sym(",")?;
        let p = self.var_tuple()?;
        self.expect_sym(":")?;
        let first = self.formula()?;
        self.expect_sym(";")?;
        let second = self.formula()?;
        let (equivalence, edge, label) = if kind == "lreceq" {
            self.expect_sym(";")?;
            let third = self.formula()?;
            (Some(first), second, third)
        } else {
            (None, first, second)
        };
        self.expect_sym("]")?;
        self.expect_sym("(")?;
        let w = self.term_tuple()?;
        self.expect_sym(",")?;
        let r = self.term_tuple()?;
        self.expect_sym(")")?;
        let mut pending = Vec::new();
        let w = self.lower_terms(w, &mut pending);
        let r = self.lower_terms(r, &mut pending);
        let rec = Recursion {
            u,
            v,
            p,
            equivalence,
            edge,
            label,
            w,
            r,
        };
        super::check_recursion(&rec).map_err(|m| SyntaxError::at(line, column, m))?;
        Ok(self.bind_literals(Formula::Lrec(Box::new(rec)), pending))
    }

    fn fresh(&mut self, stem: &str) -> Variable {
        loop {
            let name = format!("_{stem}{}", self.fresh);
            self.fresh += 1;
            if self.used.insert(name.clone()) {
                return Variable::number(name);
            }
        }
    }

    fn lower_terms(
        &mut self,
        terms: Vec<Term>,
        pending: &mut Vec<(Variable, u8)>,
    ) -> Vec<Variable> {
        terms
            .into_iter()
            .map(|t| match t {
                Term::Var(v) => v,
                Term::Lit(k) => {
                    let v = self.fresh("c");
                    pending.push((v.clone(), k));
                    v
                }
            })
            .collect()
    }

    /// Wraps `f` as `exists c (forces(c) and f)` for every literal it used.
    fn bind_literals(&mut self, f: Formula, pending: Vec<(Variable, u8)>) -> Formula {
        pending.into_iter().rev().fold(f, |acc, (c, k)| {
            let force = if k == 0 {
                let q = self.fresh("q");
                is_zero(&c, &q)
            } else {
                let (z, q, q2) = (self.fresh("z"), self.fresh("q"), self.fresh("q"));
                is_one(&c, &z, &q, &q2)
            };
            Formula::exists(c, Formula::and(force, acc))
        })
    }
}

/// `forall q (c <= q)`: `c` is the least number.
pub(crate) fn is_zero(c: &Variable, q: &Variable) -> Formula {
    Formula::forall(q.clone(), Formula::Leq(c.clone(), q.clone()))
}

/// `c` is the successor of the least number `z`.
fn is_one(c: &Variable, z: &Variable, q: &Variable, q2: &Variable) -> Formula {
    let between = Formula::forall(
        q.clone(),
        Formula::or(
            Formula::Leq(q.clone(), z.clone()),
            Formula::Leq(c.clone(), q.clone()),
        ),
    );
    Formula::exists(
        z.clone(),
        Formula::and(
            Formula::and(
                is_zero(z, q2),
                Formula::not(Formula::Leq(c.clone(), z.clone())),
            ),
            between,
        ),
    )
}

fn check_sorts(
    vars: &[Variable],
    sort: Sort,
    what: &str,
    line: usize,
    column: usize,
) -> Result<(), SyntaxError> {
    if let Some(v) = vars.iter().find(|v| v.sort != sort) {
        let expected = match sort {
            Sort::Element => "a structure variable",
            Sort::Number => "a number variable",
        };
        return Err(SyntaxError::at(
            line,
            column,
            format!("sort clash: {what} `{v}` must be {expected}"),
        ));
    }
    Ok(())
}
