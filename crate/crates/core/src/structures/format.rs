//! The line-based structure text format.
//!
//! ```text
//! vocab E/2 P/1
//! universe 3
//! names a b c      # optional
//! E a b
//! P c
//! ```

use super::{Structure, StructureError, Vocabulary};

fn syntax(line: usize, message: impl Into<String>) -> StructureError {
    StructureError::Syntax {
        line,
        message: message.into(),
    }
}

/// Reads a structure from its text form.
pub fn parse_structure(text: &str) -> Result<Structure, StructureError> {
    let mut vocab: Option<Vocabulary> = None;
    let mut structure: Option<Structure> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut words = line.split_whitespace();
        let Some(head) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        match head {
            "vocab" => {
                if vocab.is_some() {
                    return Err(syntax(line_no, "repeated `vocab` line"));
                }
                let mut symbols = Vec::new();
                for sym in rest {
                    let (name, arity) = sym.split_once('/').ok_or_else(|| {
                        syntax(line_no, format!("expected NAME/ARITY, got `{sym}`"))
                    })?;
                    let arity: usize = arity
                        .parse()
                        .map_err(|_| syntax(line_no, format!("bad arity in `{sym}`")))?;
                    symbols.push((name.to_string(), arity));
                }
                vocab = Some(Vocabulary::new(symbols).map_err(|e| syntax(line_no, e.to_string()))?);
            }
            "universe" => {
                if structure.is_some() {
                    return Err(syntax(line_no, "repeated `universe` line"));
                }
                let v = vocab
                    .clone()
                    .ok_or_else(|| syntax(line_no, "`universe` before `vocab`"))?;
                let [size] = rest.as_slice() else {
                    return Err(syntax(line_no, "`universe` takes one number"));
                };
                let size: usize = size
                    .parse()
                    .map_err(|_| syntax(line_no, format!("bad universe size `{size}`")))?;
                structure =
                    Some(Structure::new(v, size).map_err(|e| syntax(line_no, e.to_string()))?);
            }
            "names" => {
                let s = structure
                    .take()
                    .ok_or_else(|| syntax(line_no, "`names` before `universe`"))?;
                if s.names.is_some() {
                    return Err(syntax(line_no, "repeated `names` line"));
                }
                let names: Vec<String> = rest.iter().map(|w| w.to_string()).collect();
                for (k, n) in names.iter().enumerate() {
                    if names[..k].contains(n) {
                        return Err(syntax(line_no, format!("duplicate name `{n}`")));
                    }
                }
                structure = Some(
                    s.with_names(names)
                        .map_err(|e| syntax(line_no, e.to_string()))?,
                );
            }
            symbol => {
                let s = structure
                    .as_mut()
                    .ok_or_else(|| syntax(line_no, "tuple before `universe`"))?;
                let mut tuple = Vec::with_capacity(rest.len());
                for w in &rest {
                    let a = s
                        .element_by_name(w)
                        .ok_or_else(|| syntax(line_no, format!("unknown element `{w}`")))?;
                    tuple.push(a);
                }
                s.add_tuple(symbol, tuple)
                    .map_err(|e| syntax(line_no, e.to_string()))?;
            }
        }
    }
    structure.ok_or_else(|| syntax(0, "missing `universe` line"))
}

/// Writes a structure in the text format; tuples are sorted per symbol.
pub fn write_structure(s: &Structure) -> String {
    let mut out = String::from("vocab");
    for (name, arity) in s.vocabulary().symbols() {
        out.push_str(&format!(" {name}/{arity}"));
    }
    out.push_str(&format!("\nuniverse {}\n", s.universe_size()));
    if let Some(names) = s.names() {
        out.push_str("names");
        for n in names {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
    for (name, _) in s.vocabulary().symbols() {
        for t in s.tuples(name).unwrap_or_default() {
            out.push_str(name);
            for a in t {
                out.push(' ');
                out.push_str(&s.element_name(a));
            }
            out.push('\n');
        }
    }
    out
}
