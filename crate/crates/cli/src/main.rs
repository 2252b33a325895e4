//! Command-line front end for the lrec library.
//!
//! Exit codes: 0 for `true`, `isomorphic` or success, 1 for `false` or
//! `not isomorphic`, 2 for input and usage errors, 3 when an input is not
//! in the declared graph class.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use lrec::evaluator::{eval_with, Assignment, Engine};
use lrec::intervalcanon::{interval_canon, recognise, Canon, Graph, IntervalError};
use lrec::structures::{
    generate_layered_graph, parse_structure, random_circuit, random_interval_graph,
    random_tree_parents, write_structure, Structure, Value,
};
use lrec::syntax::{free_variables, parse_formula, Sort, Variable};
use lrec::treelogic::{tree_canon, DirectedTree, TreeError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "lrec",
    version,
    about = "Limited-recursion logic evaluator and graph canoniser"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a formula on a structure and print `true` or `false`.
    Eval {
        structure: PathBuf,
        formula: PathBuf,
        /// Binds a free variable, e.g. `x=a` or `#p=3`.
        #[arg(long = "bind", value_name = "VAR=VALUE")]
        bindings: Vec<String>,
        #[arg(long, value_enum, default_value_t = EngineArg::Memo)]
        engine: EngineArg,
    },
    /// Print the canonical copy of a directed tree or interval graph.
    Canon { kind: Kind, file: PathBuf },
    /// Decide isomorphism by comparing canons.
    Iso {
        kind: Kind,
        first: PathBuf,
        second: PathBuf,
    },
    /// Write a generated structure to standard output.
    Gen {
        family: Family,
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check class membership: a normalised parent line for trees, an
    /// interval model for interval graphs.
    Check { kind: Kind, file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    Interval,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Layered,
    Tree,
    Interval,
    Circuit,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Memo,
    Stream,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Memo => Engine::Memo,
            EngineArg::Stream => Engine::Stream,
            EngineArg::Both => Engine::Both,
        }
    }
}

/// Why a command failed, which fixes its exit code.
enum Failure {
    Input(anyhow::Error),
    Class(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_structure(path: &Path) -> anyhow::Result<Structure> {
    parse_structure(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn first_line(text: &str) -> &str {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("")
}

/// Parses the canon output format: `n N` and then 1-based `u v` lines.
fn parse_canon(text: &str) -> anyhow::Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n = lines
        .next()
        .and_then(|l| l.strip_prefix("n "))
        .and_then(|w| w.trim().parse::<usize>().ok())
        .ok_or_else(|| anyhow!("expected `n <count>`"))?;
    let mut edges = Vec::new();
    for line in lines {
        let pair: Vec<usize> = line
            .split_whitespace()
            .map(|w| w.parse::<usize>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad edge line `{line}`"))?;
        match pair[..] {
            [u, v] if (1..=n).contains(&u) && (1..=n).contains(&v) => edges.push((u - 1, v - 1)),
            _ => bail!("bad edge line `{line}`"),
        }
    }
    Ok((n, edges))
}

fn is_canon(text: &str) -> bool {
    first_line(text).starts_with("n ")
}

/// Reads a tree from a `parents ...` line, the canon format or a structure
/// file with `E`.
fn load_tree(path: &Path) -> Result<DirectedTree, Failure> {
    let text = read(path)?;
    let first = first_line(&text);
    let tree = if first.starts_with("parents") {
        DirectedTree::parse_parent_line(first)
    } else if is_canon(&text) {
        let (n, edges) = parse_canon(&text)?;
        DirectedTree::from_edges(n, &edges)
    } else {
        let s = parse_structure(&text).with_context(|| format!("in {}", path.display()))?;
        DirectedTree::from_structure(&s)
    };
    tree.map_err(|e| match e {
        TreeError::Format(_) => Failure::Input(anyhow!(e)),
        _ => Failure::Class(anyhow!(e)),
    })
}

fn interval_failure(e: IntervalError) -> Failure {
    match e {
        IntervalError::Precondition(_) => Failure::Input(anyhow!(e)),
        _ => Failure::Class(anyhow!(e)),
    }
}

/// Reads an undirected graph from the canon format or a structure file
/// with a symmetric `E`.
fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    let graph = if is_canon(&text) {
        let (n, edges) = parse_canon(&text)?;
        Graph::from_edges(n, &edges)
    } else {
        let s = parse_structure(&text).with_context(|| format!("in {}", path.display()))?;
        Graph::from_structure(&s)
    };
    graph.map_err(interval_failure)
}

fn canon_of_tree(t: &DirectedTree) -> Canon {
    Canon {
        n: t.len(),
        edges: tree_canon(t).into_iter().collect(),
    }
}

fn canon_of(kind: Kind, path: &Path) -> Result<Canon, Failure> {
    match kind {
        Kind::Tree => Ok(canon_of_tree(&load_tree(path)?)),
        Kind::Interval => interval_canon(&load_graph(path)?).map_err(interval_failure),
    }
}

/// Resolves `VAR=VALUE` against the formula's free variables; a leading
/// `#` forces the number sort.
fn bind(
    s: &Structure,
    free: &[Variable],
    alpha: &mut Assignment,
    text: &str,
) -> anyhow::Result<()> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| anyhow!("binding `{text}` is not of the form VAR=VALUE"))?;
    let (name, value) = (name.trim(), value.trim());
    let var = match name.strip_prefix('#') {
        Some(bare) => Variable::number(bare),
        None => free
            .iter()
            .find(|v| v.name == name)
            .cloned()
            .unwrap_or_else(|| Variable::element(name)),
    };
    let value = match var.sort {
        Sort::Number => Value::Number(
            value
                .parse()
                .with_context(|| format!("`{value}` is not a number for {var}"))?,
        ),
        Sort::Element => match s.element_by_name(value) {
            Some(a) => Value::Element(a),
            None => match value.parse::<usize>() {
                Ok(a) if a < s.universe_size() => Value::Element(a),
                _ => bail!("`{value}` names no element of the structure"),
            },
        },
    };
    alpha.bind(var, value);
    Ok(())
}

fn cmd_eval(structure: &Path, formula: &Path, bindings: &[String], engine: EngineArg) -> Outcome {
    let s = load_structure(structure)?;
    let phi =
        parse_formula(&read(formula)?).with_context(|| format!("in {}", formula.display()))?;
    let free: Vec<Variable> = free_variables(&phi).into_iter().collect();
    let mut alpha = Assignment::new();
    for b in bindings {
        bind(&s, &free, &mut alpha, b)?;
    }
    let verdict = eval_with(&s, &alpha, &phi, engine.into()).map_err(anyhow::Error::from)?;
    println!("{verdict}");
    Ok(verdict)
}

fn cmd_iso(kind: Kind, first: &Path, second: &Path) -> Outcome {
    let same = canon_of(kind, first)? == canon_of(kind, second)?;
    println!("{}", if same { "isomorphic" } else { "not isomorphic" });
    Ok(same)
}

fn generate(family: Family, size: usize, seed: u64) -> anyhow::Result<Structure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = match family {
        Family::Layered => generate_layered_graph(size)?,
        Family::Tree => {
            if size == 0 {
                bail!("a tree needs at least one vertex");
            }
            let edges: Vec<(usize, usize)> = random_tree_parents(size, &mut rng)
                .iter()
                .enumerate()
                .filter_map(|(v, p)| p.map(|p| (p, v)))
                .collect();
            Structure::digraph(size, &edges)?
        }
        Family::Interval => random_interval_graph(size, &mut rng)?.0,
        Family::Circuit => random_circuit(size, &mut rng)?,
    };
    Ok(s)
}

fn cmd_gen(family: Family, size: usize, seed: u64) -> Outcome {
    print!("{}", write_structure(&generate(family, size, seed)?));
    Ok(true)
}

fn cmd_check(kind: Kind, path: &Path) -> Outcome {
    match kind {
        Kind::Tree => println!("{}", load_tree(path)?.to_parent_line()),
        Kind::Interval => {
            let model = recognise(&load_graph(path)?).map_err(interval_failure)?;
            print!("{}", model.render());
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Eval {
            structure,
            formula,
            bindings,
            engine,
        } => cmd_eval(&structure, &formula, &bindings, engine),
        Command::Canon { kind, file } => {
            print!("{}", canon_of(kind, &file)?.render());
            Ok(true)
        }
        Command::Iso {
            kind,
            first,
            second,
        } => cmd_iso(kind, &first, &second),
        Command::Gen { family, size, seed } => cmd_gen(family, size, seed),
        Command::Check { kind, file } => cmd_check(kind, &file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Class(e)) => {
            eprintln!("rejected: {e:#}");
            ExitCode::from(3)
        }
    }
}
