//! Compiled formulae and their evaluation over a fixed structure.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::graph::RecursionGraph;
use super::memo::MemoEngine;
use super::stream::{stream_membership, StreamReport, DEFAULT_NODE_LIMIT};
use super::EvalError;
use crate::structures::{num_encode, Structure, UnionFind, Value};
use crate::syntax::{
    check_well_formed, expand_dtc, free_variables, Formula, Recursion, Sort, Variable,
};

/// Which engine decides recursion operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    /// Memoised top-down recursion.
    #[default]
    Memo,
    /// Depth-first walk of the unravelling with counter budgets.
    Stream,
    /// Both engines; disagreement is an error.
    Both,
}

/// Tuning knobs for evaluation.
#[derive(Clone, Debug)]
pub struct EvalOptions {
    pub engine: Engine,
    /// Edge sets with at most this many vertex pairs are built eagerly.
    pub eager_threshold: usize,
    /// Cap on unravelling size for the streaming engine.
    pub node_limit: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            engine: Engine::Memo,
            eager_threshold: 1_000_000,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

/// Values bound to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<Variable, Value>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, var: Variable, value: Value) -> &mut Self {
        self.values.insert(var, value);
        self
    }

    pub fn with(mut self, var: Variable, value: Value) -> Self {
        self.values.insert(var, value);
        self
    }

    pub fn get(&self, var: &Variable) -> Option<Value> {
        self.values.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Value)> {
        self.values.iter()
    }
}

/// Statistics gathered by the streaming engine.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StreamStats {
    pub runs: usize,
    pub max_counter_bits: u64,
    pub max_unravelling: usize,
}

/// The mixed tuple space `Dom(u)`; tuples are numbered with the first
/// component most significant, so numeric order is lexicographic order.
#[derive(Clone, Debug)]
pub(crate) struct Domain {
    sorts: Vec<Sort>,
    radix: Vec<usize>,
    weight: Vec<usize>,
    size: usize,
}

impl Domain {
    pub(crate) fn new(sorts: &[Sort], n: usize) -> Result<Self, EvalError> {
        let radix: Vec<usize> = sorts
            .iter()
            .map(|s| match s {
                Sort::Element => n,
                Sort::Number => n + 1,
            })
            .collect();
        let mut weight = vec![1usize; radix.len()];
        let mut size = 1usize;
        for i in (0..radix.len()).rev() {
            weight[i] = size;
            size = size
                .checked_mul(radix[i])
                .ok_or(EvalError::DomainTooLarge)?;
        }
        Ok(Self {
            sorts: sorts.to_vec(),
            radix,
            weight,
            size,
        })
    }

    pub(crate) fn size(&self) -> usize {
        self.size
    }

    pub(crate) fn encode(&self, values: &[Value]) -> usize {
        values
            .iter()
            .zip(&self.weight)
            .map(|(v, w)| v.raw() * w)
            .sum()
    }

    pub(crate) fn component(&self, id: usize, i: usize) -> Value {
        let digit = (id / self.weight[i]) % self.radix[i];
        match self.sorts[i] {
            Sort::Element => Value::Element(digit),
            Sort::Number => Value::Number(digit),
        }
    }

    pub(crate) fn decode(&self, id: usize) -> Vec<Value> {
        (0..self.sorts.len())
            .map(|i| self.component(id, i))
            .collect()
    }
}

type Slot = usize;

#[derive(Debug)]
enum Node {
    Atom(usize, Vec<Slot>),
    Eq(Slot, Slot),
    Leq(Slot, Slot),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Exists(Slot, Sort, Box<Node>),
    Forall(Slot, Sort, Box<Node>),
    Count {
        vars: Vec<Slot>,
        domain: Domain,
        body: Box<Node>,
        number: Vec<Slot>,
    },
    Lrec(Box<LrecNode>),
}

#[derive(Debug)]
struct LrecNode {
    id: usize,
    u: Vec<Slot>,
    v: Vec<Slot>,
    p: Vec<Slot>,
    domain: Domain,
    equivalence: Option<Node>,
    edge: Node,
    label: Node,
    w: Vec<Slot>,
    r: Vec<Slot>,
    outer: Vec<Slot>,
}

struct ClassInfo {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

/// Per-node, per-outer-assignment caches.
struct LrecState {
    env: Vec<Option<Value>>,
    succ: RefCell<HashMap<usize, Rc<[usize]>>>,
    indeg: RefCell<HashMap<usize, usize>>,
    labels: RefCell<HashMap<(usize, usize), bool>>,
    classes: Option<ClassInfo>,
    memo: RefCell<MemoEngine<usize>>,
}

/// A formula compiled against a structure, with its recursion caches.
pub struct Program<'a> {
    structure: &'a Structure,
    options: EvalOptions,
    root: Node,
    slots: Vec<Variable>,
    free: Vec<(Variable, Slot)>,
    node_count: usize,
    states: RefCell<HashMap<(usize, Vec<Option<Value>>), Rc<LrecState>>>,
    stats: RefCell<StreamStats>,
}

struct Compiler<'s> {
    structure: &'s Structure,
    slots: Vec<Variable>,
    index: HashMap<Variable, Slot>,
    nodes: usize,
}

impl Compiler<'_> {
    fn slot(&mut self, v: &Variable) -> Slot {
        if let Some(&s) = self.index.get(v) {
            return s;
        }
        let s = self.slots.len();
        self.slots.push(v.clone());
        self.index.insert(v.clone(), s);
        s
    }

    fn slots_of(&mut self, vs: &[Variable]) -> Vec<Slot> {
        vs.iter().map(|v| self.slot(v)).collect()
    }

    fn domain(&self, vs: &[Variable]) -> Result<Domain, EvalError> {
        let sorts: Vec<Sort> = vs.iter().map(|v| v.sort).collect();
        Domain::new(&sorts, self.structure.universe_size())
    }

    fn compile(&mut self, f: &Formula) -> Result<Node, EvalError> {
        Ok(match f {
            Formula::Atom { relation, args } => {
                let idx = self
                    .structure
                    .symbol_index(relation)
                    .map_err(|_| EvalError::UnknownRelation(relation.clone()))?;
                let arity = self.structure.vocabulary().symbols()[idx].1;
                if arity != args.len() {
                    return Err(EvalError::Arity {
                        relation: relation.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                if let Some(v) = args.iter().find(|v| v.sort != Sort::Element) {
                    return Err(EvalError::Sort(v.clone()));
                }
                Node::Atom(idx, self.slots_of(args))
            }
            Formula::Eq(a, b) => {
                if a.sort != b.sort {
                    return Err(EvalError::Sort(b.clone()));
                }
                Node::Eq(self.slot(a), self.slot(b))
            }
            Formula::Leq(a, b) => {
                for v in [a, b] {
                    if v.sort != Sort::Number {
                        return Err(EvalError::Sort(v.clone()));
                    }
                }
                Node::Leq(self.slot(a), self.slot(b))
            }
            Formula::Not(a) => Node::Not(Box::new(self.compile(a)?)),
            Formula::And(a, b) => Node::And(Box::new(self.compile(a)?), Box::new(self.compile(b)?)),
            Formula::Or(a, b) => Node::Or(Box::new(self.compile(a)?), Box::new(self.compile(b)?)),
            Formula::Exists(v, a) => Node::Exists(self.slot(v), v.sort, Box::new(self.compile(a)?)),
            Formula::Forall(v, a) => Node::Forall(self.slot(v), v.sort, Box::new(self.compile(a)?)),
            Formula::Count { vars, body, number } => {
                if let Some(v) = number.iter().find(|v| v.sort != Sort::Number) {
                    return Err(EvalError::Sort(v.clone()));
                }
                Node::Count {
                    vars: self.slots_of(vars),
                    domain: self.domain(vars)?,
                    body: Box::new(self.compile(body)?),
                    number: self.slots_of(number),
                }
            }
            Formula::Lrec(r) => Node::Lrec(Box::new(self.compile_recursion(r)?)),
            Formula::Dtc(_) => unreachable!("dtc is expanded before compilation"),
        })
    }

    fn compile_recursion(&mut self, r: &Recursion) -> Result<LrecNode, EvalError> {
        let id = self.nodes;
        self.nodes += 1;
        let mut inner = free_variables(&r.edge);
        if let Some(eq) = &r.equivalence {
            inner.extend(free_variables(eq));
        }
        for v in r.u.iter().chain(&r.v) {
            inner.remove(v);
        }
        let mut label_free = free_variables(&r.label);
        for v in r.u.iter().chain(&r.p) {
            label_free.remove(v);
        }
        inner.extend(label_free);
        let outer: Vec<Variable> = inner.into_iter().collect();
        Ok(LrecNode {
            id,
            u: self.slots_of(&r.u),
            v: self.slots_of(&r.v),
            p: self.slots_of(&r.p),
            domain: self.domain(&r.u)?,
            equivalence: r
                .equivalence
                .as_ref()
                .map(|e| self.compile(e))
                .transpose()?,
            edge: self.compile(&r.edge)?,
            label: self.compile(&r.label)?,
            w: self.slots_of(&r.w),
            r: self.slots_of(&r.r),
            outer: self.slots_of(&outer),
        })
    }
}

/// A recursion graph defined by formulae under a fixed outer assignment.
struct FormulaGraph<'p, 'a> {
    program: &'p Program<'a>,
    node: &'p LrecNode,
    state: &'p LrecState,
    error: RefCell<Option<EvalError>>,
}

impl FormulaGraph<'_, '_> {
    fn record<T: Default>(&self, r: Result<T, EvalError>) -> T {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.error.borrow_mut().get_or_insert(e);
                T::default()
            }
        }
    }

    fn edge_holds(&self, env: &mut [Option<Value>], a: usize, b: usize) -> Result<bool, EvalError> {
        bind_tuple(env, &self.node.u, &self.node.domain, a);
        bind_tuple(env, &self.node.v, &self.node.domain, b);
        self.program.eval_node(&self.node.edge, env)
    }

    fn base_label(&self, a: usize, count: usize) -> Result<bool, EvalError> {
        if let Some(&known) = self.state.labels.borrow().get(&(a, count)) {
            return Ok(known);
        }
        let n = self.program.structure.universe_size();
        let k = self.node.p.len();
        let mut digits = Vec::with_capacity(k);
        let mut rest = count;
        for _ in 0..k {
            digits.push(rest % (n + 1));
            rest /= n + 1;
        }
        let verdict = if rest != 0 {
            false
        } else {
            let mut env = self.state.env.clone();
            bind_tuple(&mut env, &self.node.u, &self.node.domain, a);
            for (&slot, &d) in self.node.p.iter().zip(&digits) {
                env[slot] = Some(Value::Number(d));
            }
            self.program.eval_node(&self.node.label, &mut env)?
        };
        self.state.labels.borrow_mut().insert((a, count), verdict);
        Ok(verdict)
    }

    fn compute_successors(&self, a: usize) -> Result<Rc<[usize]>, EvalError> {
        let mut env = self.state.env.clone();
        let mut out = Vec::new();
        for b in 0..self.node.domain.size() {
            if self.edge_holds(&mut env, a, b)? {
                out.push(b);
            }
        }
        Ok(out.into())
    }

    fn compute_in_degree(&self, b: usize) -> Result<usize, EvalError> {
        let mut env = self.state.env.clone();
        let mut count = 0;
        for a in 0..self.node.domain.size() {
            count += usize::from(self.edge_holds(&mut env, a, b)?);
        }
        Ok(count)
    }
}

impl RecursionGraph for FormulaGraph<'_, '_> {
    type Vertex = usize;

    fn successors(&self, v: &usize) -> Rc<[usize]> {
        if let Some(s) = self.state.succ.borrow().get(v) {
            return s.clone();
        }
        let s: Rc<[usize]> = match self.compute_successors(*v) {
            Ok(s) => s,
            Err(e) => {
                self.error.borrow_mut().get_or_insert(e);
                Rc::from(Vec::new())
            }
        };
        self.state.succ.borrow_mut().insert(*v, s.clone());
        s
    }

    fn in_degree(&self, v: &usize) -> usize {
        if let Some(&d) = self.state.indeg.borrow().get(v) {
            return d;
        }
        let d = self.record(self.compute_in_degree(*v)).max(1);
        self.state.indeg.borrow_mut().insert(*v, d);
        d
    }

    fn label_contains(&self, v: &usize, count: usize) -> bool {
        match &self.state.classes {
            None => self.record(self.base_label(*v, count)),
            Some(info) => {
                let members = &info.members[*v];
                let r = members
                    .iter()
                    .try_fold(false, |acc, &a| -> Result<bool, EvalError> {
                        Ok(acc || self.base_label(a, count)?)
                    });
                self.record(r)
            }
        }
    }
}

fn bind_tuple(env: &mut [Option<Value>], slots: &[Slot], domain: &Domain, id: usize) {
    for (i, &s) in slots.iter().enumerate() {
        env[s] = Some(domain.component(id, i));
    }
}

impl<'a> Program<'a> {
    /// Compiles `formula` (after `dtc` expansion) against `structure`.
    pub fn compile(
        structure: &'a Structure,
        formula: &Formula,
        options: EvalOptions,
    ) -> Result<Self, EvalError> {
        check_well_formed(formula).map_err(EvalError::Syntax)?;
        let expanded = expand_dtc(formula);
        let mut c = Compiler {
            structure,
            slots: Vec::new(),
            index: HashMap::new(),
            nodes: 0,
        };
        let root = c.compile(&expanded)?;
        let free = free_variables(&expanded)
            .into_iter()
            .map(|v| {
                let s = c.slot(&v);
                (v, s)
            })
            .collect();
        Ok(Self {
            structure,
            options,
            root,
            slots: c.slots,
            free,
            node_count: c.nodes,
            states: RefCell::new(HashMap::new()),
            stats: RefCell::new(StreamStats::default()),
        })
    }

    /// Free variables that an assignment must bind.
    pub fn free_variables(&self) -> impl Iterator<Item = &Variable> {
        self.free.iter().map(|(v, _)| v)
    }

    /// Number of recursion operators in the compiled formula.
    pub fn recursion_count(&self) -> usize {
        self.node_count
    }

    /// Streaming statistics accumulated so far.
    pub fn stream_stats(&self) -> StreamStats {
        self.stats.borrow().clone()
    }

    fn initial_env(&self, alpha: &Assignment) -> Result<Vec<Option<Value>>, EvalError> {
        let n = self.structure.universe_size();
        let mut env = vec![None; self.slots.len()];
        for (var, value) in alpha.iter() {
            let ok = match (var.sort, value) {
                (Sort::Element, Value::Element(a)) => *a < n,
                (Sort::Number, Value::Number(a)) => *a <= n,
                _ => false,
            };
            if !ok {
                return Err(EvalError::BadBinding {
                    variable: var.clone(),
                    value: *value,
                });
            }
            if let Some(&(_, slot)) = self.free.iter().find(|(v, _)| v == var) {
                env[slot] = Some(*value);
            }
        }
        if let Some((v, _)) = self.free.iter().find(|(_, s)| env[*s].is_none()) {
            return Err(EvalError::Unbound(v.clone()));
        }
        Ok(env)
    }

    /// Decides `(A, alpha) |= formula`.
    pub fn eval(&self, alpha: &Assignment) -> Result<bool, EvalError> {
        let mut env = self.initial_env(alpha)?;
        self.eval_node(&self.root, &mut env)
    }

    /// Decides `(vertex, resource) in X` for the recursion operator at the
    /// root of the compiled formula, under `alpha` for its outer variables.
    pub fn recursion_member(
        &self,
        alpha: &Assignment,
        vertex: &[Value],
        resource: &BigUint,
    ) -> Result<bool, EvalError> {
        Ok(self.recursion_query(alpha, vertex, resource)?.verdict)
    }

    /// Like [`Program::recursion_member`], reporting streaming statistics
    /// when the streaming engine ran.
    pub fn recursion_query(
        &self,
        alpha: &Assignment,
        vertex: &[Value],
        resource: &BigUint,
    ) -> Result<QueryOutcome, EvalError> {
        let Node::Lrec(node) = &self.root else {
            return Err(EvalError::NotARecursion);
        };
        let env = self.initial_env_lenient(alpha, &node.outer)?;
        if vertex.len() != node.u.len()
            || vertex
                .iter()
                .zip(&node.domain.sorts)
                .any(|(v, s)| !value_fits(*v, *s, self.structure.universe_size()))
        {
            return Err(EvalError::BadVertex);
        }
        let id = node.domain.encode(vertex);
        self.decide(node, &env, Some(id), Some(resource.clone()))
    }

    fn initial_env_lenient(
        &self,
        alpha: &Assignment,
        needed: &[Slot],
    ) -> Result<Vec<Option<Value>>, EvalError> {
        let n = self.structure.universe_size();
        let mut env = vec![None; self.slots.len()];
        for (var, value) in alpha.iter() {
            if !value_fits(*value, var.sort, n) {
                return Err(EvalError::BadBinding {
                    variable: var.clone(),
                    value: *value,
                });
            }
            if let Some(slot) = self.slots.iter().position(|v| v == var) {
                env[slot] = Some(*value);
            }
        }
        if let Some(&s) = needed.iter().find(|&&s| env[s].is_none()) {
            return Err(EvalError::Unbound(self.slots[s].clone()));
        }
        Ok(env)
    }

    fn state_for(
        &self,
        node: &LrecNode,
        env: &[Option<Value>],
    ) -> Result<Rc<LrecState>, EvalError> {
        let key_values: Vec<Option<Value>> = node.outer.iter().map(|&s| env[s]).collect();
        let key = (node.id, key_values);
        if let Some(s) = self.states.borrow().get(&key) {
            return Ok(s.clone());
        }
        let mut base = vec![None; self.slots.len()];
        for &s in &node.outer {
            base[s] = env[s];
        }
        let state = self.build_state(node, base)?;
        let state = Rc::new(state);
        self.states.borrow_mut().insert(key, state.clone());
        Ok(state)
    }

    fn build_state(
        &self,
        node: &LrecNode,
        env: Vec<Option<Value>>,
    ) -> Result<LrecState, EvalError> {
        let size = node.domain.size();
        let mut state = LrecState {
            env,
            succ: RefCell::new(HashMap::new()),
            indeg: RefCell::new(HashMap::new()),
            labels: RefCell::new(HashMap::new()),
            classes: None,
            memo: RefCell::new(MemoEngine::new()),
        };
        let eager = size
            .checked_mul(size)
            .is_some_and(|p| p <= self.options.eager_threshold);
        if node.equivalence.is_none() && !eager {
            return Ok(state);
        }
        if node.equivalence.is_some() && !eager {
            return Err(EvalError::DomainTooLarge);
        }
        let mut work = state.env.clone();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut uf = UnionFind::new(size);
        for a in 0..size {
            bind_tuple(&mut work, &node.u, &node.domain, a);
            for b in 0..size {
                bind_tuple(&mut work, &node.v, &node.domain, b);
                if self.eval_node(&node.edge, &mut work)? {
                    edges.push((a, b));
                }
                if let Some(eq) = &node.equivalence {
                    if self.eval_node(eq, &mut work)? {
                        uf.union(a, b);
                    }
                }
            }
        }
        let (class_of, vertex_count) = if node.equivalence.is_some() {
            let (class_of, count) = uf.class_indices();
            (class_of, count)
        } else {
            ((0..size).collect(), size)
        };
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (a, b) in edges {
            succ[class_of[a]].push(class_of[b]);
        }
        let mut indeg = vec![0usize; vertex_count];
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
            for &b in s.iter() {
                indeg[b] += 1;
            }
        }
        state.succ = RefCell::new(
            succ.into_iter()
                .enumerate()
                .map(|(i, s)| (i, s.into()))
                .collect(),
        );
        state.indeg = RefCell::new(indeg.into_iter().enumerate().collect());
        if node.equivalence.is_some() {
            let mut members = vec![Vec::new(); vertex_count];
            for (a, &c) in class_of.iter().enumerate() {
                members[c].push(a);
            }
            state.classes = Some(ClassInfo { class_of, members });
        }
        Ok(state)
    }

    fn decide(
        &self,
        node: &LrecNode,
        env: &[Option<Value>],
        vertex: Option<usize>,
        resource: Option<BigUint>,
    ) -> Result<QueryOutcome, EvalError> {
        let state = self.state_for(node, env)?;
        let n = self.structure.universe_size();
        let id = match vertex {
            Some(id) => id,
            None => {
                let values = read_tuple(env, &node.w, &self.slots)?;
                node.domain.encode(&values)
            }
        };
        let resource = match resource {
            Some(r) => r,
            None => {
                let digits: Vec<usize> = read_tuple(env, &node.r, &self.slots)?
                    .iter()
                    .map(|v| v.raw())
                    .collect();
                num_encode(&digits, n).map_err(EvalError::Structure)?
            }
        };
        let start = match &state.classes {
            Some(info) => info.class_of[id],
            None => id,
        };
        let graph = FormulaGraph {
            program: self,
            node,
            state: &state,
            error: RefCell::new(None),
        };
        let mut outcome = QueryOutcome {
            verdict: false,
            stream: None,
        };
        if matches!(self.options.engine, Engine::Memo | Engine::Both) {
            let verdict = match state.memo.try_borrow_mut() {
                Ok(mut memo) => memo.member(&graph, &start, &resource),
                Err(_) => MemoEngine::new().member(&graph, &start, &resource),
            };
            outcome.verdict = verdict;
        }
        if matches!(self.options.engine, Engine::Stream | Engine::Both) {
            let report = stream_membership(&graph, &start, &resource, self.options.node_limit)
                .map_err(EvalError::Stream)?;
            {
                let mut stats = self.stats.borrow_mut();
                stats.runs += 1;
                stats.max_counter_bits = stats.max_counter_bits.max(report.max_counter_bits);
                stats.max_unravelling = stats.max_unravelling.max(report.unravelling_size);
            }
            if self.options.engine == Engine::Both && report.verdict != outcome.verdict {
                return Err(EvalError::EngineDisagreement {
                    memo: outcome.verdict,
                    stream: report.verdict,
                });
            }
            outcome.verdict = report.verdict;
            outcome.stream = Some(report);
        }
        if let Some(e) = graph.error.into_inner() {
            return Err(e);
        }
        Ok(outcome)
    }

    fn eval_node(&self, node: &Node, env: &mut [Option<Value>]) -> Result<bool, EvalError> {
        let n = self.structure.universe_size();
        Ok(match node {
            Node::Atom(rel, args) => {
                let mut buf = [0usize; 8];
                if args.len() <= buf.len() {
                    for (i, &s) in args.iter().enumerate() {
                        buf[i] = self.value(env, s)?.raw();
                    }
                    self.structure.holds_at(*rel, &buf[..args.len()])
                } else {
                    let t: Vec<usize> = args
                        .iter()
                        .map(|&s| self.value(env, s).map(Value::raw))
                        .collect::<Result<_, _>>()?;
                    self.structure.holds_at(*rel, &t)
                }
            }
            Node::Eq(a, b) => self.value(env, *a)? == self.value(env, *b)?,
            Node::Leq(a, b) => self.value(env, *a)?.raw() <= self.value(env, *b)?.raw(),
            Node::Not(a) => !self.eval_node(a, env)?,
            Node::And(a, b) => self.eval_node(a, env)? && self.eval_node(b, env)?,
            Node::Or(a, b) => self.eval_node(a, env)? || self.eval_node(b, env)?,
            Node::Exists(s, sort, a) | Node::Forall(s, sort, a) => {
                let universal = matches!(node, Node::Forall(..));
                let saved = env[*s];
                let range = match sort {
                    Sort::Element => n,
                    Sort::Number => n + 1,
                };
                let mut result = universal;
                for x in 0..range {
                    env[*s] = Some(match sort {
                        Sort::Element => Value::Element(x),
                        Sort::Number => Value::Number(x),
                    });
                    let r = self.eval_node(a, env);
                    match r {
                        Ok(holds) if holds != universal => {
                            result = !universal;
                            break;
                        }
                        Ok(_) => {}
                        Err(e) => {
                            env[*s] = saved;
                            return Err(e);
                        }
                    }
                }
                env[*s] = saved;
                result
            }
            Node::Count {
                vars,
                domain,
                body,
                number,
            } => {
                let saved: Vec<Option<Value>> = vars.iter().map(|&s| env[s]).collect();
                let target = {
                    let digits: Vec<usize> = number
                        .iter()
                        .map(|&s| self.value(env, s).map(Value::raw))
                        .collect::<Result<_, _>>()?;
                    num_encode(&digits, n).map_err(EvalError::Structure)?
                };
                let mut count = 0usize;
                let mut failure = None;
                for id in 0..domain.size() {
                    bind_tuple(env, vars, domain, id);
                    match self.eval_node(body, env) {
                        Ok(b) => count += usize::from(b),
                        Err(e) => {
                            failure = Some(e);
                            break;
                        }
                    }
                }
                for (&s, v) in vars.iter().zip(saved) {
                    env[s] = v;
                }
                if let Some(e) = failure {
                    return Err(e);
                }
                target.to_usize() == Some(count)
            }
            Node::Lrec(rec) => self.decide(rec, env, None, None)?.verdict,
        })
    }

    fn value(&self, env: &[Option<Value>], slot: Slot) -> Result<Value, EvalError> {
        env[slot].ok_or_else(|| EvalError::Unbound(self.slots[slot].clone()))
    }
}

/// Verdict of a recursion query, with the streaming report when available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryOutcome {
    pub verdict: bool,
    pub stream: Option<StreamReport>,
}

fn value_fits(v: Value, sort: Sort, n: usize) -> bool {
    match (sort, v) {
        (Sort::Element, Value::Element(a)) => a < n,
        (Sort::Number, Value::Number(a)) => a <= n,
        _ => false,
    }
}

fn read_tuple(
    env: &[Option<Value>],
    slots: &[Slot],
    names: &[Variable],
) -> Result<Vec<Value>, EvalError> {
    slots
        .iter()
        .map(|&s| env[s].ok_or_else(|| EvalError::Unbound(names[s].clone())))
        .collect()
}
