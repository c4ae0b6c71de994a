//! Obligation-set tableau.
//!
//! The formula is put into positive normal form over `X U W R M`, with
//! maximal pure-past subformulas turned into atoms. A previous-operator
//! applied to a future formula is pushed inwards until it only touches
//! past atoms. Atoms are evaluated by a deterministic monitor that runs in
//! lockstep with the tableau.
//!
//! A state is a set of obligations (plus the monitor state, plus the
//! eventualities postponed on the way in for the generalized Büchi variant).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{state_set, Acceptance, Builder, Limits, OmegaAutomaton, StateSet};
use crate::hierarchy::{classify, Class};
use crate::ltl::{expand_derived, Alphabet, Formula, Letter};
use crate::{Error, Result};

type NodeId = u32;
/// Obligations of a state and the eventualities postponed on entry.
type StateInfo = (Vec<NodeId>, Vec<NodeId>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    True,
    False,
    Lit(u32, bool),
    Atom(u32, bool),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Next(NodeId),
    Until(NodeId, NodeId),
    WeakUntil(NodeId, NodeId),
    Release(NodeId, NodeId),
    StrongRelease(NodeId, NodeId),
}

const TRUE: NodeId = 0;
const FALSE: NodeId = 1;

struct Pnf<'a> {
    alphabet: &'a Alphabet,
    nodes: Vec<Node>,
    index: BTreeMap<Node, NodeId>,
    atoms: Vec<Formula>,
    atom_index: BTreeMap<Formula, u32>,
    limit: usize,
}

impl<'a> Pnf<'a> {
    fn new(alphabet: &'a Alphabet, limit: usize) -> Pnf<'a> {
        let mut p = Pnf {
            alphabet,
            nodes: Vec::new(),
            index: BTreeMap::new(),
            atoms: Vec::new(),
            atom_index: BTreeMap::new(),
            limit,
        };
        p.nodes.extend([Node::True, Node::False]);
        p.index.insert(Node::True, TRUE);
        p.index.insert(Node::False, FALSE);
        p
    }

    fn mk(&mut self, n: Node) -> Result<NodeId> {
        if let Some(&id) = self.index.get(&n) {
            return Ok(id);
        }
        if self.nodes.len() >= self.limit {
            return Err(Error::Capacity {
                what: "tableau closure",
                limit: self.limit,
            });
        }
        let id = self.nodes.len() as NodeId;
        self.nodes.push(n);
        self.index.insert(n, id);
        Ok(id)
    }

    fn and(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        match (a, b) {
            (FALSE, _) | (_, FALSE) => Ok(FALSE),
            (TRUE, x) | (x, TRUE) => Ok(x),
            (x, y) if x == y => Ok(x),
            (x, y) => self.mk(Node::And(x.min(y), x.max(y))),
        }
    }

    fn or(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        match (a, b) {
            (TRUE, _) | (_, TRUE) => Ok(TRUE),
            (FALSE, x) | (x, FALSE) => Ok(x),
            (x, y) if x == y => Ok(x),
            (x, y) => self.mk(Node::Or(x.min(y), x.max(y))),
        }
    }

    fn until(&mut self, a: NodeId, b: NodeId, weak: bool) -> Result<NodeId> {
        match (a, b) {
            (_, TRUE) => Ok(TRUE),
            (FALSE, x) => Ok(x),
            (TRUE, FALSE) if weak => Ok(TRUE),
            (_, FALSE) if !weak => Ok(FALSE),
            _ if weak => self.mk(Node::WeakUntil(a, b)),
            _ => self.mk(Node::Until(a, b)),
        }
    }

    fn release(&mut self, a: NodeId, b: NodeId, strong: bool) -> Result<NodeId> {
        match (a, b) {
            (_, FALSE) => Ok(FALSE),
            (TRUE, x) => Ok(x),
            (FALSE, TRUE) if strong => Ok(FALSE),
            (_, TRUE) if !strong => Ok(TRUE),
            _ if strong => self.mk(Node::StrongRelease(a, b)),
            _ => self.mk(Node::Release(a, b)),
        }
    }

    fn atom(&mut self, f: Formula, positive: bool) -> Result<NodeId> {
        let next = self.atoms.len() as u32;
        let i = *self.atom_index.entry(f.clone()).or_insert(next);
        if i == next {
            self.atoms.push(f);
        }
        self.mk(Node::Atom(i, positive))
    }

    fn convert(&mut self, f: &Formula, pos: bool) -> Result<NodeId> {
        use Formula::*;
        if f.is_past_operator() && f.is_pure_past() {
            return self.atom(f.clone(), pos);
        }
        match f {
            True => Ok(if pos { TRUE } else { FALSE }),
            False => Ok(if pos { FALSE } else { TRUE }),
            Var(v) => {
                let i = self
                    .alphabet
                    .index_of(v)
                    .ok_or_else(|| Error::UndeclaredVariable(v.clone()))?;
                self.mk(Node::Lit(i as u32, pos))
            }
            Not(a) => self.convert(a, !pos),
            And(a, b) | Or(a, b) => {
                let (x, y) = (self.convert(a, pos)?, self.convert(b, pos)?);
                if matches!(f, And(..)) == pos {
                    self.and(x, y)
                } else {
                    self.or(x, y)
                }
            }
            Next(a) => {
                let x = self.convert(a, pos)?;
                match x {
                    TRUE | FALSE => Ok(x),
                    _ => self.mk(Node::Next(x)),
                }
            }
            Until(a, b) => {
                let (x, y) = (self.convert(a, pos)?, self.convert(b, pos)?);
                if pos {
                    self.until(x, y, false)
                } else {
                    self.release(x, y, false)
                }
            }
            WeakUntil(a, b) => {
                let (x, y) = (self.convert(a, pos)?, self.convert(b, pos)?);
                if pos {
                    self.until(x, y, true)
                } else {
                    self.release(x, y, true)
                }
            }
            // a B b = !(!a U b)
            Before(a, b) => {
                let (x, y) = (self.convert(a, pos)?, self.convert(b, !pos)?);
                if pos {
                    self.release(x, y, false)
                } else {
                    self.until(x, y, false)
                }
            }
            StrongPrev(a) => {
                let x = self.convert(a, pos)?;
                self.prev(x, pos)
            }
            WeakPrev(a) => {
                let x = self.convert(a, pos)?;
                self.prev(x, !pos)
            }
            Since(..) | WeakSince(..) | PastBefore(..) => Err(Error::UnsupportedPast(f.to_string())),
            derived => self.convert(&expand_derived(derived), pos),
        }
    }

    /// Positive normal form of `Y n` (strong) or `Z n`.
    fn prev(&mut self, n: NodeId, strong: bool) -> Result<NodeId> {
        if !strong {
            let first = self.atom(Formula::weak_prev(Formula::False), true)?;
            let p = self.prev(n, true)?;
            return self.or(first, p);
        }
        match self.nodes[n as usize] {
            Node::True => self.atom(Formula::strong_prev(Formula::True), true),
            Node::False => Ok(FALSE),
            Node::Lit(..) | Node::Atom(..) => {
                let f = self.formula(n);
                self.atom(Formula::strong_prev(f), true)
            }
            Node::And(a, b) => {
                let (x, y) = (self.prev(a, true)?, self.prev(b, true)?);
                self.and(x, y)
            }
            Node::Or(a, b) => {
                let (x, y) = (self.prev(a, true)?, self.prev(b, true)?);
                self.or(x, y)
            }
            Node::Next(a) => {
                let started = self.atom(Formula::strong_prev(Formula::True), true)?;
                self.and(started, a)
            }
            Node::Until(a, b) | Node::WeakUntil(a, b) => {
                let (x, y) = (self.prev(a, true)?, self.prev(b, true)?);
                let stay = self.and(x, n)?;
                self.or(y, stay)
            }
            Node::Release(a, b) | Node::StrongRelease(a, b) => {
                let (x, y) = (self.prev(a, true)?, self.prev(b, true)?);
                let stop = self.or(x, n)?;
                self.and(y, stop)
            }
        }
    }

    fn formula(&self, n: NodeId) -> Formula {
        let neg = |f: Formula| Formula::not(f);
        match self.nodes[n as usize] {
            Node::True => Formula::True,
            Node::False => Formula::False,
            Node::Lit(v, p) => {
                let f = Formula::var(self.alphabet.names()[v as usize].clone());
                if p {
                    f
                } else {
                    neg(f)
                }
            }
            Node::Atom(i, p) => {
                let f = self.atoms[i as usize].clone();
                if p {
                    f
                } else {
                    neg(f)
                }
            }
            Node::And(a, b) => Formula::and(self.formula(a), self.formula(b)),
            Node::Or(a, b) => Formula::or(self.formula(a), self.formula(b)),
            Node::Next(a) => Formula::next(self.formula(a)),
            Node::Until(a, b) => Formula::until(self.formula(a), self.formula(b)),
            Node::WeakUntil(a, b) => Formula::weak_until(self.formula(a), self.formula(b)),
            Node::Release(a, b) => neg(Formula::until(neg(self.formula(a)), neg(self.formula(b)))),
            Node::StrongRelease(a, b) => neg(Formula::weak_until(neg(self.formula(a)), neg(self.formula(b)))),
        }
    }

    fn is_eventuality(&self, n: NodeId) -> bool {
        matches!(self.nodes[n as usize], Node::Until(..) | Node::StrongRelease(..))
    }
}

#[derive(Debug, Clone, Copy)]
enum MNode {
    True,
    False,
    Var(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Prev(usize, bool),
    Since(usize, usize, bool),
    PastBefore(usize, usize),
}

const ORIGIN: u64 = 1 << 63;
const MONITOR_BITS: usize = 63;

/// Deterministic evaluator for the past atoms. Its state holds the previous
/// value of every node some `Y`, `Z` or since-like operator reads, or the
/// origin marker before the first letter.
struct Monitor {
    nodes: Vec<MNode>,
    index: BTreeMap<Formula, usize>,
    slot: Vec<Option<usize>>,
    memory: Vec<usize>,
    roots: Vec<usize>,
}

impl Monitor {
    fn new(alphabet: &Alphabet, atoms: &[Formula]) -> Result<Monitor> {
        let mut m = Monitor {
            nodes: Vec::new(),
            index: BTreeMap::new(),
            slot: Vec::new(),
            memory: Vec::new(),
            roots: Vec::new(),
        };
        for a in atoms {
            let r = m.add(alphabet, a)?;
            m.roots.push(r);
        }
        let mut remembered = BTreeSet::new();
        for (k, n) in m.nodes.iter().enumerate() {
            match *n {
                MNode::Prev(i, _) => {
                    remembered.insert(i);
                }
                MNode::Since(..) | MNode::PastBefore(..) => {
                    remembered.insert(k);
                }
                _ => {}
            }
        }
        if remembered.len() > MONITOR_BITS {
            return Err(Error::Capacity {
                what: "past monitor memory",
                limit: MONITOR_BITS,
            });
        }
        m.slot = alloc::vec![None; m.nodes.len()];
        for (bit, &k) in remembered.iter().enumerate() {
            m.slot[k] = Some(bit);
        }
        m.memory = remembered.into_iter().collect();
        Ok(m)
    }

    fn add(&mut self, alphabet: &Alphabet, f: &Formula) -> Result<usize> {
        use Formula::*;
        if let Some(&k) = self.index.get(f) {
            return Ok(k);
        }
        let mut add = |g: &Formula| self.add(alphabet, g);
        let node = match f {
            True => MNode::True,
            False => MNode::False,
            Var(v) => MNode::Var(
                alphabet
                    .index_of(v)
                    .ok_or_else(|| Error::UndeclaredVariable(v.clone()))?,
            ),
            Not(a) => MNode::Not(add(a)?),
            And(a, b) => MNode::And(add(a)?, add(b)?),
            Or(a, b) => MNode::Or(add(a)?, add(b)?),
            StrongPrev(a) => MNode::Prev(add(a)?, true),
            WeakPrev(a) => MNode::Prev(add(a)?, false),
            Since(a, b) => MNode::Since(add(a)?, add(b)?, true),
            WeakSince(a, b) => MNode::Since(add(a)?, add(b)?, false),
            PastBefore(a, b) => MNode::PastBefore(add(a)?, add(b)?),
            other if other.is_future_operator() => return Err(Error::UnsupportedPast(f.to_string())),
            derived => {
                let k = add(&expand_derived(derived))?;
                self.index.insert(f.clone(), k);
                return Ok(k);
            }
        };
        self.nodes.push(node);
        let k = self.nodes.len() - 1;
        self.index.insert(f.clone(), k);
        Ok(k)
    }

    fn initial(&self) -> u64 {
        if self.memory.is_empty() {
            0
        } else {
            ORIGIN
        }
    }

    /// Atom values at the current letter and the next monitor state.
    fn step(&self, state: u64, letter: Letter) -> (u64, u64) {
        let origin = state & ORIGIN != 0;
        let before = |k: usize| -> Option<bool> {
            if origin {
                None
            } else {
                Some(state >> self.slot[k].expect("remembered node") & 1 == 1)
            }
        };
        let mut v = alloc::vec![false; self.nodes.len()];
        for (k, n) in self.nodes.iter().enumerate() {
            v[k] = match *n {
                MNode::True => true,
                MNode::False => false,
                MNode::Var(i) => letter.get(i),
                MNode::Not(a) => !v[a],
                MNode::And(a, b) => v[a] && v[b],
                MNode::Or(a, b) => v[a] || v[b],
                MNode::Prev(a, strong) => before(a).unwrap_or(!strong),
                MNode::Since(hold, goal, strong) => v[goal] || (v[hold] && before(k).unwrap_or(!strong)),
                // !((!a) S b)
                MNode::PastBefore(a, b) => !(v[b] || (!v[a] && !before(k).unwrap_or(true))),
            };
        }
        let mut next = 0;
        for (bit, &k) in self.memory.iter().enumerate() {
            next |= u64::from(v[k]) << bit;
        }
        let mut atoms = 0;
        for (i, &r) in self.roots.iter().enumerate() {
            atoms |= u64::from(v[r]) << i;
        }
        (atoms, next)
    }
}

/// One way of discharging a state's obligations: the letter constraints it
/// needs, the obligations left for the next position and the eventualities
/// it postponed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Branch {
    pos_vars: u32,
    neg_vars: u32,
    pos_atoms: u64,
    neg_atoms: u64,
    next: Vec<NodeId>,
    postponed: Vec<NodeId>,
}

impl Branch {
    fn matches(&self, letter: Letter, atoms: u64) -> bool {
        letter.0 & self.pos_vars == self.pos_vars
            && letter.0 & self.neg_vars == 0
            && atoms & self.pos_atoms == self.pos_atoms
            && atoms & self.neg_atoms == 0
    }

    fn subsumes(&self, other: &Branch) -> bool {
        is_subset(&self.next, &other.next) && is_subset(&self.postponed, &other.postponed)
    }
}

fn is_subset(a: &[NodeId], b: &[NodeId]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

struct Partial {
    todo: Vec<NodeId>,
    done: BTreeSet<NodeId>,
    branch: Branch,
    next: BTreeSet<NodeId>,
    postponed: BTreeSet<NodeId>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Generalized,
    Plain,
}

struct Construction<'a> {
    pnf: Pnf<'a>,
    monitor: Monitor,
    root: NodeId,
}

impl<'a> Construction<'a> {
    fn new(f: &Formula, alphabet: &'a Alphabet, limits: &Limits) -> Result<Construction<'a>> {
        alphabet.check_enumerable(limits.max_vars)?;
        let mut pnf = Pnf::new(alphabet, limits.max_closure);
        let root = pnf.convert(&expand_derived(f), true)?;
        if pnf.atoms.len() > 64 {
            return Err(Error::Capacity {
                what: "past atoms",
                limit: 64,
            });
        }
        let monitor = Monitor::new(alphabet, &pnf.atoms)?;
        Ok(Construction { pnf, monitor, root })
    }

    /// Adds `n` to a next-state obligation set, flattening conjunctions.
    /// Returns false when `n` is unsatisfiable.
    fn push_next(&self, set: &mut BTreeSet<NodeId>, n: NodeId) -> bool {
        match self.pnf.nodes[n as usize] {
            Node::True => true,
            Node::False => false,
            Node::And(a, b) => self.push_next(set, a) && self.push_next(set, b),
            _ => {
                set.insert(n);
                true
            }
        }
    }

    fn branches(&self, obligations: &[NodeId]) -> Vec<Branch> {
        let mut out = BTreeSet::new();
        let mut stack = alloc::vec![Partial {
            todo: obligations.to_vec(),
            done: BTreeSet::new(),
            branch: Branch {
                pos_vars: 0,
                neg_vars: 0,
                pos_atoms: 0,
                neg_atoms: 0,
                next: Vec::new(),
                postponed: Vec::new()
            },
            next: BTreeSet::new(),
            postponed: BTreeSet::new(),
        }];
        'partial: while let Some(mut p) = stack.pop() {
            while let Some(n) = p.todo.pop() {
                if !p.done.insert(n) {
                    continue;
                }
                let b = &mut p.branch;
                match self.pnf.nodes[n as usize] {
                    Node::True => {}
                    Node::False => continue 'partial,
                    Node::Lit(v, pos) => {
                        let (want, other) = if pos {
                            (&mut b.pos_vars, b.neg_vars)
                        } else {
                            (&mut b.neg_vars, b.pos_vars)
                        };
                        if other >> v & 1 == 1 {
                            continue 'partial;
                        }
                        *want |= 1 << v;
                    }
                    Node::Atom(i, pos) => {
                        let (want, other) = if pos {
                            (&mut b.pos_atoms, b.neg_atoms)
                        } else {
                            (&mut b.neg_atoms, b.pos_atoms)
                        };
                        if other >> i & 1 == 1 {
                            continue 'partial;
                        }
                        *want |= 1 << i;
                    }
                    Node::And(a, c) => p.todo.extend([a, c]),
                    Node::Next(a) => {
                        if !self.push_next(&mut p.next, a) {
                            continue 'partial;
                        }
                    }
                    Node::Or(a, c) => {
                        let mut q = clone_partial(&p);
                        q.todo.push(c);
                        stack.push(q);
                        p.todo.push(a);
                    }
                    Node::Until(a, c) | Node::WeakUntil(a, c) => {
                        let mut q = clone_partial(&p);
                        q.todo.push(a);
                        if !self.push_next(&mut q.next, n) {
                            unreachable!()
                        }
                        if self.pnf.is_eventuality(n) {
                            q.postponed.insert(n);
                        }
                        stack.push(q);
                        p.todo.push(c);
                    }
                    Node::Release(a, c) | Node::StrongRelease(a, c) => {
                        p.todo.push(c);
                        let mut q = clone_partial(&p);
                        self.push_next(&mut q.next, n);
                        if self.pnf.is_eventuality(n) {
                            q.postponed.insert(n);
                        }
                        stack.push(q);
                        p.todo.push(a);
                    }
                }
            }
            p.branch.next = p.next.into_iter().collect();
            p.branch.postponed = p.postponed.into_iter().collect();
            out.insert(p.branch);
        }
        out.into_iter().collect()
    }

    fn label(&self, obligations: &[NodeId], monitor: u64, postponed: &[NodeId]) -> String {
        let list = |ids: &[NodeId]| {
            ids.iter()
                .map(|&n| self.pnf.formula(n).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut s = format!("{{{}}}", list(obligations));
        if !self.monitor.memory.is_empty() {
            if monitor & ORIGIN != 0 {
                s.push_str(" @start");
            } else {
                s.push_str(&format!(" @{monitor:b}"));
            }
        }
        if !postponed.is_empty() {
            s.push_str(&format!(" postponed {{{}}}", list(postponed)));
        }
        s
    }

    /// Explores the reachable states. Returns the automaton skeleton plus,
    /// per state, its obligations and postponed eventualities.
    fn explore(&self, alphabet: &Alphabet, mode: Mode, limits: &Limits) -> Result<(Builder, Vec<StateInfo>)> {
        type Key = (Vec<NodeId>, u64, Vec<NodeId>);
        let mut builder = Builder::new(alphabet);
        let mut keys: Vec<Key> = Vec::new();
        let mut index: BTreeMap<Key, usize> = BTreeMap::new();
        let mut queue = VecDeque::new();

        let mut init = BTreeSet::new();
        let init: Vec<NodeId> = if self.push_next(&mut init, self.root) {
            init.into_iter().collect()
        } else {
            alloc::vec![FALSE]
        };
        let start: Key = (init, self.monitor.initial(), Vec::new());
        builder.add_state(self.label(&start.0, start.1, &start.2));
        index.insert(start.clone(), 0);
        keys.push(start);
        queue.push_back(0);

        let mut branch_cache: BTreeMap<Vec<NodeId>, Vec<Branch>> = BTreeMap::new();
        while let Some(q) = queue.pop_front() {
            let (obligations, monitor, _) = keys[q].clone();
            let branches = branch_cache
                .entry(obligations.clone())
                .or_insert_with(|| self.branches(&obligations))
                .clone();
            let mut chosen_cache: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
            for letter in alphabet.letters() {
                let (atoms, next_monitor) = self.monitor.step(monitor, letter);
                let matching: Vec<bool> = branches.iter().map(|b| b.matches(letter, atoms)).collect();
                let chosen = chosen_cache
                    .entry(matching.clone())
                    .or_insert_with(|| {
                        let live: Vec<usize> = (0..branches.len()).filter(|&i| matching[i]).collect();
                        live.iter()
                            .copied()
                            .filter(|&i| {
                                !live.iter().any(|&j| {
                                    j != i
                                        && subsumes(&branches[j], &branches[i], mode)
                                        && !(subsumes(&branches[i], &branches[j], mode) && i < j)
                                })
                            })
                            .collect()
                    })
                    .clone();
                for i in chosen {
                    let b = &branches[i];
                    let postponed = if mode == Mode::Generalized {
                        b.postponed.clone()
                    } else {
                        Vec::new()
                    };
                    let key: Key = (b.next.clone(), next_monitor, postponed);
                    let target = match index.get(&key) {
                        Some(&t) => t,
                        None => {
                            let t = builder.add_state(self.label(&key.0, key.1, &key.2));
                            limits.check_states(t + 1)?;
                            index.insert(key.clone(), t);
                            keys.push(key);
                            queue.push_back(t);
                            t
                        }
                    };
                    builder.add(q, letter, target);
                }
            }
        }
        Ok((builder, keys.into_iter().map(|(n, _, d)| (n, d)).collect()))
    }
}

fn subsumes(a: &Branch, b: &Branch, mode: Mode) -> bool {
    match mode {
        Mode::Generalized => a.subsumes(b),
        Mode::Plain => is_subset(&a.next, &b.next),
    }
}

fn clone_partial(p: &Partial) -> Partial {
    Partial {
        todo: p.todo.clone(),
        done: p.done.clone(),
        branch: p.branch.clone(),
        next: p.next.clone(),
        postponed: p.postponed.clone(),
    }
}

/// Generalized Büchi automaton for `f`, one acceptance set per eventuality.
pub fn tableau(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<OmegaAutomaton> {
    let c = Construction::new(f, alphabet, limits)?;
    let (builder, states) = c.explore(alphabet, Mode::Generalized, limits)?;
    let n = states.len();
    let eventualities: BTreeSet<NodeId> = states
        .iter()
        .flat_map(|(ob, _)| ob.iter().copied())
        .filter(|&x| c.pnf.is_eventuality(x))
        .collect();
    let sets = eventualities
        .iter()
        .map(|e| state_set(n, (0..n).filter(|&q| !states[q].1.contains(e))))
        .collect();
    Ok(builder.finish(alphabet.clone(), alloc::vec![0], Acceptance::GeneralizedBuchi(sets)))
}

/// Tableau without postponement tracking, plus the states with no pending
/// eventuality and the states with no obligation at all.
fn plain(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<(OmegaAutomaton, StateSet)> {
    let c = Construction::new(f, alphabet, limits)?;
    let (builder, states) = c.explore(alphabet, Mode::Plain, limits)?;
    let n = states.len();
    let settled = state_set(
        n,
        (0..n).filter(|&q| !states[q].0.iter().any(|&x| c.pnf.is_eventuality(x))),
    );
    let empty = state_set(n, (0..n).filter(|&q| states[q].0.is_empty()));
    Ok((
        builder.finish(alphabet.clone(), alloc::vec![0], Acceptance::CoBuchi(settled)),
        empty,
    ))
}

fn require(f: &Formula, class: Class) -> Result<()> {
    let classes = classify(f);
    if classes.contains(class) {
        Ok(())
    } else {
        Err(Error::NotInClass {
            formula: f.to_string(),
            required: class,
            classes,
        })
    }
}

/// Co-Büchi automaton for a persistence formula: accepting states are those
/// with no pending eventuality.
pub fn to_ncw(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<OmegaAutomaton> {
    require(f, Class::Persistence)?;
    Ok(plain(f, alphabet, limits)?.0)
}

/// Safety automaton for a safety formula: every infinite run accepts.
pub fn to_safety_nba(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<OmegaAutomaton> {
    require(f, Class::Safety)?;
    let (a, _) = plain(f, alphabet, limits)?;
    let n = a.num_states();
    Ok(a.with_acceptance(Acceptance::Safety(state_set(n, 0..n))))
}

/// Guarantee automaton for a guarantee formula: a run accepts once every
/// obligation is discharged.
pub fn to_guarantee_nba(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<OmegaAutomaton> {
    require(f, Class::Guarantee)?;
    let (a, done) = plain(f, alphabet, limits)?;
    Ok(a.with_acceptance(Acceptance::Guarantee(done)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn build(text: &str) -> OmegaAutomaton {
        tableau(&parse(text, &ab()).unwrap(), &ab(), &Limits::default()).unwrap()
    }

    #[test]
    fn globally_has_one_state() {
        let a = build("G a");
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.acceptance(), &Acceptance::GeneralizedBuchi(Vec::new()));
    }

    #[test]
    fn false_has_no_transitions() {
        let a = build("false");
        assert_eq!(a.num_states(), 1);
        assert!(a.transitions(0).is_empty());
    }

    #[test]
    fn eventually_always_ncw() {
        let ncw = to_ncw(&parse("F G !a", &ab()).unwrap(), &ab(), &Limits::default()).unwrap();
        assert_eq!(ncw.num_states(), 2);
        let Acceptance::CoBuchi(f) = ncw.acceptance() else {
            panic!()
        };
        assert_eq!(f.ones().collect::<Vec<_>>(), [1]);
    }

    #[test]
    fn ncw_rejects_recurrence() {
        let err = to_ncw(&parse("G F a", &ab()).unwrap(), &ab(), &Limits::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::NotInClass {
                required: Class::Persistence,
                ..
            }
        ));
    }

    #[test]
    fn past_over_future_is_pushed() {
        let a = build("G (Y F a -> b)");
        assert!(a.num_states() > 1);
    }

    #[test]
    fn since_over_future_is_rejected() {
        let f = parse("(F a) S b", &ab()).unwrap();
        assert!(matches!(
            tableau(&f, &ab(), &Limits::default()),
            Err(Error::UnsupportedPast(_))
        ));
    }

    #[test]
    fn closure_limit() {
        let f = parse("G (a U (b U (a U (b U a))))", &ab()).unwrap();
        let limits = Limits {
            max_closure: 4,
            ..Limits::default()
        };
        assert!(matches!(tableau(&f, &ab(), &limits), Err(Error::Capacity { .. })));
    }
}
