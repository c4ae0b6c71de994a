//! Explicit-state ω-automata and the LTL → deterministic Büchi pipeline.
//!
//! Transitions carry guards, each an explicit set of letters of the
//! automaton's [`Alphabet`]; guards render as propositional formulas in the
//! file formats. Every construction enumerates letters, so alphabets are
//! capped by [`Limits::max_vars`].

mod accepts;
mod breakpoint;
mod compile;
mod degeneralize;
mod minimize;
mod product;
mod subset;
mod tableau;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::ltl::{Alphabet, Letter};
use crate::{Error, Result};

pub use accepts::accepts;
pub use breakpoint::breakpoint_determinize;
pub use compile::compile_dba;
pub use degeneralize::degeneralize;
pub use minimize::quotient_minimize;
pub use product::gr1_product;
pub use subset::subset_determinize;
pub use tableau::{tableau, to_guarantee_nba, to_ncw, to_safety_nba};

pub type StateId = usize;

/// Set of states, indexed by [`StateId`].
pub type StateSet = FixedBitSet;

/// Set of letters of an alphabet, indexed by [`Letter::index`].
pub type LetterSet = FixedBitSet;

/// Resource bounds for the explicit constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest alphabet whose letters may be enumerated.
    pub max_vars: usize,
    /// Largest automaton any single construction may produce.
    pub max_states: usize,
    /// Largest number of distinct subformulas a tableau may track.
    pub max_closure: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vars: 16,
            max_states: 200_000,
            max_closure: 512,
        }
    }
}

impl Limits {
    pub(crate) fn check_states(&self, n: usize) -> Result<()> {
        if n > self.max_states {
            Err(Error::Capacity {
                what: "automaton states",
                limit: self.max_states,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acceptance {
    /// Every state of the run is in the set.
    Safety(StateSet),
    /// Some state of the run is in the set.
    Guarantee(StateSet),
    /// The run visits the set infinitely often.
    Buchi(StateSet),
    /// The run eventually stays inside the set.
    CoBuchi(StateSet),
    /// Every set is visited infinitely often; no sets accepts everything.
    GeneralizedBuchi(Vec<StateSet>),
    /// If every assumption set is visited infinitely often, so is every
    /// guarantee set.
    Gr1 {
        assumptions: Vec<StateSet>,
        guarantees: Vec<StateSet>,
    },
    /// The run visits `recur` infinitely often or eventually stays in `persist`.
    Streett1 { recur: StateSet, persist: StateSet },
}

impl Acceptance {
    pub fn kind(&self) -> &'static str {
        match self {
            Acceptance::Safety(_) => "safety",
            Acceptance::Guarantee(_) => "guarantee",
            Acceptance::Buchi(_) => "buchi",
            Acceptance::CoBuchi(_) => "co-buchi",
            Acceptance::GeneralizedBuchi(_) => "generalized-buchi",
            Acceptance::Gr1 { .. } => "gr1",
            Acceptance::Streett1 { .. } => "streett1",
        }
    }

    /// All state sets, in a fixed order.
    pub fn sets(&self) -> Vec<&StateSet> {
        match self {
            Acceptance::Safety(s) | Acceptance::Guarantee(s) | Acceptance::Buchi(s) | Acceptance::CoBuchi(s) => {
                alloc::vec![s]
            }
            Acceptance::GeneralizedBuchi(v) => v.iter().collect(),
            Acceptance::Gr1 {
                assumptions,
                guarantees,
            } => assumptions.iter().chain(guarantees.iter()).collect(),
            Acceptance::Streett1 { recur, persist } => alloc::vec![recur, persist],
        }
    }

    /// Rebuilds the condition with every set passed through `f`.
    pub fn map_sets(&self, mut f: impl FnMut(&StateSet) -> StateSet) -> Acceptance {
        match self {
            Acceptance::Safety(s) => Acceptance::Safety(f(s)),
            Acceptance::Guarantee(s) => Acceptance::Guarantee(f(s)),
            Acceptance::Buchi(s) => Acceptance::Buchi(f(s)),
            Acceptance::CoBuchi(s) => Acceptance::CoBuchi(f(s)),
            Acceptance::GeneralizedBuchi(v) => Acceptance::GeneralizedBuchi(v.iter().map(&mut f).collect()),
            Acceptance::Gr1 {
                assumptions,
                guarantees,
            } => Acceptance::Gr1 {
                assumptions: assumptions.iter().map(&mut f).collect(),
                guarantees: guarantees.iter().map(&mut f).collect(),
            },
            Acceptance::Streett1 { recur, persist } => Acceptance::Streett1 {
                recur: f(recur),
                persist: f(persist),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub guard: LetterSet,
    pub target: StateId,
}

/// An ω-automaton over the letters of an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaAutomaton {
    alphabet: Alphabet,
    labels: Vec<String>,
    initial: Vec<StateId>,
    transitions: Vec<Vec<Transition>>,
    acceptance: Acceptance,
}

impl OmegaAutomaton {
    /// Assembles an automaton, checking that every index and set fits.
    pub fn new(
        alphabet: Alphabet,
        labels: Vec<String>,
        initial: Vec<StateId>,
        transitions: Vec<Vec<Transition>>,
        acceptance: Acceptance,
    ) -> Result<OmegaAutomaton> {
        let n = labels.len();
        let letters = alphabet.letter_count();
        let bad = |what: &str| Err(Error::VariableSplit(alloc::format!("malformed automaton: {what}")));
        if transitions.len() != n {
            return bad("transition table size");
        }
        if initial.iter().any(|&q| q >= n) {
            return bad("initial state out of range");
        }
        for row in &transitions {
            for t in row {
                if t.target >= n || t.guard.len() != letters {
                    return bad("transition target or guard width");
                }
            }
        }
        if acceptance.sets().iter().any(|s| s.len() != n) {
            return bad("acceptance set width");
        }
        Ok(OmegaAutomaton {
            alphabet,
            labels,
            initial,
            transitions,
            acceptance,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, q: StateId) -> &str {
        &self.labels[q]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn transitions(&self, q: StateId) -> &[Transition] {
        &self.transitions[q]
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn with_acceptance(mut self, acceptance: Acceptance) -> OmegaAutomaton {
        self.acceptance = acceptance;
        self
    }

    pub fn successors(&self, q: StateId, letter: Letter) -> impl Iterator<Item = StateId> + '_ {
        self.transitions[q]
            .iter()
            .filter(move |t| t.guard.contains(letter.index()))
            .map(|t| t.target)
    }

    /// Exactly one initial state and exactly one successor per state and letter.
    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() != 1 {
            return false;
        }
        let letters = self.alphabet.letter_count();
        self.transitions.iter().all(|row| {
            let mut seen = LetterSet::with_capacity(letters);
            for t in row {
                if !seen.is_disjoint(&t.guard) {
                    return false;
                }
                seen.union_with(&t.guard);
            }
            seen.count_ones(..) == letters
        })
    }

    /// Successor table `q * letters + letter`, for deterministic automata.
    pub fn successor_table(&self) -> Result<SuccessorTable> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let letters = self.alphabet.letter_count();
        let mut table = alloc::vec![0; self.num_states() * letters];
        for (q, row) in self.transitions.iter().enumerate() {
            for t in row {
                for l in t.guard.ones() {
                    table[q * letters + l] = t.target;
                }
            }
        }
        Ok(SuccessorTable {
            letters,
            table,
            initial: self.initial[0],
        })
    }

    /// Keeps only states reachable from the initial states, renumbered in
    /// breadth-first order.
    pub fn trimmed(&self) -> OmegaAutomaton {
        let n = self.num_states();
        let mut order = Vec::new();
        let mut index = alloc::vec![usize::MAX; n];
        let mut queue: VecDeque<StateId> = VecDeque::new();
        for &q in &self.initial {
            if index[q] == usize::MAX {
                index[q] = order.len();
                order.push(q);
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for t in &self.transitions[q] {
                if index[t.target] == usize::MAX {
                    index[t.target] = order.len();
                    order.push(t.target);
                    queue.push_back(t.target);
                }
            }
        }
        let remap = |s: &StateSet| {
            let mut out = StateSet::with_capacity(order.len());
            for (new, &old) in order.iter().enumerate() {
                out.set(new, s.contains(old));
            }
            out
        };
        OmegaAutomaton {
            alphabet: self.alphabet.clone(),
            labels: order.iter().map(|&q| self.labels[q].clone()).collect(),
            initial: self.initial.iter().map(|&q| index[q]).collect(),
            transitions: order
                .iter()
                .map(|&q| {
                    self.transitions[q]
                        .iter()
                        .map(|t| Transition {
                            guard: t.guard.clone(),
                            target: index[t.target],
                        })
                        .collect()
                })
                .collect(),
            acceptance: self.acceptance.map_sets(remap),
        }
    }
}

/// Dense transition function of a deterministic automaton.
#[derive(Debug, Clone)]
pub struct SuccessorTable {
    letters: usize,
    table: Vec<StateId>,
    initial: StateId,
}

impl SuccessorTable {
    pub fn next(&self, q: StateId, letter: Letter) -> StateId {
        self.table[q * self.letters + letter.index()]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.table.len() / self.letters
    }
}

/// Collects transitions letter by letter and merges them into guards.
pub(crate) struct Builder {
    letters: usize,
    labels: Vec<String>,
    edges: Vec<BTreeMap<StateId, LetterSet>>,
}

impl Builder {
    pub fn new(alphabet: &Alphabet) -> Builder {
        Builder {
            letters: alphabet.letter_count(),
            labels: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_state(&mut self, label: String) -> StateId {
        self.labels.push(label);
        self.edges.push(BTreeMap::new());
        self.labels.len() - 1
    }

    pub fn add(&mut self, from: StateId, letter: Letter, to: StateId) {
        let letters = self.letters;
        self.edges[from]
            .entry(to)
            .or_insert_with(|| LetterSet::with_capacity(letters))
            .insert(letter.index());
    }

    pub fn add_guard(&mut self, from: StateId, guard: &LetterSet, to: StateId) {
        let letters = self.letters;
        self.edges[from]
            .entry(to)
            .or_insert_with(|| LetterSet::with_capacity(letters))
            .union_with(guard);
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn finish(self, alphabet: Alphabet, initial: Vec<StateId>, acceptance: Acceptance) -> OmegaAutomaton {
        let transitions = self
            .edges
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(target, guard)| Transition { guard, target })
                    .collect()
            })
            .collect();
        OmegaAutomaton {
            alphabet,
            labels: self.labels,
            initial,
            transitions,
            acceptance,
        }
    }
}

/// Breadth-first discovery of product-like states keyed by `K`.
pub(crate) struct Explorer<K> {
    index: BTreeMap<K, StateId>,
    keys: Vec<K>,
    queue: VecDeque<StateId>,
}

impl<K: Ord + Clone> Explorer<K> {
    pub fn new() -> Explorer<K> {
        Explorer {
            index: BTreeMap::new(),
            keys: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    pub fn intern(
        &mut self,
        key: K,
        builder: &mut Builder,
        limits: &Limits,
        label: impl FnOnce(&K) -> String,
    ) -> Result<StateId> {
        if let Some(&s) = self.index.get(&key) {
            return Ok(s);
        }
        let s = builder.add_state(label(&key));
        limits.check_states(s + 1)?;
        self.index.insert(key.clone(), s);
        self.keys.push(key);
        self.queue.push_back(s);
        Ok(s)
    }

    pub fn pop(&mut self) -> Option<(StateId, K)> {
        let s = self.queue.pop_front()?;
        Some((s, self.keys[s].clone()))
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }
}

pub(crate) fn state_set(n: usize, members: impl IntoIterator<Item = StateId>) -> StateSet {
    let mut s = StateSet::with_capacity(n);
    for q in members {
        s.insert(q);
    }
    s
}

pub(crate) fn complement(s: &StateSet) -> StateSet {
    let mut out = s.clone();
    out.toggle_range(..);
    out
}

/// Complements a deterministic Büchi or co-Büchi automaton by swapping the
/// reading of its acceptance set.
pub fn dualize(d: &OmegaAutomaton) -> Result<OmegaAutomaton> {
    if !d.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    let acceptance = match d.acceptance() {
        Acceptance::Buchi(s) => Acceptance::CoBuchi(complement(s)),
        Acceptance::CoBuchi(s) => Acceptance::Buchi(complement(s)),
        _ => {
            return Err(Error::WrongAcceptance {
                expected: "buchi or co-buchi",
            })
        }
    };
    Ok(d.clone().with_acceptance(acceptance))
}
