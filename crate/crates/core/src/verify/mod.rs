//! Independent checks of compiled automata and extracted strategies.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{accepts, OmegaAutomaton};
use crate::game::{Gr1Game, MealyStrategy};
use crate::ltl::{eval, Formula, LassoWord, Letter};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub word: LassoWord,
    pub oracle: bool,
    pub automaton: bool,
}

/// Outcome of comparing an automaton with the reference semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub formula: String,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs `automaton` and the lasso evaluator of `f` on `samples` random
/// lassos (stem up to 4, cycle 1 to 4), plus every lasso with stem and
/// cycle up to 2 when the alphabet has at most three variables.
pub fn oracle_agreement(f: &Formula, automaton: &OmegaAutomaton, samples: usize, seed: u64) -> AgreementReport {
    let alphabet = automaton.alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = alphabet.letter_count() as u32;
    let mut words: Vec<LassoWord> = (0..samples)
        .map(|_| {
            let stem = rng.gen_range(0..=4);
            let cycle = rng.gen_range(1..=4);
            let mut pick = |k: usize| (0..k).map(|_| Letter(rng.gen_range(0..letters))).collect::<Vec<_>>();
            let stem = pick(stem);
            LassoWord::new(stem, pick(cycle))
        })
        .collect();
    if alphabet.len() <= 3 {
        words.extend(LassoWord::enumerate(alphabet, 2, 2));
    }
    let checked = words.len();
    let mismatches = words
        .into_iter()
        .filter_map(|word| {
            let (oracle, automaton) = (eval(f, alphabet, &word, 0), accepts(automaton, &word));
            (oracle != automaton).then_some(Mismatch {
                word,
                oracle,
                automaton,
            })
        })
        .collect();
    AgreementReport {
        formula: f.to_string(),
        checked,
        mismatches,
    }
}

/// A reachable cycle of the closed loop that satisfies every assumption
/// but never visits guarantee `guarantee`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub guarantee: usize,
    /// Strategy nodes along the cycle; the last one steps back to the first.
    pub cycle: Vec<usize>,
}

/// Checks that every play consistent with `strategy` satisfies the game's
/// GR(1) condition, and that each move matches the game's transitions.
pub fn closed_loop_check(game: &Gr1Game, strategy: &MealyStrategy) -> Result<Option<Violation>> {
    if strategy.inputs != game.input_names() || strategy.outputs != game.output_names() {
        return Err(Error::VariableSplit(
            "strategy and game disagree on the variables".into(),
        ));
    }
    let n = strategy.num_nodes();
    let mut succ: Vec<Vec<usize>> = Vec::with_capacity(n);
    for node in &strategy.nodes {
        if node.moves.len() != game.input_count() {
            return Err(Error::VariableSplit("strategy node does not cover every input".into()));
        }
        let mut out = Vec::new();
        for (x, &(y, next)) in node.moves.iter().enumerate() {
            if next >= n || strategy.nodes[next].state != game.successor(node.state, x as u32, y) {
                return Err(Error::NotDeterministic);
            }
            out.push(next);
        }
        out.sort_unstable();
        out.dedup();
        succ.push(out);
    }
    let state = |v: usize| strategy.nodes[v].state;
    for (j, q_j) in game.guarantees().iter().enumerate() {
        let allowed = |v: usize| !q_j.contains(state(v));
        let mut g: DiGraph<(), ()> = DiGraph::new();
        for _ in 0..n {
            g.add_node(());
        }
        for v in (0..n).filter(|&v| allowed(v)) {
            for &w in succ[v].iter().filter(|&&w| allowed(w)) {
                g.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
            }
        }
        for scc in tarjan_scc(&g) {
            let members: Vec<usize> = scc.iter().map(|v| v.index()).collect();
            let v0 = members[0];
            let nontrivial = members.len() > 1 || (allowed(v0) && succ[v0].contains(&v0));
            if !nontrivial {
                continue;
            }
            let mut stops = Vec::new();
            let all = game
                .assumptions()
                .iter()
                .all(|p| match members.iter().find(|&&v| p.contains(state(v))) {
                    Some(&v) => {
                        stops.push(v);
                        true
                    }
                    None => false,
                });
            if all {
                return Ok(Some(Violation {
                    guarantee: j,
                    cycle: witness(&succ, &members, v0, &stops),
                }));
            }
        }
    }
    Ok(None)
}

/// A cycle from `start` through every node of `stops`, inside `members`.
fn witness(succ: &[Vec<usize>], members: &[usize], start: usize, stops: &[usize]) -> Vec<usize> {
    let mut cycle = alloc::vec![start];
    let mut at = start;
    for &goal in stops.iter().chain(core::iter::once(&start)) {
        let path = shortest(succ, members, at, goal);
        cycle.extend_from_slice(&path[1..]);
        at = goal;
    }
    cycle.pop();
    cycle
}

/// Shortest nonempty path `from → to` inside `members`.
fn shortest(succ: &[Vec<usize>], members: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut parent = alloc::collections::BTreeMap::new();
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if !members.contains(&w) || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, v);
            if w == to {
                let mut path = alloc::vec![to];
                let mut c = to;
                while c != from || path.len() == 1 {
                    c = parent[&c];
                    path.push(c);
                    if c == from {
                        break;
                    }
                }
                path.reverse();
                return path;
            }
            queue.push_back(w);
        }
    }
    unreachable!("nodes share a strongly connected component")
}
