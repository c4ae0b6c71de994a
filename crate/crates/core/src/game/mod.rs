//! GR(1) games on deterministic product automata.
//!
//! The environment picks the input valuation `x`, then the system picks the
//! output valuation `y`; the automaton moves on the letter `x ∪ y`. The
//! system wins a play when every guarantee set is visited infinitely often
//! or some assumption set is visited only finitely often.

mod strategy;

use alloc::string::String;
use alloc::vec::Vec;

use crate::automata::{Acceptance, OmegaAutomaton, StateId, StateSet, SuccessorTable};
use crate::ltl::Letter;
use crate::{Error, Result};

pub use strategy::{extract_strategy, MealyStrategy, StrategyNode};

/// A product automaton with its variables split between the players.
#[derive(Debug, Clone)]
pub struct Gr1Game {
    automaton: OmegaAutomaton,
    table: SuccessorTable,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    assumptions: Vec<StateSet>,
    guarantees: Vec<StateSet>,
}

impl Gr1Game {
    /// `inputs` names the environment's variables; every other variable of
    /// the automaton's alphabet belongs to the system.
    pub fn new(automaton: OmegaAutomaton, inputs: &[String]) -> Result<Gr1Game> {
        let Acceptance::Gr1 {
            assumptions,
            guarantees,
        } = automaton.acceptance().clone()
        else {
            return Err(Error::WrongAcceptance { expected: "gr1" });
        };
        if guarantees.is_empty() {
            return Err(Error::NoGuarantees);
        }
        let table = automaton.successor_table()?;
        let alphabet = automaton.alphabet();
        let mut input_ids = Vec::new();
        for name in inputs {
            match alphabet.index_of(name) {
                Some(i) if !input_ids.contains(&i) => input_ids.push(i),
                Some(_) => return Err(Error::VariableSplit(alloc::format!("`{name}` listed twice"))),
                None => {
                    return Err(Error::VariableSplit(alloc::format!(
                        "`{name}` is not a variable of the game"
                    )))
                }
            }
        }
        let outputs = (0..alphabet.len()).filter(|i| !input_ids.contains(i)).collect();
        Ok(Gr1Game {
            automaton,
            table,
            inputs: input_ids,
            outputs,
            assumptions,
            guarantees,
        })
    }

    pub fn automaton(&self) -> &OmegaAutomaton {
        &self.automaton
    }

    pub fn num_states(&self) -> usize {
        self.automaton.num_states()
    }

    pub fn initial(&self) -> StateId {
        self.table.initial()
    }

    pub fn input_names(&self) -> Vec<String> {
        self.inputs
            .iter()
            .map(|&i| self.automaton.alphabet().names()[i].clone())
            .collect()
    }

    pub fn output_names(&self) -> Vec<String> {
        self.outputs
            .iter()
            .map(|&i| self.automaton.alphabet().names()[i].clone())
            .collect()
    }

    pub fn assumptions(&self) -> &[StateSet] {
        &self.assumptions
    }

    pub fn guarantees(&self) -> &[StateSet] {
        &self.guarantees
    }

    pub fn input_count(&self) -> usize {
        1 << self.inputs.len()
    }

    pub fn output_count(&self) -> usize {
        1 << self.outputs.len()
    }

    /// Letter for input valuation `x` and output valuation `y`, bit `k` of
    /// each giving the `k`-th input or output variable.
    pub fn letter(&self, x: u32, y: u32) -> Letter {
        let mut l = Letter(0);
        for (k, &v) in self.inputs.iter().enumerate() {
            l = l.with(v, x >> k & 1 == 1);
        }
        for (k, &v) in self.outputs.iter().enumerate() {
            l = l.with(v, y >> k & 1 == 1);
        }
        l
    }

    pub fn successor(&self, q: StateId, x: u32, y: u32) -> StateId {
        self.table.next(q, self.letter(x, y))
    }

    /// Output valuations in preference order: the first output variable is
    /// the most significant, false before true.
    pub fn outputs_in_order(&self) -> impl Iterator<Item = u32> + '_ {
        let k = self.outputs.len();
        (0..1u32 << k).map(move |code| (0..k).fold(0, |y, o| y | (code >> (k - 1 - o) & 1) << o))
    }

    /// States where for every input some output leads into `target`.
    pub fn cpre(&self, target: &StateSet) -> StateSet {
        let mut out = StateSet::with_capacity(self.num_states());
        for q in 0..self.num_states() {
            let all = (0..self.input_count() as u32)
                .all(|x| (0..self.output_count() as u32).any(|y| target.contains(self.successor(q, x, y))));
            out.set(q, all);
        }
        out
    }
}

/// One iteration of the middle fixpoint for a guarantee: the set `Y^r` and
/// the inner fixpoints `X` for each assumption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub y: StateSet,
    pub x: Vec<StateSet>,
}

/// Winning region plus the intermediate fixpoints a strategy needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinningRegion {
    pub winning: StateSet,
    /// `layers[j][r]` is `Y^{r+1}` for guarantee `j`; the last layer equals
    /// the winning region.
    pub layers: Vec<Vec<Layer>>,
    /// Iterations of the outermost fixpoint.
    pub iterations: usize,
}

impl WinningRegion {
    pub fn contains(&self, q: StateId) -> bool {
        self.winning.contains(q)
    }

    /// Index of the first layer of guarantee `j` containing `q`.
    pub fn rank(&self, j: usize, q: StateId) -> Option<usize> {
        self.layers[j].iter().position(|l| l.y.contains(q))
    }
}

/// Solves the three nested fixpoints
/// `νZ. ⋂_j μY. ⋃_i νX. (Q_j ∩ cpre Z) ∪ cpre Y ∪ (¬P_i ∩ cpre X)`,
/// with `Q_j` the guarantee sets and `P_i` the assumption sets.
pub fn solve(game: &Gr1Game) -> WinningRegion {
    let mut z = StateSet::with_capacity(game.num_states());
    z.insert_range(..);
    let mut iterations = 0;
    loop {
        iterations += 1;
        let (next, layers) = gr1_step(game, &z);
        if next == z {
            return WinningRegion {
                winning: z,
                layers,
                iterations,
            };
        }
        z = next;
    }
}

/// One application of the outer operator: `⋂_j μY. …` for a fixed `Z`,
/// along with the layers of each middle fixpoint.
pub fn gr1_step(game: &Gr1Game, z: &StateSet) -> (StateSet, Vec<Vec<Layer>>) {
    let cpre_z = game.cpre(z);
    let mut next = StateSet::with_capacity(game.num_states());
    next.insert_range(..);
    let mut layers = Vec::new();
    for q_j in game.guarantees() {
        let mut goal = q_j.clone();
        goal.intersect_with(&cpre_z);
        let (y, seq) = middle(game, &goal);
        next.intersect_with(&y);
        layers.push(seq);
    }
    (next, layers)
}

fn middle(game: &Gr1Game, goal: &StateSet) -> (StateSet, Vec<Layer>) {
    let n = game.num_states();
    let mut y = StateSet::with_capacity(n);
    let mut seq = Vec::new();
    loop {
        let mut start = game.cpre(&y);
        start.union_with(goal);
        let layer = if game.assumptions().is_empty() {
            Layer {
                y: start,
                x: Vec::new(),
            }
        } else {
            let xs: Vec<StateSet> = game.assumptions().iter().map(|p| inner(game, &start, p)).collect();
            let mut union = StateSet::with_capacity(n);
            for x in &xs {
                union.union_with(x);
            }
            Layer { y: union, x: xs }
        };
        if layer.y == y {
            return (y, seq);
        }
        y = layer.y.clone();
        seq.push(layer);
    }
}

fn inner(game: &Gr1Game, start: &StateSet, p: &StateSet) -> StateSet {
    let mut x = StateSet::with_capacity(start.len());
    x.insert_range(..);
    loop {
        let mut next = game.cpre(&x);
        next.difference_with(p);
        next.union_with(start);
        if next == x {
            return x;
        }
        x = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile_dba, gr1_product, Limits};
    use crate::ltl::{parse, Alphabet};

    fn game(assume: &[&str], guarantee: &[&str]) -> Gr1Game {
        let ab = Alphabet::new(["r", "g"]).unwrap();
        let dba = |t: &&str| compile_dba(&parse(t, &ab).unwrap(), &ab, &Limits::default()).unwrap();
        let a: Vec<_> = assume.iter().map(dba).collect();
        let g: Vec<_> = guarantee.iter().map(dba).collect();
        Gr1Game::new(gr1_product(&a, &g, &Limits::default()).unwrap(), &["r".into()]).unwrap()
    }

    #[test]
    fn response_is_winning() {
        let g = game(&[], &["G (r -> F g)"]);
        let w = solve(&g);
        assert!(w.contains(g.initial()));
    }

    #[test]
    fn output_cannot_force_input() {
        let g = game(&[], &["G F r"]);
        assert!(!solve(&g).contains(g.initial()));
        let g = game(&["G F r"], &["G F r"]);
        assert!(solve(&g).contains(g.initial()));
    }

    #[test]
    fn cpre_is_monotone_on_chain() {
        let g = game(&[], &["G (r -> F g)"]);
        let n = g.num_states();
        let mut small = StateSet::with_capacity(n);
        small.insert(0);
        let mut big = small.clone();
        big.insert_range(..);
        assert!(g.cpre(&small).is_subset(&g.cpre(&big)));
    }

    #[test]
    fn preference_order() {
        let ab = Alphabet::new(["i", "a", "b"]).unwrap();
        let d = compile_dba(&parse("true", &ab).unwrap(), &ab, &Limits::default()).unwrap();
        let g = Gr1Game::new(gr1_product(&[], &[d], &Limits::default()).unwrap(), &["i".into()]).unwrap();
        // (a, b): (0,0) (0,1) (1,0) (1,1)
        assert_eq!(g.outputs_in_order().collect::<Vec<_>>(), [0b00, 0b10, 0b01, 0b11]);
    }

    #[test]
    fn split_must_name_variables() {
        let ab = Alphabet::new(["r"]).unwrap();
        let d = compile_dba(&parse("true", &ab).unwrap(), &ab, &Limits::default()).unwrap();
        let p = gr1_product(&[], &[d], &Limits::default()).unwrap();
        assert!(matches!(Gr1Game::new(p, &["q".into()]), Err(Error::VariableSplit(_))));
    }
}
