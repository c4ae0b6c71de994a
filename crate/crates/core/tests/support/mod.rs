//! Generators and an exhaustive game oracle shared by the integration tests.
#![allow(dead_code)]

pub mod brute_force;

use ltlsynth_core::automata::{Acceptance, OmegaAutomaton, StateSet, Transition};
use ltlsynth_core::game::Gr1Game;
use ltlsynth_core::ltl::{Alphabet, Formula, LassoWord, Letter};
use proptest::prelude::*;

pub const VARS: [&str; 3] = ["a", "b", "c"];

pub fn alphabet(n: usize) -> Alphabet {
    Alphabet::new(VARS[..n].iter().copied()).unwrap()
}

fn leaf(vars: usize) -> BoxedStrategy<Formula> {
    prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => (0..vars).prop_map(|i| Formula::var(VARS[i])),
    ]
    .boxed()
}

/// Random formulas over every operator of the AST.
pub fn any_formula(vars: usize, depth: u32) -> BoxedStrategy<Formula> {
    leaf(vars)
        .prop_recursive(depth, 32, 2, |inner| {
            let un = |f: fn(Formula) -> Formula| inner.clone().prop_map(f);
            let bin =
                |f: fn(Formula, Formula) -> Formula| (inner.clone(), inner.clone()).prop_map(move |(a, b)| f(a, b));
            prop_oneof![
                un(Formula::not),
                un(Formula::next),
                un(Formula::globally),
                un(Formula::finally),
                un(Formula::strong_prev),
                un(Formula::weak_prev),
                un(Formula::historically),
                un(Formula::once),
                bin(Formula::and),
                bin(Formula::or),
                bin(Formula::implies),
                bin(Formula::iff),
                bin(Formula::until),
                bin(Formula::weak_until),
                bin(Formula::before),
                bin(Formula::since),
                bin(Formula::weak_since),
                bin(Formula::past_before),
                bin(Formula::when),
                bin(Formula::strong_when),
                bin(Formula::past_when),
                bin(Formula::past_strong_when),
            ]
        })
        .boxed()
}

/// Random formulas whose past operators only apply to pure-past operands.
pub fn compilable_formula(vars: usize, depth: u32) -> BoxedStrategy<Formula> {
    let past = leaf(vars).prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::strong_prev),
            inner.clone().prop_map(Formula::weak_prev),
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::since(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
        ]
    });
    prop_oneof![4 => leaf(vars), 1 => past]
        .boxed()
        .prop_recursive(depth, 24, 2, |inner| {
            let un = |f: fn(Formula) -> Formula| inner.clone().prop_map(f);
            let bin =
                |f: fn(Formula, Formula) -> Formula| (inner.clone(), inner.clone()).prop_map(move |(a, b)| f(a, b));
            prop_oneof![
                un(Formula::not),
                un(Formula::next),
                un(Formula::globally),
                un(Formula::finally),
                un(Formula::strong_prev),
                bin(Formula::and),
                bin(Formula::or),
                bin(Formula::implies),
                bin(Formula::until),
                bin(Formula::weak_until),
                bin(Formula::before),
            ]
        })
        .boxed()
}

pub fn lasso(vars: usize) -> impl Strategy<Value = LassoWord> {
    let letter = (0u32..1 << vars).prop_map(Letter);
    (
        prop::collection::vec(letter.clone(), 0..=4),
        prop::collection::vec(letter, 1..=4),
    )
        .prop_map(|(stem, cycle)| LassoWord::new(stem, cycle))
}

/// A random arena over input `i` and output `o`: `table[q][letter]`, with
/// letter bit 0 for `i` and bit 1 for `o`.
#[derive(Debug, Clone)]
pub struct Arena {
    pub table: Vec<[usize; 4]>,
    pub assumptions: Vec<Vec<bool>>,
    pub guarantees: Vec<Vec<bool>>,
}

pub fn arena(max_states: usize) -> impl Strategy<Value = Arena> {
    (1..=max_states)
        .prop_flat_map(|n| {
            let sets = move |k: std::ops::RangeInclusive<usize>| {
                prop::collection::vec(prop::collection::vec(any::<bool>(), n), k)
            };
            let guarantees = if n <= 3 { sets(1..=2) } else { sets(1..=1) };
            (
                prop::collection::vec(prop::array::uniform4(0..n), n),
                sets(0..=2),
                guarantees,
            )
        })
        .prop_map(|(table, assumptions, guarantees)| Arena {
            table,
            assumptions,
            guarantees,
        })
}

impl Arena {
    pub fn game(&self) -> Gr1Game {
        let ab = Alphabet::new(["i", "o"]).unwrap();
        let n = self.table.len();
        let set = |v: &Vec<bool>| {
            let mut s = StateSet::with_capacity(n);
            for (q, &b) in v.iter().enumerate() {
                s.set(q, b);
            }
            s
        };
        let transitions = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(l, &target)| {
                        let mut guard = StateSet::with_capacity(4);
                        guard.insert(l);
                        Transition { guard, target }
                    })
                    .collect()
            })
            .collect();
        let acceptance = Acceptance::Gr1 {
            assumptions: self.assumptions.iter().map(set).collect(),
            guarantees: self.guarantees.iter().map(set).collect(),
        };
        let labels = (0..n).map(|q| q.to_string()).collect();
        let a = OmegaAutomaton::new(ab, labels, vec![0], transitions, acceptance).unwrap();
        Gr1Game::new(a, &["i".to_string()]).unwrap()
    }
}
