use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Builder, LetterSet, OmegaAutomaton, StateSet};
use crate::{Error, Result};

/// Merges states of a deterministic automaton that agree on every
/// acceptance set and move to equivalent states on every letter (Moore
/// partition refinement). The result is reachable-only, renumbered
/// breadth-first, and each block keeps the label of its first member.
pub fn quotient_minimize(d: &OmegaAutomaton) -> Result<OmegaAutomaton> {
    if !d.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    let d = d.trimmed();
    let n = d.num_states();
    let sets = d.acceptance().sets();
    let mut block: Vec<usize> = renumber((0..n).map(|q| sets.iter().map(|s| s.contains(q)).collect::<Vec<_>>()));
    loop {
        let refined = renumber((0..n).map(|q| {
            let mut moves: BTreeMap<usize, LetterSet> = BTreeMap::new();
            for t in d.transitions(q) {
                moves
                    .entry(block[t.target])
                    .or_insert_with(|| LetterSet::with_capacity(t.guard.len()))
                    .union_with(&t.guard);
            }
            (block[q], moves.into_iter().collect::<Vec<_>>())
        }));
        let stable = refined.iter().max() == block.iter().max();
        block = refined;
        if stable {
            break;
        }
    }

    let blocks = block.iter().max().map_or(0, |m| m + 1);
    let mut first = alloc::vec![usize::MAX; blocks];
    for q in (0..n).rev() {
        first[block[q]] = q;
    }
    let mut builder = Builder::new(d.alphabet());
    for &q in &first {
        builder.add_state(d.label(q).into());
    }
    for (b, &q) in first.iter().enumerate() {
        for t in d.transitions(q) {
            builder.add_guard(b, &t.guard, block[t.target]);
        }
    }
    let lift = |s: &StateSet| {
        let mut out = StateSet::with_capacity(blocks);
        for (b, &q) in first.iter().enumerate() {
            out.set(b, s.contains(q));
        }
        out
    };
    let quotient = builder.finish(
        d.alphabet().clone(),
        alloc::vec![block[d.initial()[0]]],
        d.acceptance().map_sets(lift),
    );
    Ok(quotient.trimmed())
}

/// Dense block numbers for a signature per state, in order of first use.
fn renumber<S: Ord>(signatures: impl Iterator<Item = S>) -> Vec<usize> {
    let mut ids = BTreeMap::new();
    signatures
        .map(|s| {
            let next = ids.len();
            *ids.entry(s).or_insert(next)
        })
        .collect()
}
