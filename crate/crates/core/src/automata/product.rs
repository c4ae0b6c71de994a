use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{state_set, Acceptance, Builder, Explorer, LetterSet, Limits, OmegaAutomaton, StateId};
use crate::{Error, Result};

/// Synchronous product of deterministic Büchi automata, keeping the
/// assumption and guarantee sets apart. Only reachable tuples are built.
pub fn gr1_product(
    assumptions: &[OmegaAutomaton],
    guarantees: &[OmegaAutomaton],
    limits: &Limits,
) -> Result<OmegaAutomaton> {
    let Some(first) = guarantees.first() else {
        return Err(Error::NoGuarantees);
    };
    let parts: Vec<&OmegaAutomaton> = assumptions.iter().chain(guarantees).collect();
    let alphabet = first.alphabet();
    let mut accepting = Vec::new();
    for p in &parts {
        if p.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if !p.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let Acceptance::Buchi(s) = p.acceptance() else {
            return Err(Error::WrongAcceptance { expected: "buchi" });
        };
        accepting.push(s);
    }

    let label = |k: &Vec<StateId>| {
        let items: Vec<String> = k.iter().map(|q| format!("{q}")).collect();
        format!("({})", items.join(","))
    };
    let mut builder = Builder::new(alphabet);
    let mut ex = Explorer::new();
    let start: Vec<StateId> = parts.iter().map(|p| p.initial()[0]).collect();
    let initial = ex.intern(start, &mut builder, limits, label)?;
    let full = {
        let mut s = LetterSet::with_capacity(alphabet.letter_count());
        s.insert_range(..);
        s
    };
    while let Some((q, tuple)) = ex.pop() {
        // Depth-first over components, intersecting guards.
        let mut stack = alloc::vec![(Vec::new(), full.clone())];
        while let Some((prefix, guard)) = stack.pop() {
            let k = prefix.len();
            if k == parts.len() {
                let target = ex.intern(prefix, &mut builder, limits, label)?;
                builder.add_guard(q, &guard, target);
                continue;
            }
            for t in parts[k].transitions(tuple[k]).iter().rev() {
                let g = &guard & &t.guard;
                if g.is_clear() {
                    continue;
                }
                let mut p = prefix.clone();
                p.push(t.target);
                stack.push((p, g));
            }
        }
    }
    let n = builder.len();
    let lift = |i: usize| {
        state_set(
            n,
            ex.keys()
                .iter()
                .enumerate()
                .filter(|(_, k)| accepting[i].contains(k[i]))
                .map(|(s, _)| s),
        )
    };
    let m = assumptions.len();
    let acceptance = Acceptance::Gr1 {
        assumptions: (0..m).map(lift).collect(),
        guarantees: (m..parts.len()).map(lift).collect(),
    };
    Ok(builder.finish(alphabet.clone(), alloc::vec![initial], acceptance))
}
