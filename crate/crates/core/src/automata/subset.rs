use alloc::string::ToString;
use alloc::vec::Vec;

use super::breakpoint::{post, show};
use super::{state_set, Acceptance, Builder, Explorer, Limits, OmegaAutomaton, StateId};
use crate::{Error, Result};

/// Subset construction for safety and guarantee automata.
///
/// For safety, runs leaving the safe set are dropped and the empty subset
/// is the only rejecting state. For guarantee, the first subset that meets
/// the goal moves to an accepting sink.
pub fn subset_determinize(a: &OmegaAutomaton, limits: &Limits) -> Result<OmegaAutomaton> {
    let (goal, safety) = match a.acceptance() {
        Acceptance::Safety(s) => (s, true),
        Acceptance::Guarantee(s) => (s, false),
        _ => {
            return Err(Error::WrongAcceptance {
                expected: "safety or guarantee",
            })
        }
    };
    a.alphabet().check_enumerable(limits.max_vars)?;
    let keep = |set: Vec<StateId>| -> Vec<StateId> {
        if safety {
            set.into_iter().filter(|&q| goal.contains(q)).collect()
        } else {
            set
        }
    };
    let reached = |set: &[StateId]| !safety && set.iter().any(|&q| goal.contains(q));
    // `None` is the guarantee sink.
    let label = |k: &Option<Vec<StateId>>| match k {
        Some(s) => show(s),
        None => "accept".to_string(),
    };

    let mut builder = Builder::new(a.alphabet());
    let mut ex = Explorer::new();
    let mut init: Vec<StateId> = a.initial().to_vec();
    init.sort_unstable();
    init.dedup();
    let init = keep(init);
    let start = if reached(&init) { None } else { Some(init) };
    let initial = ex.intern(start, &mut builder, limits, label)?;
    while let Some((q, key)) = ex.pop() {
        for letter in a.alphabet().letters() {
            let next = match &key {
                None => None,
                Some(s) => {
                    let s2 = keep(post(a, s, letter));
                    if reached(&s2) {
                        None
                    } else {
                        Some(s2)
                    }
                }
            };
            let target = ex.intern(next, &mut builder, limits, label)?;
            builder.add(q, letter, target);
        }
    }
    let good = ex.keys().iter().enumerate().filter(|(_, k)| match k {
        None => true,
        Some(s) => safety && !s.is_empty(),
    });
    let good = state_set(builder.len(), good.map(|(q, _)| q));
    let acceptance = if safety {
        Acceptance::Safety(good)
    } else {
        Acceptance::Guarantee(good)
    };
    Ok(builder.finish(a.alphabet().clone(), alloc::vec![initial], acceptance))
}
