use alloc::format;
use alloc::vec::Vec;

use super::{state_set, Acceptance, Builder, Explorer, Limits, OmegaAutomaton};
use crate::{Error, Result};

/// Counter construction turning a generalized Büchi automaton with `k`
/// sets into a Büchi automaton with at most `n·max(k,1)` states.
pub fn degeneralize(gba: &OmegaAutomaton, limits: &Limits) -> Result<OmegaAutomaton> {
    let Acceptance::GeneralizedBuchi(sets) = gba.acceptance() else {
        return Err(Error::WrongAcceptance {
            expected: "generalized-buchi",
        });
    };
    let k = sets.len();
    let label = |&(q, c): &(usize, usize)| format!("{}/{c}", gba.label(q));
    let mut builder = Builder::new(gba.alphabet());
    let mut ex = Explorer::new();
    let initial = gba
        .initial()
        .iter()
        .map(|&q| ex.intern((q, 0), &mut builder, limits, label))
        .collect::<Result<Vec<_>>>()?;
    while let Some((s, (q, c))) = ex.pop() {
        let c2 = if k > 0 && sets[c].contains(q) { (c + 1) % k } else { c };
        for t in gba.transitions(q) {
            let target = ex.intern((t.target, c2), &mut builder, limits, label)?;
            builder.add_guard(s, &t.guard, target);
        }
    }
    let accepting = state_set(
        builder.len(),
        ex.keys()
            .iter()
            .enumerate()
            .filter(|(_, &(q, c))| c == 0 && (k == 0 || sets[0].contains(q)))
            .map(|(s, _)| s),
    );
    Ok(builder.finish(gba.alphabet().clone(), initial, Acceptance::Buchi(accepting)))
}
