use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{state_set, Acceptance, Builder, Explorer, Limits, OmegaAutomaton, StateId, StateSet};
use crate::ltl::Letter;
use crate::{Error, Result};

pub(crate) fn post(a: &OmegaAutomaton, from: &[StateId], letter: Letter) -> Vec<StateId> {
    let set: BTreeSet<StateId> = from.iter().flat_map(|&q| a.successors(q, letter)).collect();
    set.into_iter().collect()
}

/// States from which some infinite run exists.
pub(crate) fn live_states(a: &OmegaAutomaton) -> StateSet {
    let n = a.num_states();
    let mut g: DiGraph<(), ()> = DiGraph::new();
    for _ in 0..n {
        g.add_node(());
    }
    let mut rev = alloc::vec![Vec::new(); n];
    for q in 0..n {
        for t in a.transitions(q) {
            g.add_edge(NodeIndex::new(q), NodeIndex::new(t.target), ());
            rev[t.target].push(q);
        }
    }
    let mut live = StateSet::with_capacity(n);
    let mut stack = Vec::new();
    for scc in tarjan_scc(&g) {
        let q = scc[0].index();
        if scc.len() > 1 || a.transitions(q).iter().any(|t| t.target == q) {
            for v in scc {
                live.insert(v.index());
                stack.push(v.index());
            }
        }
    }
    while let Some(q) = stack.pop() {
        for &p in &rev[q] {
            if !live.put(p) {
                stack.push(p);
            }
        }
    }
    live
}

pub(crate) fn show(set: &[StateId]) -> String {
    let items: Vec<String> = set.iter().map(|q| format!("{q}")).collect();
    format!("{{{}}}", items.join(","))
}

/// Determinizes a co-Büchi automaton with the breakpoint construction.
///
/// States are pairs `(S, O)` with `O ⊆ S ∩ F`: `S` is the subset of
/// reachable states and `O` the runs that stayed in `F` since the last
/// breakpoint. `O = ∅` marks a breakpoint, after which `O` restarts from
/// `S ∩ F`. The result accepts when `O` is eventually never empty, and has
/// at most `3^n` states.
pub fn breakpoint_determinize(ncw: &OmegaAutomaton, limits: &Limits) -> Result<OmegaAutomaton> {
    let Acceptance::CoBuchi(f) = ncw.acceptance() else {
        return Err(Error::WrongAcceptance { expected: "co-buchi" });
    };
    ncw.alphabet().check_enumerable(limits.max_vars)?;
    // Runs that die cannot be accepting; dropping them early keeps dead
    // states out of the subsets.
    let live = live_states(ncw);
    let in_f = |set: Vec<StateId>| -> Vec<StateId> { set.into_iter().filter(|&q| f.contains(q)).collect() };
    let post = |from: &[StateId], letter| -> Vec<StateId> {
        post(ncw, from, letter)
            .into_iter()
            .filter(|&q| live.contains(q))
            .collect()
    };
    let label = |(s, o): &(Vec<StateId>, Vec<StateId>)| format!("{} / {}", show(s), show(o));

    let mut builder = Builder::new(ncw.alphabet());
    let mut ex = Explorer::new();
    let mut init: Vec<StateId> = ncw.initial().iter().copied().filter(|&q| live.contains(q)).collect();
    init.sort_unstable();
    init.dedup();
    let start = (init.clone(), in_f(init));
    let initial = ex.intern(start, &mut builder, limits, label)?;
    while let Some((q, (s, o))) = ex.pop() {
        for letter in ncw.alphabet().letters() {
            let s2 = post(&s, letter);
            let o2 = if o.is_empty() {
                in_f(s2.clone())
            } else {
                in_f(post(&o, letter))
            };
            let target = ex.intern((s2, o2), &mut builder, limits, label)?;
            builder.add(q, letter, target);
        }
    }
    let tracking = state_set(
        builder.len(),
        ex.keys()
            .iter()
            .enumerate()
            .filter(|(_, (_, o))| !o.is_empty())
            .map(|(q, _)| q),
    );
    Ok(builder.finish(
        ncw.alphabet().clone(),
        alloc::vec![initial],
        Acceptance::CoBuchi(tracking),
    ))
}
