use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{Acceptance, OmegaAutomaton, StateId, StateSet};
use crate::ltl::LassoWord;

/// Whether some run of `a` on `word` is accepting.
pub fn accepts(a: &OmegaAutomaton, word: &LassoWord) -> bool {
    let lasso = Lasso::build(a, word);
    match a.acceptance() {
        Acceptance::Safety(s) => lasso.restricted_from_start(|q| s.contains(q)),
        Acceptance::Guarantee(s) => lasso.live_hit(|q| s.contains(q)),
        Acceptance::Buchi(s) => lasso.cycle(|_| true, &[s]),
        Acceptance::CoBuchi(s) => lasso.cycle(|q| s.contains(q), &[]),
        Acceptance::GeneralizedBuchi(sets) => {
            let sets: Vec<&StateSet> = sets.iter().collect();
            lasso.cycle(|_| true, &sets)
        }
        Acceptance::Gr1 {
            assumptions,
            guarantees,
        } => {
            let all: Vec<&StateSet> = guarantees.iter().collect();
            lasso.cycle(|_| true, &all) || assumptions.iter().any(|p| lasso.cycle(|q| !p.contains(q), &[]))
        }
        Acceptance::Streett1 { recur, persist } => {
            lasso.cycle(|_| true, &[recur]) || lasso.cycle(|q| persist.contains(q), &[])
        }
    }
}

/// Reachable part of the product of `a` with the positions of a lasso.
struct Lasso {
    nodes: Vec<(StateId, usize)>,
    edges: Vec<Vec<usize>>,
    start: Vec<usize>,
}

impl Lasso {
    fn build(a: &OmegaAutomaton, word: &LassoWord) -> Lasso {
        let mut index = BTreeMap::new();
        let mut nodes = Vec::new();
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        let mut intern =
            |node: (StateId, usize), nodes: &mut Vec<_>, edges: &mut Vec<Vec<usize>>, queue: &mut VecDeque<usize>| {
                *index.entry(node).or_insert_with(|| {
                    nodes.push(node);
                    edges.push(Vec::new());
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                })
            };
        let start: Vec<usize> = a
            .initial()
            .iter()
            .map(|&q| intern((q, 0), &mut nodes, &mut edges, &mut queue))
            .collect();
        while let Some(v) = queue.pop_front() {
            let (q, p) = nodes[v];
            let letter = word.at(p);
            let p2 = word.next_position(p);
            for t in a.successors(q, letter).collect::<Vec<_>>() {
                let w = intern((t, p2), &mut nodes, &mut edges, &mut queue);
                edges[v].push(w);
            }
        }
        Lasso { nodes, edges, start }
    }

    /// Reachable nontrivial SCC of the subgraph on allowed states that
    /// meets every set in `meet`.
    fn cycle(&self, allowed: impl Fn(StateId) -> bool, meet: &[&StateSet]) -> bool {
        let ok = |v: usize| allowed(self.nodes[v].0);
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.nodes.len(), 0);
        for _ in &self.nodes {
            g.add_node(());
        }
        for (v, out) in self.edges.iter().enumerate() {
            if ok(v) {
                for &w in out.iter().filter(|&&w| ok(w)) {
                    g.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
                }
            }
        }
        tarjan_scc(&g).iter().any(|scc| {
            let nontrivial =
                scc.len() > 1 || self.edges[scc[0].index()].contains(&scc[0].index()) && ok(scc[0].index());
            nontrivial
                && meet
                    .iter()
                    .all(|s| scc.iter().any(|v| s.contains(self.nodes[v.index()].0)))
        })
    }

    /// An infinite path from a start node that never leaves allowed states.
    fn restricted_from_start(&self, allowed: impl Fn(StateId) -> bool) -> bool {
        let ok = |v: usize| allowed(self.nodes[v].0);
        let reach = self.reach(self.start.iter().copied().filter(|&v| ok(v)), ok);
        let mut g: DiGraph<(), ()> = DiGraph::new();
        for _ in &self.nodes {
            g.add_node(());
        }
        for (v, out) in self.edges.iter().enumerate() {
            for &w in out {
                if reach[v] && reach[w] {
                    g.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
                }
            }
        }
        tarjan_scc(&g).iter().any(|scc| {
            let v = scc[0].index();
            reach[v] && (scc.len() > 1 || self.edges[v].contains(&v))
        })
    }

    /// A node in an allowed state from which an infinite path continues.
    fn live_hit(&self, hit: impl Fn(StateId) -> bool) -> bool {
        let n = self.nodes.len();
        let mut g: DiGraph<(), ()> = DiGraph::new();
        for _ in 0..n {
            g.add_node(());
        }
        let mut rev = alloc::vec![Vec::new(); n];
        for (v, out) in self.edges.iter().enumerate() {
            for &w in out {
                g.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
                rev[w].push(v);
            }
        }
        let on_cycle = tarjan_scc(&g)
            .into_iter()
            .filter(|scc| scc.len() > 1 || self.edges[scc[0].index()].contains(&scc[0].index()))
            .flatten()
            .map(|v| v.index());
        let mut live = alloc::vec![false; n];
        let mut queue: VecDeque<usize> = on_cycle.collect();
        for &v in &queue {
            live[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &u in &rev[v] {
                if !live[u] {
                    live[u] = true;
                    queue.push_back(u);
                }
            }
        }
        (0..n).any(|v| live[v] && hit(self.nodes[v].0))
    }

    fn reach(&self, from: impl Iterator<Item = usize>, ok: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.nodes.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for v in from {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.edges[v] {
                if ok(w) && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}
