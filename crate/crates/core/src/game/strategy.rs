use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use super::{Gr1Game, WinningRegion};
use crate::automata::StateId;
use crate::{Error, Result};

/// A strategy node: product state plus the guarantee currently pursued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyNode {
    pub state: StateId,
    pub mode: usize,
    /// `moves[x]` is the chosen output valuation and successor node.
    pub moves: Vec<(u32, usize)>,
}

/// Finite-memory Mealy machine for the system player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyStrategy {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub nodes: Vec<StrategyNode>,
    pub initial: usize,
}

impl MealyStrategy {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn step(&self, node: usize, x: u32) -> (u32, usize) {
        self.nodes[node].moves[x as usize]
    }
}

/// Builds the reachable part of the counter strategy from the solver's
/// intermediate fixpoints.
///
/// In mode `j`, a state of `Q_j` moves anywhere inside the winning region
/// and switches to the next guarantee. Elsewhere the system prefers a
/// successor of lower rank, and otherwise stays in the inner fixpoint of
/// the least assumption index containing the state. Ties go to the first
/// output valuation in [`Gr1Game::outputs_in_order`].
pub fn extract_strategy(game: &Gr1Game, region: &WinningRegion) -> Result<MealyStrategy> {
    let start = game.initial();
    if !region.contains(start) {
        return Err(Error::Unrealizable);
    }
    let m = game.guarantees().len();
    let order: Vec<u32> = game.outputs_in_order().collect();
    let choose = |q: StateId, x: u32, ok: &dyn Fn(StateId) -> bool| -> Option<(u32, StateId)> {
        order
            .iter()
            .map(|&y| (y, game.successor(q, x, y)))
            .find(|&(_, t)| ok(t))
    };

    let mut index: BTreeMap<(StateId, usize), usize> = BTreeMap::new();
    let mut nodes: Vec<StrategyNode> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |key: (StateId, usize), nodes: &mut Vec<StrategyNode>, queue: &mut VecDeque<usize>| {
        *index.entry(key).or_insert_with(|| {
            nodes.push(StrategyNode {
                state: key.0,
                mode: key.1,
                moves: Vec::new(),
            });
            queue.push_back(nodes.len() - 1);
            nodes.len() - 1
        })
    };
    let initial = intern((start, 0), &mut nodes, &mut queue);
    while let Some(v) = queue.pop_front() {
        let (q, j) = (nodes[v].state, nodes[v].mode);
        let mut moves = Vec::new();
        for x in 0..game.input_count() as u32 {
            let (y, target, mode) = if game.guarantees()[j].contains(q) {
                let (y, t) = choose(q, x, &|t| region.contains(t)).expect("winning state has a winning move");
                (y, t, (j + 1) % m)
            } else {
                let r = region.rank(j, q).expect("winning state is ranked");
                let lower = if r == 0 {
                    None
                } else {
                    let below = &region.layers[j][r - 1].y;
                    choose(q, x, &|t| below.contains(t))
                };
                let (y, t) = match lower {
                    Some(found) => found,
                    None => {
                        let xs = &region.layers[j][r].x;
                        let i = xs
                            .iter()
                            .position(|s| s.contains(q))
                            .expect("state lies in an inner fixpoint");
                        choose(q, x, &|t| xs[i].contains(t)).expect("inner fixpoint has a move")
                    }
                };
                (y, t, j)
            };
            let next = intern((target, mode), &mut nodes, &mut queue);
            moves.push((y, next));
        }
        nodes[v].moves = moves;
    }
    Ok(MealyStrategy {
        inputs: game.input_names(),
        outputs: game.output_names(),
        nodes,
        initial,
    })
}
