//! Exhaustive GR(1) oracle for tiny arenas.
//!
//! Enumerates every strategy that picks the output from the arena state,
//! the pursued guarantee index and the input, with the index advancing
//! after each visit to its guarantee set. Only decisions at reachable
//! configurations are enumerated. Each complete strategy is model checked
//! with a transitive closure over its closed-loop graph.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use super::Arena;

type Config = (usize, usize);

pub fn realizable(arena: &Arena) -> bool {
    let mut choice = BTreeMap::new();
    search(arena, &mut choice, vec![(0, 0)])
}

fn advance(arena: &Arena, (q, j): Config) -> usize {
    if arena.guarantees[j][q] {
        (j + 1) % arena.guarantees.len()
    } else {
        j
    }
}

fn succ(arena: &Arena, c: Config, x: usize, y: usize) -> Config {
    (arena.table[c.0][x | y << 1], advance(arena, c))
}

/// `choice[c] = (y for x=0, y for x=1)`.
fn search(arena: &Arena, choice: &mut BTreeMap<Config, [usize; 2]>, mut todo: Vec<Config>) -> bool {
    while let Some(&c) = todo.last() {
        if choice.contains_key(&c) {
            todo.pop();
            continue;
        }
        for ys in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            choice.insert(c, ys);
            let mut next = todo.clone();
            next.pop();
            next.push(succ(arena, c, 0, ys[0]));
            next.push(succ(arena, c, 1, ys[1]));
            if search(arena, choice, next) {
                return true;
            }
        }
        choice.remove(&c);
        return false;
    }
    wins(arena, choice)
}

fn wins(arena: &Arena, choice: &BTreeMap<Config, [usize; 2]>) -> bool {
    let nodes: Vec<Config> = choice.keys().copied().collect();
    let id = |c: &Config| nodes.iter().position(|d| d == c).unwrap();
    let k = nodes.len();
    for g in &arena.guarantees {
        let allowed: Vec<bool> = nodes.iter().map(|&(q, _)| !g[q]).collect();
        let mut reach = vec![vec![false; k]; k];
        for (v, &c) in nodes.iter().enumerate() {
            if !allowed[v] {
                continue;
            }
            for x in 0..2 {
                let w = id(&succ(arena, c, x, choice[&c][x]));
                if allowed[w] {
                    reach[v][w] = true;
                }
            }
        }
        for m in 0..k {
            for a in 0..k {
                if reach[a][m] {
                    for b in 0..k {
                        if reach[m][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
        }
        for v in 0..k {
            if !reach[v][v] {
                continue;
            }
            let scc: Vec<usize> = (0..k).filter(|&u| reach[v][u] && reach[u][v]).collect();
            if arena.assumptions.iter().all(|p| scc.iter().any(|&u| p[nodes[u].0])) {
                return false;
            }
        }
    }
    true
}
