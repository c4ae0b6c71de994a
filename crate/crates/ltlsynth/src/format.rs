//! JSON and DOT renderings of automata and strategies.
//!
//! Transition guards are written as propositional formulas in the LTL
//! concrete syntax and read back with the LTL parser.

use std::fmt::Write;

use anyhow::{bail, ensure, Context, Result};
use ltlsynth_core::automata::{Acceptance, LetterSet, OmegaAutomaton, StateSet, Transition};
use ltlsynth_core::game::MealyStrategy;
use ltlsynth_core::ltl::{eval_letter, parse, Alphabet, Formula};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub variables: Vec<String>,
    pub states: Vec<StateJson>,
    pub initial: Vec<usize>,
    pub transitions: Vec<TransitionJson>,
    pub acceptance: AcceptanceJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub id: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionJson {
    pub from: usize,
    pub to: usize,
    pub guard: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AcceptanceJson {
    Safety {
        states: Vec<usize>,
    },
    Guarantee {
        states: Vec<usize>,
    },
    Buchi {
        states: Vec<usize>,
    },
    CoBuchi {
        states: Vec<usize>,
    },
    GeneralizedBuchi {
        sets: Vec<Vec<usize>>,
    },
    Gr1 {
        assumptions: Vec<Vec<usize>>,
        guarantees: Vec<Vec<usize>>,
    },
    Streett1 {
        recur: Vec<usize>,
        persist: Vec<usize>,
    },
}

/// Propositional formula for a set of letters, by Shannon expansion in
/// variable order.
pub fn guard_formula(alphabet: &Alphabet, guard: &LetterSet) -> Formula {
    fn go(names: &[String], guard: &LetterSet, var: usize, base: usize) -> Formula {
        if var == names.len() {
            return if guard.contains(base) {
                Formula::True
            } else {
                Formula::False
            };
        }
        let lo = go(names, guard, var + 1, base);
        let hi = go(names, guard, var + 1, base | 1 << var);
        let v = Formula::var(names[var].clone());
        let nv = Formula::not(v.clone());
        use Formula::{False, True};
        match (&hi, &lo) {
            _ if hi == lo => lo,
            (True, False) => v,
            (False, True) => nv,
            (True, _) => Formula::or(v, lo),
            (_, True) => Formula::or(nv, hi),
            (False, _) => Formula::and(nv, lo),
            (_, False) => Formula::and(v, hi),
            _ => Formula::or(Formula::and(v, hi), Formula::and(nv, lo)),
        }
    }
    go(alphabet.names(), guard, 0, 0)
}

fn members(s: &StateSet) -> Vec<usize> {
    s.ones().collect()
}

pub fn automaton_to_json(a: &OmegaAutomaton) -> AutomatonJson {
    let acceptance = match a.acceptance() {
        Acceptance::Safety(s) => AcceptanceJson::Safety { states: members(s) },
        Acceptance::Guarantee(s) => AcceptanceJson::Guarantee { states: members(s) },
        Acceptance::Buchi(s) => AcceptanceJson::Buchi { states: members(s) },
        Acceptance::CoBuchi(s) => AcceptanceJson::CoBuchi { states: members(s) },
        Acceptance::GeneralizedBuchi(v) => AcceptanceJson::GeneralizedBuchi {
            sets: v.iter().map(members).collect(),
        },
        Acceptance::Gr1 {
            assumptions,
            guarantees,
        } => AcceptanceJson::Gr1 {
            assumptions: assumptions.iter().map(members).collect(),
            guarantees: guarantees.iter().map(members).collect(),
        },
        Acceptance::Streett1 { recur, persist } => AcceptanceJson::Streett1 {
            recur: members(recur),
            persist: members(persist),
        },
    };
    AutomatonJson {
        variables: a.alphabet().names().to_vec(),
        states: (0..a.num_states())
            .map(|id| StateJson {
                id,
                label: a.label(id).to_string(),
            })
            .collect(),
        initial: a.initial().to_vec(),
        transitions: (0..a.num_states())
            .flat_map(|q| {
                a.transitions(q).iter().map(move |t| TransitionJson {
                    from: q,
                    to: t.target,
                    guard: guard_formula(a.alphabet(), &t.guard).to_string(),
                })
            })
            .collect(),
        acceptance,
    }
}

pub fn automaton_from_json(j: &AutomatonJson) -> Result<OmegaAutomaton> {
    let alphabet = Alphabet::new(j.variables.iter().cloned())?;
    let n = j.states.len();
    for (i, s) in j.states.iter().enumerate() {
        ensure!(s.id == i, "state ids must be 0..{n} in order");
    }
    let set = |v: &Vec<usize>| -> Result<StateSet> {
        let mut s = StateSet::with_capacity(n);
        for &q in v {
            ensure!(q < n, "state {q} out of range");
            s.insert(q);
        }
        Ok(s)
    };
    let sets = |v: &Vec<Vec<usize>>| v.iter().map(set).collect::<Result<Vec<_>>>();
    let acceptance = match &j.acceptance {
        AcceptanceJson::Safety { states } => Acceptance::Safety(set(states)?),
        AcceptanceJson::Guarantee { states } => Acceptance::Guarantee(set(states)?),
        AcceptanceJson::Buchi { states } => Acceptance::Buchi(set(states)?),
        AcceptanceJson::CoBuchi { states } => Acceptance::CoBuchi(set(states)?),
        AcceptanceJson::GeneralizedBuchi { sets: v } => Acceptance::GeneralizedBuchi(sets(v)?),
        AcceptanceJson::Gr1 {
            assumptions,
            guarantees,
        } => Acceptance::Gr1 {
            assumptions: sets(assumptions)?,
            guarantees: sets(guarantees)?,
        },
        AcceptanceJson::Streett1 { recur, persist } => Acceptance::Streett1 {
            recur: set(recur)?,
            persist: set(persist)?,
        },
    };
    let mut transitions: Vec<Vec<Transition>> = vec![Vec::new(); n];
    for t in &j.transitions {
        ensure!(t.from < n && t.to < n, "transition {} -> {} out of range", t.from, t.to);
        let f = parse(&t.guard, &alphabet).with_context(|| format!("guard `{}`", t.guard))?;
        ensure!(f.is_propositional(), "guard `{}` is temporal", t.guard);
        let mut guard = LetterSet::with_capacity(alphabet.letter_count());
        for l in alphabet.letters() {
            guard.set(l.index(), eval_letter(&f, &alphabet, l));
        }
        transitions[t.from].push(Transition { guard, target: t.to });
    }
    let labels = j.states.iter().map(|s| s.label.clone()).collect();
    Ok(OmegaAutomaton::new(
        alphabet,
        labels,
        j.initial.clone(),
        transitions,
        acceptance,
    )?)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. Büchi and safety-style sets draw as double circles;
/// other conditions annotate states with the sets they belong to.
pub fn automaton_to_dot(a: &OmegaAutomaton, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    let single = match a.acceptance() {
        Acceptance::Safety(s) | Acceptance::Guarantee(s) | Acceptance::Buchi(s) | Acceptance::CoBuchi(s) => Some(s),
        _ => None,
    };
    for q in 0..a.num_states() {
        let mut label = format!("{q}");
        let shape = match single {
            Some(s) if s.contains(q) => "doublecircle",
            Some(_) => "circle",
            None => {
                let tags: Vec<String> = a
                    .acceptance()
                    .sets()
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.contains(q))
                    .map(|(i, _)| i.to_string())
                    .collect();
                if !tags.is_empty() {
                    write!(label, "\\n{{{}}}", tags.join(",")).unwrap();
                }
                "circle"
            }
        };
        writeln!(
            out,
            "  {q} [label=\"{label}\", shape={shape}, tooltip=\"{}\"];",
            escape(a.label(q))
        )
        .unwrap();
    }
    for (i, &q) in a.initial().iter().enumerate() {
        writeln!(out, "  init{i} [shape=point];").unwrap();
        writeln!(out, "  init{i} -> {q};").unwrap();
    }
    for q in 0..a.num_states() {
        for t in a.transitions(q) {
            let g = guard_formula(a.alphabet(), &t.guard).to_string();
            writeln!(out, "  {q} -> {} [label=\"{}\"];", t.target, escape(&g)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyJson {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub initial: usize,
    pub nodes: Vec<NodeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    /// Product state the node sits in.
    pub state: usize,
    /// Guarantee currently pursued.
    pub mode: usize,
    pub moves: Vec<MoveJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveJson {
    pub input: Vec<bool>,
    pub output: Vec<bool>,
    pub next: usize,
}

fn bits(v: u32, k: usize) -> Vec<bool> {
    (0..k).map(|i| v >> i & 1 == 1).collect()
}

fn from_bits(b: &[bool]) -> u32 {
    b.iter().enumerate().fold(0, |acc, (i, &x)| acc | u32::from(x) << i)
}

pub fn strategy_to_json(s: &MealyStrategy) -> StrategyJson {
    StrategyJson {
        inputs: s.inputs.clone(),
        outputs: s.outputs.clone(),
        initial: s.initial,
        nodes: s
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| NodeJson {
                id,
                state: n.state,
                mode: n.mode,
                moves: n
                    .moves
                    .iter()
                    .enumerate()
                    .map(|(x, &(y, next))| MoveJson {
                        input: bits(x as u32, s.inputs.len()),
                        output: bits(y, s.outputs.len()),
                        next,
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn strategy_from_json(j: &StrategyJson) -> Result<MealyStrategy> {
    let mut nodes = Vec::new();
    for (i, n) in j.nodes.iter().enumerate() {
        ensure!(n.id == i, "node ids must be in order");
        let mut moves = vec![None; 1 << j.inputs.len()];
        for m in &n.moves {
            ensure!(
                m.input.len() == j.inputs.len() && m.output.len() == j.outputs.len(),
                "valuation width"
            );
            ensure!(m.next < j.nodes.len(), "node {} out of range", m.next);
            moves[from_bits(&m.input) as usize] = Some((from_bits(&m.output), m.next));
        }
        let Some(moves) = moves.into_iter().collect::<Option<Vec<_>>>() else {
            bail!("node {i} does not cover every input");
        };
        nodes.push(ltlsynth_core::game::StrategyNode {
            state: n.state,
            mode: n.mode,
            moves,
        });
    }
    Ok(MealyStrategy {
        inputs: j.inputs.clone(),
        outputs: j.outputs.clone(),
        nodes,
        initial: j.initial,
    })
}

fn valuation(names: &[String], v: u32) -> String {
    let parts: Vec<String> = names
        .iter()
        .enumerate()
        .map(|(i, n)| if v >> i & 1 == 1 { n.clone() } else { format!("!{n}") })
        .collect();
    if parts.is_empty() {
        "true".into()
    } else {
        parts.join(" & ")
    }
}

pub fn strategy_to_dot(s: &MealyStrategy) -> String {
    let mut out = String::from("digraph strategy {\n  rankdir=LR;\n  node [shape=box];\n");
    for (i, n) in s.nodes.iter().enumerate() {
        writeln!(out, "  {i} [label=\"{i}\\nq{} j{}\"];", n.state, n.mode).unwrap();
    }
    writeln!(out, "  init [shape=point];\n  init -> {};", s.initial).unwrap();
    for (i, n) in s.nodes.iter().enumerate() {
        for (x, &(y, next)) in n.moves.iter().enumerate() {
            let label = format!("{} / {}", valuation(&s.inputs, x as u32), valuation(&s.outputs, y));
            writeln!(out, "  {i} -> {next} [label=\"{}\"];", escape(&label)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
