//! The synthesis driver: spec file in, verdict, stats and artifacts out.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::time::{Duration, Instant};

use ltlsynth_core::automata::{compile_dba, gr1_product, Limits, OmegaAutomaton};
use ltlsynth_core::game::{extract_strategy, solve, Gr1Game, MealyStrategy};
use ltlsynth_core::hierarchy::{classify, Class};
use ltlsynth_core::ltl::{parse, Alphabet, Formula};
use ltlsynth_core::verify::{closed_loop_check, oracle_agreement, AgreementReport};
use ltlsynth_core::Error;
use serde_json::json;

use crate::format::{automaton_to_dot, automaton_to_json, strategy_to_dot, strategy_to_json};
use crate::spec::{Item, SpecFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Emit {
    Dot,
    Json,
    #[default]
    Both,
}

impl Emit {
    fn json(self) -> bool {
        self != Emit::Dot
    }

    fn dot(self) -> bool {
        self != Emit::Json
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub limits: Limits,
    pub skip_verify: bool,
    pub seed: u64,
    /// Random lassos per conjunct when checking the compiled automata.
    pub samples: usize,
    pub emit: Emit,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            limits: Limits::default(),
            skip_verify: false,
            seed: 0,
            samples: 1000,
            emit: Emit::Both,
        }
    }
}

/// Why a run stopped before producing a verdict, or why its result could
/// not be trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Parse {
        line: usize,
        message: String,
    },
    Rejected {
        line: usize,
        message: String,
    },
    Capacity(String),
    /// The strategy or a compiled automaton failed its independent check.
    Verification(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse { .. } => 2,
            Failure::Rejected { .. } => 3,
            Failure::Capacity(_) => 4,
            Failure::Verification(_) => 5,
        }
    }

    fn from_core(line: usize, e: Error) -> Failure {
        let message = e.to_string();
        match e {
            Error::Syntax { .. } | Error::UndeclaredVariable(_) => Failure::Parse { line, message },
            Error::Capacity { .. } => Failure::Capacity(message),
            _ => Failure::Rejected { line, message },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse { line: 0, message } | Failure::Rejected { line: 0, message } => f.write_str(message),
            Failure::Parse { line, message } => write!(f, "line {line}: {message}"),
            Failure::Rejected { line, message } => write!(f, "line {line}: rejected: {message}"),
            Failure::Capacity(m) => f.write_str(m),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    /// Time spent building the deterministic automata and their product.
    pub det: Duration,
    pub product_states: usize,
    pub strategy_nodes: usize,
    /// Time spent in the fixpoint computation and strategy extraction.
    pub solve: Duration,
}

impl Stats {
    /// Boolean variables needed to encode the product states.
    pub fn state_vars(&self) -> u32 {
        self.product_states.max(1).next_power_of_two().trailing_zeros()
    }

    pub fn header() -> &'static str {
        "Det (s)\tState Vars\tStrategy Nodes\tSolve(t)"
    }

    pub fn row(&self) -> String {
        format!(
            "{:.3}\t{}\t{}\t{:.3}",
            self.det.as_secs_f64(),
            self.state_vars(),
            self.strategy_nodes,
            self.solve.as_secs_f64()
        )
    }
}

/// A compiled conjunct.
#[derive(Debug, Clone)]
pub struct Conjunct {
    pub line: usize,
    pub formula: Formula,
    pub dba: OmegaAutomaton,
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    pub realizable: bool,
    pub assumptions: Vec<Conjunct>,
    pub guarantees: Vec<Conjunct>,
    pub game: Gr1Game,
    pub strategy: Option<MealyStrategy>,
    pub agreement: Vec<AgreementReport>,
    pub stats: Stats,
    /// File name to contents, in write order.
    pub artifacts: BTreeMap<String, String>,
}

impl Synthesis {
    pub fn exit_code(&self) -> i32 {
        if self.realizable {
            0
        } else {
            1
        }
    }

    pub fn write_artifacts(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, text) in &self.artifacts {
            std::fs::write(dir.join(name), text)?;
        }
        Ok(())
    }
}

pub fn run_text(text: &str, options: &Options) -> Result<Synthesis, Failure> {
    let spec = SpecFile::parse(text).map_err(|e| Failure::Parse {
        line: e.line,
        message: e.message,
    })?;
    run(&spec, options)
}

pub fn run(spec: &SpecFile, options: &Options) -> Result<Synthesis, Failure> {
    let alphabet = Alphabet::new(spec.variables()).map_err(|e| Failure::from_core(0, e))?;
    alphabet
        .check_enumerable(options.limits.max_vars)
        .map_err(|e| Failure::from_core(0, e))?;
    let assumed = conjuncts(&spec.assume, &alphabet)?;
    let guaranteed = conjuncts(&spec.guarantee, &alphabet)?;

    let det_start = Instant::now();
    let compile = |items: Vec<(usize, Formula)>| -> Result<Vec<Conjunct>, Failure> {
        items
            .into_iter()
            .map(|(line, formula)| {
                let dba = compile_dba(&formula, &alphabet, &options.limits).map_err(|e| Failure::from_core(line, e))?;
                Ok(Conjunct { line, formula, dba })
            })
            .collect()
    };
    let assumptions = compile(assumed)?;
    let guarantees = compile(guaranteed)?;
    let dbas = |cs: &[Conjunct]| cs.iter().map(|c| c.dba.clone()).collect::<Vec<_>>();
    let product =
        gr1_product(&dbas(&assumptions), &dbas(&guarantees), &options.limits).map_err(|e| Failure::from_core(0, e))?;
    let det = det_start.elapsed();
    let product_states = product.num_states();
    let game = Gr1Game::new(product, &spec.input_vars).map_err(|e| Failure::from_core(0, e))?;

    let solve_start = Instant::now();
    let region = solve(&game);
    let strategy = match extract_strategy(&game, &region) {
        Ok(s) => Some(s),
        Err(Error::Unrealizable) => None,
        Err(e) => return Err(Failure::from_core(0, e)),
    };
    let solve_time = solve_start.elapsed();

    let mut closed_loop = "skipped";
    let mut agreement = Vec::new();
    if !options.skip_verify {
        if let Some(s) = &strategy {
            match closed_loop_check(&game, s) {
                Ok(None) => closed_loop = "pass",
                Ok(Some(v)) => {
                    return Err(Failure::Verification(format!(
                        "closed loop misses guarantee {} on cycle {:?}",
                        v.guarantee, v.cycle
                    )))
                }
                Err(e) => return Err(Failure::Verification(e.to_string())),
            }
        }
        for (k, c) in assumptions.iter().chain(&guarantees).enumerate() {
            let report = oracle_agreement(&c.formula, &c.dba, options.samples, options.seed.wrapping_add(k as u64));
            if let Some(m) = report.mismatches.first() {
                return Err(Failure::Verification(format!(
                    "line {}: automaton for `{}` disagrees with the semantics on {}",
                    c.line,
                    report.formula,
                    m.word.display(&alphabet)
                )));
            }
            agreement.push(report);
        }
    }

    let stats = Stats {
        det,
        product_states,
        strategy_nodes: strategy.as_ref().map_or(0, MealyStrategy::num_nodes),
        solve: solve_time,
    };
    let mut artifacts = BTreeMap::new();
    let mut emit_automaton = |stem: &str, a: &OmegaAutomaton| {
        if options.emit.json() {
            artifacts.insert(format!("{stem}.json"), pretty(&automaton_to_json(a)));
        }
        if options.emit.dot() {
            artifacts.insert(format!("{stem}.dot"), automaton_to_dot(a, stem));
        }
    };
    for (k, c) in assumptions.iter().enumerate() {
        emit_automaton(&format!("assume-{k}"), &c.dba);
    }
    for (k, c) in guarantees.iter().enumerate() {
        emit_automaton(&format!("guarantee-{k}"), &c.dba);
    }
    emit_automaton("product", game.automaton());
    if let Some(s) = &strategy {
        if options.emit.json() {
            artifacts.insert("strategy.json".into(), pretty(&strategy_to_json(s)));
        }
        if options.emit.dot() {
            artifacts.insert("strategy.dot".into(), strategy_to_dot(s));
        }
    }
    let formulas = |cs: &[Conjunct]| cs.iter().map(|c| c.formula.to_string()).collect::<Vec<_>>();
    let verdict = json!({
        "realizable": strategy.is_some(),
        "inputs": spec.input_vars,
        "outputs": spec.output_vars,
        "assumptions": formulas(&assumptions),
        "guarantees": formulas(&guarantees),
        "product_states": product_states,
        "winning_states": region.winning.count_ones(..),
        "state_vars": stats.state_vars(),
        "strategy_nodes": stats.strategy_nodes,
    });
    artifacts.insert("verdict.json".into(), pretty(&verdict));
    let verification = json!({
        "skipped": options.skip_verify,
        "seed": options.seed,
        "closed_loop": closed_loop,
        "agreement": agreement.iter().map(|r| json!({
            "formula": r.formula,
            "checked": r.checked,
            "mismatches": r.mismatches.len(),
        })).collect::<Vec<_>>(),
    });
    artifacts.insert("verification.json".into(), pretty(&verification));

    Ok(Synthesis {
        realizable: strategy.is_some(),
        assumptions,
        guarantees,
        game,
        strategy,
        agreement,
        stats,
        artifacts,
    })
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses each line and splits it into top-level conjuncts, every one of
/// which has to be a recurrence formula.
fn conjuncts(items: &[Item], alphabet: &Alphabet) -> Result<Vec<(usize, Formula)>, Failure> {
    let mut out = Vec::new();
    for item in items {
        let f = parse(&item.text, alphabet).map_err(|e| Failure::from_core(item.line, e))?;
        for c in f.conjuncts() {
            let classes = classify(c);
            if !classes.contains(Class::Recurrence) {
                let e = Error::Rejected {
                    conjunct: c.to_string(),
                    classes,
                };
                return Err(Failure::from_core(item.line, e));
            }
            out.push((item.line, c.clone()));
        }
    }
    Ok(out)
}
