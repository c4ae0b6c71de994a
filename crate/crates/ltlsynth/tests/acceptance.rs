//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::cell::Cell;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ltlsynth::pipeline::{run_text, Options, Stats};
use ltlsynth_core::automata::{
    accepts, breakpoint_determinize, compile_dba, dualize, gr1_product, quotient_minimize, to_ncw, Acceptance, Limits,
    OmegaAutomaton, StateSet, Transition,
};
use ltlsynth_core::game::{gr1_step, solve};
use ltlsynth_core::hierarchy::{classify, Class, ClassSet};
use ltlsynth_core::ltl::{parse, Alphabet, Formula};
use ltlsynth_core::verify::oracle_agreement;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", oracle_equivalence),
        ("breakpoint size bound", breakpoint_bound),
        ("classification table", classification),
        ("synthesis verdicts", verdicts),
        ("brute-force game oracle", brute_force_oracle),
        ("stats columns and hand-made automaton", stats_and_manual),
        ("structural invariants", structural_invariants),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {name} ({detail}; {secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn limits() -> Limits {
    Limits::default()
}

/// Alphabet of the variables `f` mentions, in name order.
fn own_alphabet(f: &Formula) -> Alphabet {
    let vars = f.variables();
    if vars.is_empty() {
        Alphabet::new(["a"]).unwrap()
    } else {
        Alphabet::new(vars).unwrap()
    }
}

/// Recurrence formulas over a, b, c. Together they use every production of
/// the recurrence grammar at least once, and through negation every
/// production of the persistence grammar.
const RECURRENCE_CORPUS: &[&str] = &[
    // plain recurrence and response
    "G F a",
    "G (a -> F b)",
    "G (a -> F (b & c))",
    // conjunction, disjunction
    "G F a & G F b",
    "G F a | G F b",
    // next
    "X G F a",
    "G (a -> X F b)",
    // strong and weak previous
    "G F (b & Y a)",
    "G (Z a -> F b)",
    "G (b -> Y (F a))",
    // since and weak since
    "G F (a S b)",
    "G (b -> F (a T c))",
    "G (c -> F (true S a))",
    "G ((a T false) | F b)",
    // strong until with a recurrence hold and a guarantee goal
    "(G F a) U b",
    "(G (a -> F b)) U (c & X c)",
    // weak until between recurrence formulas
    "(G F a) W (G F b)",
    "(a U b) W (G F c)",
    // negated persistence
    "!(F G a)",
    "!(F G a | F G (b -> X c))",
    "!(F (a & G !b))",
    // prefix, safety and guarantee formulas
    "G a",
    "F a",
    "G a | F b",
    "a U b",
    "a B b",
    "G (a -> X (b W c))",
    "G (a -> (b U c))",
];

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (k, text) in RECURRENCE_CORPUS.iter().enumerate() {
        let f = parse_free(text);
        check(classify(&f).contains(Class::Recurrence), || {
            format!("`{text}` is not classified TL_GF")
        })?;
        let ab = own_alphabet(&f);
        let d = compile_dba(&f, &ab, &limits()).map_err(|e| format!("`{text}`: {e}"))?;
        let report = oracle_agreement(&f, &d, 1000, 1000 + k as u64);
        if let Some(m) = report.mismatches.first() {
            return Err(format!(
                "`{text}` disagrees on {} (semantics {}, automaton {})",
                m.word.display(&ab),
                m.oracle,
                m.automaton
            ));
        }
        checked += report.checked;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} formulas, {checked} lassos, 0 mismatches",
        RECURRENCE_CORPUS.len()
    ))
}

fn parse_free(text: &str) -> Formula {
    ltlsynth_core::ltl::parse_with(text, |_| true).unwrap_or_else(|e| panic!("`{text}`: {e}"))
}

fn breakpoint_bound() -> Outcome {
    let mut worst = (0, 0);
    let mut count = 0;
    for text in RECURRENCE_CORPUS {
        let f = parse_free(text);
        let ab = own_alphabet(&f);
        let ncw = to_ncw(&Formula::not(f), &ab, &limits()).map_err(|e| format!("`{text}`: {e}"))?;
        let dcw = breakpoint_determinize(&ncw, &limits()).map_err(|e| format!("`{text}`: {e}"))?;
        let n = ncw.num_states() as u32;
        let bound = 3u128.pow(n) + 1;
        check((dcw.num_states() as u128) <= bound, || {
            format!("`!({text})`: {} states from an NCW with {n}", dcw.num_states())
        })?;
        if dcw.num_states() > worst.1 {
            worst = (ncw.num_states(), dcw.num_states());
        }
        count += 1;
    }
    Ok(format!(
        "{count} NCWs, largest result {} states from {} NCW states",
        worst.1, worst.0
    ))
}

fn classification() -> Outcome {
    use Class::*;
    let prefix_up = [Prefix, Recurrence, Persistence, Streett];
    let g = [&[Safety][..], &prefix_up].concat();
    let f = [&[Guarantee][..], &prefix_up].concat();
    let table: Vec<(&str, Vec<Class>)> = vec![
        ("a", Class::ALL.to_vec()),
        ("true", Class::ALL.to_vec()),
        ("G a", g.clone()),
        ("F a", f.clone()),
        ("!(G a)", f.clone()),
        ("!(F a)", g.clone()),
        ("a W b", g.clone()),
        ("a U b", f.clone()),
        ("X a", Class::ALL.to_vec()),
        ("a S b", Class::ALL.to_vec()),
        ("G a | F b", prefix_up.to_vec()),
        ("G F a", vec![Recurrence, Streett]),
        ("F G a", vec![Persistence, Streett]),
        ("!(G F a)", vec![Persistence, Streett]),
        ("!(F G a)", vec![Recurrence, Streett]),
        ("G (r -> F g)", vec![Recurrence, Streett]),
        ("G F a & G F b", vec![Recurrence, Streett]),
        ("G F a | F G b", vec![Streett]),
        ("(G F a) U b", vec![Recurrence, Streett]),
        ("G (F a U b)", vec![Recurrence, Streett]),
        ("F G a -> G F b", vec![Recurrence, Streett]),
        ("G F a -> G F b", vec![Streett]),
    ];
    for (text, expected) in &table {
        let got = classify(&parse_free(text));
        check(got == ClassSet::of(expected), || {
            format!("classify({text}) = {got}, expected {}", ClassSet::of(expected))
        })?;
    }
    let mut r = runner(200);
    let seen = Cell::new(0);
    r.run(&support::any_formula(3, 5), |f| {
        let c = classify(&f);
        let n = classify(&Formula::not(f.clone()));
        prop_assert!(c.is_upward_closed(), "{} -> {}", f, c);
        prop_assert_eq!(c.contains(Safety), n.contains(Guarantee), "{}", f);
        prop_assert_eq!(c.contains(Guarantee), n.contains(Safety), "{}", f);
        prop_assert_eq!(c.contains(Recurrence), n.contains(Persistence), "{}", f);
        prop_assert_eq!(c.contains(Persistence), n.contains(Recurrence), "{}", f);
        prop_assert_eq!(c.contains(Prefix), n.contains(Prefix), "{}", f);
        prop_assert_eq!(c.contains(Streett), n.contains(Streett), "{}", f);
        seen.set(seen.get() + 1);
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!("{} table rows, {} random formulas", table.len(), seen.get()))
}

const ARBITER: &str = "\
[INPUT_VARS]
r
[OUTPUT_VARS]
g
[GUARANTEE]
G (r -> F g)
";

const MUTEX: &str = "\
[INPUT_VARS]
r1 r2
[OUTPUT_VARS]
g1 g2
[GUARANTEE]
G !(g1 & g2)
G (r1 -> F g1)
G (r2 -> F g2)
";

/// Two senders hand data to a receiver that is only sometimes ready; an
/// acknowledgement needs a delivery, and deliveries need a ready receiver.
const GENBUF: &str = "\
[INPUT_VARS]
s1 s2 ready
[OUTPUT_VARS]
a1 a2 deliver
[ASSUME]
G F ready
[GUARANTEE]
G !(a1 & a2)
G ((a1 | a2) -> deliver)
G (deliver -> ready)
G (s1 -> F a1)
G (s2 -> F a2)
";

const ECHO: &str = "\
[INPUT_VARS]
r
[OUTPUT_VARS]
g
[GUARANTEE]
G (g <-> X r)
";

const BLOCKED: &str = "\
[INPUT_VARS]
r
[OUTPUT_VARS]
g
[GUARANTEE]
G F g
G !g
";

fn verdicts() -> Outcome {
    let corpus = [
        ("arbiter", ARBITER, true),
        ("mutex", MUTEX, true),
        ("genbuf", GENBUF, true),
        ("echo", ECHO, false),
        ("blocked", BLOCKED, false),
    ];
    let mut rows = Vec::new();
    for (name, text, expected) in corpus {
        let start = Instant::now();
        let s = run_text(text, &Options::default()).map_err(|e| format!("{name}: {e}"))?;
        let elapsed = start.elapsed();
        check(s.realizable == expected, || {
            format!("{name}: realizable = {}", s.realizable)
        })?;
        if expected {
            check(
                s.artifacts["verification.json"].contains("\"closed_loop\": \"pass\""),
                || format!("{name}: no closed-loop pass recorded"),
            )?;
        }
        check(elapsed < Duration::from_secs(10), || {
            format!("{name}: took {elapsed:?}")
        })?;
        rows.push(format!(
            "{name} {}",
            if s.realizable { "realizable" } else { "unrealizable" }
        ));
    }
    // Dropping the fairness assumption loses the buffer.
    let unfair = GENBUF.replace("[ASSUME]\nG F ready\n", "");
    let s = run_text(&unfair, &Options::default()).map_err(|e| e.to_string())?;
    check(!s.realizable, || "genbuf without its assumption is realizable".into())?;
    Ok(rows.join(", "))
}

fn brute_force_oracle() -> Outcome {
    let mut r = runner(400);
    let (wins, losses) = (Cell::new(0), Cell::new(0));
    r.run(&support::arena(6), |a| {
        let game = a.game();
        let verdict = solve(&game).contains(game.initial());
        prop_assert_eq!(verdict, support::brute_force::realizable(&a), "{:?}", a);
        let counter = if verdict { &wins } else { &losses };
        counter.set(counter.get() + 1);
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    let (wins, losses) = (wins.get(), losses.get());
    check(wins > 0 && losses > 0, || {
        format!("degenerate corpus: {wins} realizable, {losses} unrealizable")
    })?;
    Ok(format!(
        "{} arenas, {wins} realizable, {losses} unrealizable, all verdicts equal",
        wins + losses
    ))
}

/// Idle is accepting; a pending request moves to waiting until a grant.
fn manual_response() -> OmegaAutomaton {
    let ab = Alphabet::new(["r", "g"]).unwrap();
    let guard = |letters: &[usize]| {
        let mut s = StateSet::with_capacity(4);
        letters.iter().for_each(|&l| s.insert(l));
        s
    };
    // letter bit 0 is r, bit 1 is g
    let idle = vec![
        Transition {
            guard: guard(&[0, 2, 3]),
            target: 0,
        },
        Transition {
            guard: guard(&[1]),
            target: 1,
        },
    ];
    let waiting = vec![
        Transition {
            guard: guard(&[2, 3]),
            target: 0,
        },
        Transition {
            guard: guard(&[0, 1]),
            target: 1,
        },
    ];
    let mut accepting = StateSet::with_capacity(2);
    accepting.insert(0);
    OmegaAutomaton::new(
        ab,
        vec!["idle".into(), "waiting".into()],
        vec![0],
        vec![idle, waiting],
        Acceptance::Buchi(accepting),
    )
    .unwrap()
}

fn stats_and_manual() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let columns = ["Det (s)", "State Vars", "Strategy Nodes", "Solve(t)"];
    let mut rows = Vec::new();
    for (name, text) in [
        ("arbiter", ARBITER),
        ("mutex", MUTEX),
        ("genbuf", GENBUF),
        ("echo", ECHO),
    ] {
        let spec = dir.path().join(format!("{name}.spec"));
        let out = dir.path().join(name);
        std::fs::write(&spec, text).map_err(|e| e.to_string())?;
        let o = Command::new(env!("CARGO_BIN_EXE_ltlsynth"))
            .arg("synth")
            .arg(&spec)
            .arg("--out")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&o.stdout);
        let lines: Vec<&str> = stdout.lines().collect();
        let header = lines
            .iter()
            .position(|l| *l == Stats::header())
            .ok_or_else(|| format!("{name}: no header"))?;
        check(Stats::header().split('\t').eq(columns), || "header columns".into())?;
        let row: Vec<&str> = lines
            .get(header + 1)
            .ok_or_else(|| format!("{name}: no row"))?
            .split('\t')
            .collect();
        check(row.len() == 4, || format!("{name}: row {row:?}"))?;
        let verdict: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out.join("verdict.json")).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        let states = verdict["product_states"].as_u64().unwrap();
        let vars: u64 = row[1].parse().map_err(|_| format!("{name}: state vars `{}`", row[1]))?;
        check(
            1u64 << vars >= states && (vars == 0 || 1u64 << (vars - 1) < states),
            || format!("{name}: {vars} state vars for {states} states"),
        )?;
        check(
            verdict["strategy_nodes"] == row[2].parse::<u64>().unwrap_or(u64::MAX),
            || format!("{name}: strategy nodes {}", row[2]),
        )?;
        rows.push(format!("{name}: {}", row.join(" ")));
    }

    let manual = manual_response();
    let ab = manual.alphabet().clone();
    let f = parse("G (r -> F g)", &ab).unwrap();
    let report = oracle_agreement(&f, &manual, 500, 3);
    check(report.agrees(), || {
        "hand-made automaton disagrees with the formula".into()
    })?;
    let auto = compile_dba(&f, &ab, &limits()).map_err(|e| e.to_string())?;
    let with_manual = gr1_product(&[], &[manual], &limits()).map_err(|e| e.to_string())?;
    let with_auto = gr1_product(&[], &[auto], &limits()).map_err(|e| e.to_string())?;
    check(with_manual.num_states() <= with_auto.num_states(), || {
        format!(
            "manual product {} > automatic {}",
            with_manual.num_states(),
            with_auto.num_states()
        )
    })?;
    rows.push(format!(
        "arbiter product manual {} vs automatic {}",
        with_manual.num_states(),
        with_auto.num_states()
    ));
    Ok(rows.join("; "))
}

fn structural_invariants() -> Outcome {
    let ab = support::alphabet(2);
    let dba = |f: &Formula| {
        compile_dba(
            f,
            &ab,
            &Limits {
                max_states: 4_000,
                ..limits()
            },
        )
        .ok()
    };
    let cases: [Cell<usize>; 5] = Default::default();

    runner(64)
        .run(&(support::compilable_formula(2, 4), support::lasso(2)), |(f, w)| {
            let Some(d) = dba(&f) else { return Ok(()) };
            cases[0].set(cases[0].get() + 1);
            for q in 0..d.num_states() {
                for l in d.alphabet().letters() {
                    prop_assert_eq!(d.successors(q, l).count(), 1, "{}", f);
                }
            }
            let c = dualize(&d).unwrap();
            prop_assert_eq!(accepts(&c, &w), !accepts(&d, &w));
            prop_assert_eq!(&dualize(&c).unwrap(), &d);
            cases[1].set(cases[1].get() + 1);
            let once = quotient_minimize(&d).unwrap();
            prop_assert_eq!(&quotient_minimize(&once).unwrap(), &once);
            cases[2].set(cases[2].get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    runner(200)
        .run(&(support::arena(6), any::<u8>(), any::<u8>()), |(a, small, extra)| {
            let game = a.game();
            let n = game.num_states();
            let mut s = StateSet::with_capacity(n);
            let mut t = StateSet::with_capacity(n);
            for q in 0..n {
                s.set(q, small >> q & 1 == 1);
                t.set(q, (small | extra) >> q & 1 == 1);
            }
            prop_assert!(game.cpre(&s).is_subset(&game.cpre(&t)));
            cases[3].set(cases[3].get() + 1);
            let w = solve(&game);
            prop_assert_eq!(gr1_step(&game, &w.winning).0, w.winning.clone());
            cases[4].set(cases[4].get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let cases = cases.map(Cell::into_inner);
    check(cases.iter().all(|&c| c >= 32), || {
        format!("too few effective cases: {cases:?}")
    })?;
    Ok(format!(
        "totality {}, dualize {}, quotient {}, cpre {}, fixpoint {} cases",
        cases[0], cases[1], cases[2], cases[3], cases[4]
    ))
}
