use ltlsynth::format::{automaton_from_json, automaton_to_json, strategy_from_json, strategy_to_json};
use ltlsynth::pipeline::{run_text, Options};

const MUTEX: &str =
    "[INPUT_VARS]\nr1 r2\n[OUTPUT_VARS]\ng1 g2\n[GUARANTEE]\nG !(g1 & g2)\nG (r1 -> F g1)\nG (r2 -> F g2)\n";

#[test]
fn product_and_strategy_survive_json() {
    let s = run_text(MUTEX, &Options::default()).unwrap();
    let product = s.game.automaton();
    let text = serde_json::to_string(&automaton_to_json(product)).unwrap();
    assert_eq!(
        &automaton_from_json(&serde_json::from_str(&text).unwrap()).unwrap(),
        product
    );
    let strategy = s.strategy.unwrap();
    let text = serde_json::to_string(&strategy_to_json(&strategy)).unwrap();
    assert_eq!(
        strategy_from_json(&serde_json::from_str(&text).unwrap()).unwrap(),
        strategy
    );
}

#[test]
fn written_dba_reloads() {
    let s = run_text(MUTEX, &Options::default()).unwrap();
    let json = &s.artifacts["guarantee-1.json"];
    let back = automaton_from_json(&serde_json::from_str(json).unwrap()).unwrap();
    assert_eq!(back, s.guarantees[1].dba);
}
