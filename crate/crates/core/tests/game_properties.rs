mod support;

use ltlsynth_core::automata::StateSet;
use ltlsynth_core::game::{extract_strategy, gr1_step, solve};
use ltlsynth_core::verify::closed_loop_check;
use proptest::prelude::*;
use support::{arena, brute_force};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verdict_matches_exhaustive_search(a in arena(6)) {
        let game = a.game();
        let w = solve(&game);
        prop_assert_eq!(w.contains(game.initial()), brute_force::realizable(&a), "{:?}", a);
    }

    #[test]
    fn realizable_games_yield_verified_strategies(a in arena(6)) {
        let game = a.game();
        let w = solve(&game);
        if w.contains(game.initial()) {
            let s = extract_strategy(&game, &w).unwrap();
            prop_assert_eq!(closed_loop_check(&game, &s).unwrap(), None);
            for n in &s.nodes {
                prop_assert!(w.contains(n.state));
            }
        }
    }

    #[test]
    fn winning_region_is_a_fixpoint(a in arena(6)) {
        let game = a.game();
        let w = solve(&game);
        prop_assert_eq!(gr1_step(&game, &w.winning).0, w.winning.clone());
        for seq in &w.layers {
            for pair in seq.windows(2) {
                prop_assert!(pair[0].y.is_subset(&pair[1].y));
            }
        }
    }

    #[test]
    fn cpre_is_monotone(a in arena(6), small in any::<u8>(), extra in any::<u8>()) {
        let game = a.game();
        let n = game.num_states();
        let mut s = StateSet::with_capacity(n);
        let mut t = StateSet::with_capacity(n);
        for q in 0..n {
            s.set(q, small >> q & 1 == 1);
            t.set(q, (small | extra) >> q & 1 == 1);
        }
        prop_assert!(game.cpre(&s).is_subset(&game.cpre(&t)));
    }
}

#[test]
fn empty_target_has_empty_cpre() {
    let a = support::Arena {
        table: vec![[0; 4]],
        assumptions: vec![],
        guarantees: vec![vec![true]],
    };
    let game = a.game();
    assert_eq!(game.cpre(&StateSet::with_capacity(1)).count_ones(..), 0);
    let mut all = StateSet::with_capacity(1);
    all.insert(0);
    assert_eq!(game.cpre(&all), all);
}

#[test]
fn output_chooses_successor() {
    // Letter bit 1 is the output: o=1 always reaches state 1.
    let a = support::Arena {
        table: vec![[0, 0, 1, 1], [1, 1, 1, 1]],
        assumptions: vec![],
        guarantees: vec![vec![false, true]],
    };
    let game = a.game();
    let mut good = StateSet::with_capacity(2);
    good.insert(1);
    assert_eq!(game.cpre(&good).count_ones(..), 2);
    assert!(solve(&game).contains(0));
}
