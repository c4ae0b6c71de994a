mod support;

use ltlsynth_core::hierarchy::{classify, Class};
use ltlsynth_core::ltl::{eval, expand_derived, parse, Formula, LassoWord};
use proptest::prelude::*;
use support::{alphabet, any_formula, lasso};

proptest! {
    #[test]
    fn expansion_preserves_meaning(f in any_formula(3, 5), w in lasso(3)) {
        let ab = alphabet(3);
        prop_assert_eq!(eval(&f, &ab, &w, 0), eval(&expand_derived(&f), &ab, &w, 0));
    }

    #[test]
    fn unrolling_changes_nothing(f in any_formula(3, 4), w in lasso(3), t in 0usize..6) {
        let ab = alphabet(3);
        prop_assert_eq!(eval(&f, &ab, &w, t), eval(&f, &ab, &w.unrolled(), t));
    }

    #[test]
    fn before_is_dual_of_until(a in any_formula(2, 3), b in any_formula(2, 3), w in lasso(2), t in 0usize..5) {
        let ab = alphabet(2);
        let lhs = Formula::not(Formula::until(Formula::not(a.clone()), b.clone()));
        prop_assert_eq!(eval(&lhs, &ab, &w, t), eval(&Formula::before(a, b), &ab, &w, t));
    }

    #[test]
    fn weak_until_is_until_or_globally(a in any_formula(2, 3), b in any_formula(2, 3), w in lasso(2), t in 0usize..5) {
        let ab = alphabet(2);
        let weak = eval(&Formula::weak_until(a.clone(), b.clone()), &ab, &w, t);
        let strong = eval(&Formula::until(a.clone(), b), &ab, &w, t);
        prop_assert_eq!(weak, strong || eval(&Formula::globally(a), &ab, &w, t));
    }

    #[test]
    fn classes_are_upward_closed(f in any_formula(3, 5)) {
        prop_assert!(classify(&f).is_upward_closed());
    }

    #[test]
    fn negation_swaps_classes(f in any_formula(3, 5)) {
        let (c, n) = (classify(&f), classify(&Formula::not(f)));
        prop_assert_eq!(c.contains(Class::Safety), n.contains(Class::Guarantee));
        prop_assert_eq!(c.contains(Class::Guarantee), n.contains(Class::Safety));
        prop_assert_eq!(c.contains(Class::Recurrence), n.contains(Class::Persistence));
        prop_assert_eq!(c.contains(Class::Persistence), n.contains(Class::Recurrence));
        prop_assert_eq!(c.contains(Class::Prefix), n.contains(Class::Prefix));
        prop_assert_eq!(c.contains(Class::Streett), n.contains(Class::Streett));
    }

    #[test]
    fn display_reparses(f in any_formula(3, 4), w in lasso(3)) {
        let ab = alphabet(3);
        let back = parse(&f.to_string(), &ab).unwrap();
        // Operators without concrete syntax print as an equivalent formula.
        prop_assert_eq!(eval(&back, &ab, &w, 0), eval(&f, &ab, &w, 0));
    }
}

#[test]
fn previous_operators_at_origin() {
    let ab = alphabet(1);
    let w = LassoWord::new(vec![], vec![ltlsynth_core::ltl::Letter(1)]);
    let a = Formula::var("a");
    assert!(!eval(&Formula::strong_prev(a.clone()), &ab, &w, 0));
    assert!(eval(&Formula::weak_prev(Formula::False), &ab, &w, 0));
    assert!(eval(&Formula::strong_prev(a), &ab, &w, 1));
}
