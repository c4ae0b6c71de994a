use super::Formula;

/// Rewrites derived operators into the core ones.
///
/// The result only uses constants, variables, `!`, `&`, `|`, `X`, `U`, `B`,
/// `W`, `Y`, `Z`, `S`, `T` and past-before.
pub fn expand_derived(f: &Formula) -> Formula {
    use Formula::*;
    let e = |g: &Formula| expand_derived(g);
    match f {
        True => True,
        False => False,
        Var(v) => Var(v.clone()),
        Not(a) => Formula::not(e(a)),
        And(a, b) => Formula::and(e(a), e(b)),
        Or(a, b) => Formula::or(e(a), e(b)),
        Next(a) => Formula::next(e(a)),
        Until(a, b) => Formula::until(e(a), e(b)),
        Before(a, b) => Formula::before(e(a), e(b)),
        WeakUntil(a, b) => Formula::weak_until(e(a), e(b)),
        StrongPrev(a) => Formula::strong_prev(e(a)),
        WeakPrev(a) => Formula::weak_prev(e(a)),
        Since(a, b) => Formula::since(e(a), e(b)),
        WeakSince(a, b) => Formula::weak_since(e(a), e(b)),
        PastBefore(a, b) => Formula::past_before(e(a), e(b)),

        Implies(a, b) => Formula::or(Formula::not(e(a)), e(b)),
        Iff(a, b) => {
            let (a, b) = (e(a), e(b));
            Formula::or(
                Formula::and(a.clone(), b.clone()),
                Formula::and(Formula::not(a), Formula::not(b)),
            )
        }
        // G a = false B !a
        Globally(a) => Formula::before(False, Formula::not(e(a))),
        // F a = true U a
        Finally(a) => Formula::until(True, e(a)),
        Historically(a) => Formula::past_before(False, Formula::not(e(a))),
        Once(a) => Formula::since(True, e(a)),
        When(a, b) => {
            let (a, b) = (e(a), e(b));
            Formula::before(Formula::and(a.clone(), b.clone()), Formula::and(Formula::not(a), b))
        }
        StrongWhen(a, b) => {
            let (a, b) = (e(a), e(b));
            Formula::until(Formula::not(b.clone()), Formula::and(a, b))
        }
        PastWhen(a, b) => {
            let (a, b) = (e(a), e(b));
            Formula::past_before(Formula::and(a.clone(), b.clone()), Formula::and(Formula::not(a), b))
        }
        PastStrongWhen(a, b) => {
            let (a, b) = (e(a), e(b));
            Formula::since(Formula::not(b.clone()), Formula::and(a, b))
        }
    }
}

#[cfg(test)]
/// True when only core alternatives (plus `W` and weak since) occur.
pub(crate) fn is_core(f: &Formula) -> bool {
    use Formula::*;
    let own = !matches!(
        f,
        Implies(..)
            | Iff(..)
            | Globally(_)
            | Finally(_)
            | Historically(_)
            | Once(_)
            | When(..)
            | StrongWhen(..)
            | PastWhen(..)
            | PastStrongWhen(..)
    );
    own && f.children().into_iter().all(is_core)
}
