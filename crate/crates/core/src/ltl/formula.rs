use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// LTL formula over named boolean variables.
///
/// Binary temporal operators keep infix order: `Until(a, b)` is `a U b`,
/// "a holds until b". `Before(a, b)` is `a B b`, "a happens strictly before
/// b, or b never happens", defined as `!(!a U b)`.
///
/// Past operators mirror the future ones: `StrongPrev` (`Y`) is false at
/// position 0, `WeakPrev` (`Z`) is true there. `Since(a, b)` is `a S b`,
/// `WeakSince(a, b)` is `a T b` (`a S b` or `a` held all the way back).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Before(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
    StrongPrev(Box<Formula>),
    WeakPrev(Box<Formula>),
    Since(Box<Formula>, Box<Formula>),
    WeakSince(Box<Formula>, Box<Formula>),
    PastBefore(Box<Formula>, Box<Formula>),

    // Derived operators, removed by `expand_derived`.
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Globally(Box<Formula>),
    Finally(Box<Formula>),
    Historically(Box<Formula>),
    Once(Box<Formula>),
    /// `When(a, b)`: whenever `b` first happens, `a` happens with it.
    When(Box<Formula>, Box<Formula>),
    /// Strong variant of `When`: `b` must happen.
    StrongWhen(Box<Formula>, Box<Formula>),
    PastWhen(Box<Formula>, Box<Formula>),
    PastStrongWhen(Box<Formula>, Box<Formula>),
}

macro_rules! unary_ctor {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(#[allow(clippy::should_implement_trait)]
        pub fn $name(f: Formula) -> Formula { Formula::$variant(Box::new(f)) })*
    };
}

macro_rules! binary_ctor {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(pub fn $name(a: Formula, b: Formula) -> Formula {
            Formula::$variant(Box::new(a), Box::new(b))
        })*
    };
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    unary_ctor! {
        not => Not, next => Next, globally => Globally, finally => Finally,
        strong_prev => StrongPrev, weak_prev => WeakPrev,
        historically => Historically, once => Once,
    }

    binary_ctor! {
        and => And, or => Or, implies => Implies, iff => Iff,
        until => Until, weak_until => WeakUntil, before => Before,
        since => Since, weak_since => WeakSince, past_before => PastBefore,
        when => When, strong_when => StrongWhen,
        past_when => PastWhen, past_strong_when => PastStrongWhen,
    }

    /// Conjunction of all items; `true` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::True,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Var(_) => Vec::new(),
            Not(a) | Next(a) | StrongPrev(a) | WeakPrev(a) | Globally(a) | Finally(a) | Historically(a) | Once(a) => {
                alloc::vec![a.as_ref()]
            }
            And(a, b)
            | Or(a, b)
            | Until(a, b)
            | Before(a, b)
            | WeakUntil(a, b)
            | Since(a, b)
            | WeakSince(a, b)
            | PastBefore(a, b)
            | Implies(a, b)
            | Iff(a, b)
            | When(a, b)
            | StrongWhen(a, b)
            | PastWhen(a, b)
            | PastStrongWhen(a, b) => {
                alloc::vec![a.as_ref(), b.as_ref()]
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Formula::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Formula::depth).max().unwrap_or(0)
    }

    pub fn is_past_operator(&self) -> bool {
        use Formula::*;
        matches!(
            self,
            StrongPrev(_)
                | WeakPrev(_)
                | Since(..)
                | WeakSince(..)
                | PastBefore(..)
                | Historically(_)
                | Once(_)
                | PastWhen(..)
                | PastStrongWhen(..)
        )
    }

    pub fn is_future_operator(&self) -> bool {
        use Formula::*;
        matches!(
            self,
            Next(_) | Until(..) | Before(..) | WeakUntil(..) | Globally(_) | Finally(_) | When(..) | StrongWhen(..)
        )
    }

    /// No future operator anywhere in the tree.
    pub fn is_pure_past(&self) -> bool {
        !self.is_future_operator() && self.children().into_iter().all(Formula::is_pure_past)
    }

    /// No temporal operator at all.
    pub fn is_propositional(&self) -> bool {
        !self.is_future_operator()
            && !self.is_past_operator()
            && self.children().into_iter().all(Formula::is_propositional)
    }

    /// Top-level conjuncts, with nested `&` flattened.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::And(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                other => out.push(other),
            }
        }
        out
    }
}

// Precedence levels used by the printer, loosest first.
const P_IMPL: u8 = 0;
const P_OR: u8 = 1;
const P_AND: u8 = 2;
const P_TEMPORAL: u8 = 3;
const P_UNARY: u8 = 4;

impl Formula {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        use Formula::*;
        let (prec, body): (u8, &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result) = match self {
            True => return f.write_str("true"),
            False => return f.write_str("false"),
            Var(v) => return f.write_str(v),
            Not(a) => (P_UNARY, &|f| prefix(f, "!", a)),
            Next(a) => (P_UNARY, &|f| prefix(f, "X ", a)),
            Globally(a) => (P_UNARY, &|f| prefix(f, "G ", a)),
            Finally(a) => (P_UNARY, &|f| prefix(f, "F ", a)),
            StrongPrev(a) => (P_UNARY, &|f| prefix(f, "Y ", a)),
            WeakPrev(a) => (P_UNARY, &|f| prefix(f, "Z ", a)),
            And(a, b) => (P_AND, &|f| infix(f, a, " & ", b, P_AND, P_AND + 1)),
            Or(a, b) => (P_OR, &|f| infix(f, a, " | ", b, P_OR, P_OR + 1)),
            Implies(a, b) => (P_IMPL, &|f| infix(f, a, " -> ", b, P_IMPL + 1, P_IMPL)),
            Iff(a, b) => (P_IMPL, &|f| infix(f, a, " <-> ", b, P_IMPL + 1, P_IMPL)),
            Until(a, b) => (P_TEMPORAL, &|f| infix(f, a, " U ", b, P_UNARY, P_TEMPORAL)),
            WeakUntil(a, b) => (P_TEMPORAL, &|f| infix(f, a, " W ", b, P_UNARY, P_TEMPORAL)),
            Before(a, b) => (P_TEMPORAL, &|f| infix(f, a, " B ", b, P_UNARY, P_TEMPORAL)),
            Since(a, b) => (P_TEMPORAL, &|f| infix(f, a, " S ", b, P_UNARY, P_TEMPORAL)),
            WeakSince(a, b) => (P_TEMPORAL, &|f| infix(f, a, " T ", b, P_UNARY, P_TEMPORAL)),
            // No concrete syntax for these; print their definitions.
            PastBefore(a, b) => {
                let e = Formula::not(Formula::since(Formula::not((**a).clone()), (**b).clone()));
                return e.fmt_prec(f, ctx);
            }
            Historically(_) | Once(_) | When(..) | StrongWhen(..) | PastWhen(..) | PastStrongWhen(..) => {
                return crate::ltl::expand_derived(self).fmt_prec(f, ctx);
            }
        };
        if prec < ctx {
            f.write_str("(")?;
            body(f)?;
            f.write_str(")")
        } else {
            body(f)
        }
    }
}

fn prefix(f: &mut fmt::Formatter<'_>, op: &str, a: &Formula) -> fmt::Result {
    f.write_str(op)?;
    a.fmt_prec(f, P_UNARY)
}

fn infix(f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, lctx: u8, rctx: u8) -> fmt::Result {
    a.fmt_prec(f, lctx)?;
    f.write_str(op)?;
    b.fmt_prec(f, rctx)
}

/// Prints in the concrete syntax accepted by [`crate::ltl::parse`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, P_IMPL)
    }
}
