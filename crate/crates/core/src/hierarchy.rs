//! Syntactic classification into the temporal-logic hierarchy and
//! decomposition of GR(1) specifications.
//!
//! A formula's class set is computed bottom-up from its children, one
//! grammar at a time, and then closed upwards (`G, F ⊆ Prefix ⊆ GF, FG ⊆
//! Streett`). The checks are sound, not complete: a formula may denote a
//! recurrence property and still be rejected.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::ltl::{expand_derived, Formula};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    Safety,
    Guarantee,
    Prefix,
    Recurrence,
    Persistence,
    Streett,
}

impl Class {
    pub const ALL: [Class; 6] = [
        Class::Safety,
        Class::Guarantee,
        Class::Prefix,
        Class::Recurrence,
        Class::Persistence,
        Class::Streett,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::Safety => "TL_G",
            Class::Guarantee => "TL_F",
            Class::Prefix => "TL_Prefix",
            Class::Recurrence => "TL_GF",
            Class::Persistence => "TL_FG",
            Class::Streett => "TL_Streett",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of hierarchy classes a formula syntactically belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClassSet(u8);

impl ClassSet {
    pub const EMPTY: ClassSet = ClassSet(0);
    pub const ALL: ClassSet = ClassSet(0b11_1111);

    pub fn of(classes: &[Class]) -> ClassSet {
        ClassSet(classes.iter().fold(0, |acc, c| acc | c.bit()))
    }

    pub fn contains(self, c: Class) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn insert(&mut self, c: Class) {
        self.0 |= c.bit();
    }

    pub fn intersection(self, other: ClassSet) -> ClassSet {
        ClassSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Class> {
        Class::ALL.into_iter().filter(move |c| self.contains(*c))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Adds every class implied by the grammar inclusions.
    pub fn closed(mut self) -> ClassSet {
        use Class::*;
        if self.contains(Safety) || self.contains(Guarantee) {
            self.insert(Prefix);
        }
        if self.contains(Prefix) {
            self.insert(Recurrence);
            self.insert(Persistence);
        }
        if self.contains(Recurrence) || self.contains(Persistence) {
            self.insert(Streett);
        }
        self
    }

    pub fn is_upward_closed(self) -> bool {
        self.closed() == self
    }

    fn negated(self) -> ClassSet {
        use Class::*;
        let mut out = ClassSet::EMPTY;
        for (from, to) in [
            (Guarantee, Safety),
            (Safety, Guarantee),
            (Prefix, Prefix),
            (Persistence, Recurrence),
            (Recurrence, Persistence),
            (Streett, Streett),
        ] {
            if self.contains(from) {
                out.insert(to);
            }
        }
        out.closed()
    }
}

impl fmt::Display for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(c.name())?;
        }
        f.write_str("}")
    }
}

/// Classes whose grammar has a production `op(P_k)` for unary `op`.
const PREV_NEXT: ClassSet = ClassSet(
    1 << Class::Safety as u8
        | 1 << Class::Guarantee as u8
        | 1 << Class::Recurrence as u8
        | 1 << Class::Persistence as u8,
);

fn classify_core(f: &Formula) -> ClassSet {
    use Class::*;
    use Formula::*;
    let set = match f {
        True | False | Var(_) => ClassSet::ALL,
        Not(a) => classify_core(a).negated(),
        And(a, b) | Or(a, b) => classify_core(a).intersection(classify_core(b)),
        Next(a) | StrongPrev(a) | WeakPrev(a) => classify_core(a).intersection(PREV_NEXT),
        // Same-class past binaries appear in G, F, GF and FG.
        Since(a, b) | WeakSince(a, b) => classify_core(a).intersection(classify_core(b)).intersection(PREV_NEXT),
        Until(hold, goal) => {
            let (h, g) = (classify_core(hold), classify_core(goal));
            let mut out = ClassSet::EMPTY;
            if h.contains(Guarantee) && g.contains(Guarantee) {
                out.insert(Guarantee);
            }
            if h.contains(Recurrence) && g.contains(Guarantee) {
                out.insert(Recurrence);
            }
            if h.contains(Persistence) && g.contains(Persistence) {
                out.insert(Persistence);
            }
            out
        }
        WeakUntil(hold, goal) => {
            let (h, g) = (classify_core(hold), classify_core(goal));
            let mut out = ClassSet::EMPTY;
            if h.contains(Safety) && g.contains(Safety) {
                out.insert(Safety);
            }
            if h.contains(Recurrence) && g.contains(Recurrence) {
                out.insert(Recurrence);
            }
            if h.contains(Safety) && g.contains(Persistence) {
                out.insert(Persistence);
            }
            out
        }
        // The grammars have no `B`; use `a B b = !(!a U b)`.
        Before(a, b) => {
            return classify_core(&Formula::not(Formula::until(
                Formula::not((**a).clone()),
                (**b).clone(),
            )))
        }
        PastBefore(a, b) => {
            return classify_core(&Formula::not(Formula::since(
                Formula::not((**a).clone()),
                (**b).clone(),
            )))
        }
        derived => return classify_core(&expand_derived(derived)),
    };
    set.closed()
}

/// Classes of the hierarchy `f` can be derived in.
pub fn classify(f: &Formula) -> ClassSet {
    classify_core(f)
}

/// Assumption and guarantee conjuncts of a GR(1) specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gr1Decomposition {
    pub assumptions: Vec<Formula>,
    pub guarantees: Vec<Formula>,
}

/// Splits `f` at its outermost implication and flattens both sides over
/// `&`. Without a top-level implication everything is a guarantee.
pub fn decompose_gr1(f: &Formula) -> Result<Gr1Decomposition> {
    let (lhs, rhs) = match f {
        Formula::Implies(a, b) => (Some(a.as_ref()), b.as_ref()),
        other => (None, other),
    };
    let check = |side: &Formula| -> Result<Vec<Formula>> {
        side.conjuncts()
            .into_iter()
            .map(|c| {
                let classes = classify(c);
                if classes.contains(Class::Recurrence) {
                    Ok(c.clone())
                } else {
                    Err(Error::Rejected {
                        conjunct: c.to_string(),
                        classes,
                    })
                }
            })
            .collect()
    };
    Ok(Gr1Decomposition {
        assumptions: lhs.map(check).transpose()?.unwrap_or_default(),
        guarantees: check(rhs)?,
    })
}
