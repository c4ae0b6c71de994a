use alloc::string::ToString;

use super::{breakpoint_determinize, dualize, quotient_minimize, to_ncw, Limits, OmegaAutomaton};
use crate::hierarchy::{classify, Class};
use crate::ltl::{Alphabet, Formula};
use crate::{Error, Result};

/// Deterministic Büchi automaton for a recurrence formula: the complement
/// of the determinized co-Büchi automaton of its negation, minimized.
pub fn compile_dba(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<OmegaAutomaton> {
    let classes = classify(f);
    if !classes.contains(Class::Recurrence) {
        return Err(Error::NotInClass {
            formula: f.to_string(),
            required: Class::Recurrence,
            classes,
        });
    }
    let ncw = to_ncw(&Formula::not(f.clone()), alphabet, limits)?;
    let dcw = breakpoint_determinize(&ncw, limits)?;
    quotient_minimize(&dualize(&dcw)?)
}
