use alloc::string::String;
use core::fmt;

use crate::hierarchy::{Class, ClassSet};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed formula text; `pos` is a byte offset into the input.
    Syntax {
        pos: usize,
        message: String,
    },
    UndeclaredVariable(String),
    /// A GR(1) conjunct is not syntactically a recurrence formula.
    Rejected {
        conjunct: String,
        classes: ClassSet,
    },
    /// A construction was handed a formula outside the class it requires.
    NotInClass {
        formula: String,
        required: Class,
        classes: ClassSet,
    },
    /// Past operators over future operands that cannot be separated.
    UnsupportedPast(String),
    Capacity {
        what: &'static str,
        limit: usize,
    },
    NotDeterministic,
    WrongAcceptance {
        expected: &'static str,
    },
    AlphabetMismatch,
    NoGuarantees,
    /// Strategy extraction was asked for on a game the system loses.
    Unrealizable,
    VariableSplit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { pos, message } => write!(f, "syntax error at offset {pos}: {message}"),
            Error::UndeclaredVariable(v) => write!(f, "undeclared variable `{v}`"),
            Error::Rejected { conjunct, classes } => {
                write!(f, "conjunct `{conjunct}` is not in TL_GF (classified as {classes})")
            }
            Error::NotInClass {
                formula,
                required,
                classes,
            } => write!(f, "`{formula}` is not in {required} (classified as {classes})"),
            Error::UnsupportedPast(s) => {
                write!(f, "past operator over future operands is not supported: `{s}`")
            }
            Error::Capacity { what, limit } => write!(f, "capacity exceeded: {what} > {limit}"),
            Error::NotDeterministic => f.write_str("automaton is not deterministic"),
            Error::WrongAcceptance { expected } => {
                write!(f, "automaton has the wrong acceptance condition, expected {expected}")
            }
            Error::AlphabetMismatch => f.write_str("automata are over different alphabets"),
            Error::NoGuarantees => f.write_str("a GR(1) product needs at least one guarantee"),
            Error::Unrealizable => f.write_str("specification is unrealizable"),
            Error::VariableSplit(s) => write!(f, "input/output split mismatch: {s}"),
        }
    }
}

impl core::error::Error for Error {}
