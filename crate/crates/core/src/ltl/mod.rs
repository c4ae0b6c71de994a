//! LTL with past operators: syntax tree, concrete syntax, derived-operator
//! expansion and a reference semantics on ultimately periodic words.

mod eval;
mod expand;
mod formula;
mod parse;
mod word;

pub use eval::{eval, eval_letter};
pub use expand::expand_derived;
pub use formula::Formula;
pub use parse::{parse, parse_with};
pub use word::{Alphabet, LassoWord, Letter};
