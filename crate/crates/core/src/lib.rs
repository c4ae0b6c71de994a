//! GR(1) synthesis from a fragment of LTL.
//!
//! The pipeline runs: [`ltl::parse`] → [`hierarchy::decompose_gr1`] →
//! [`automata::compile_dba`] per conjunct → [`automata::gr1_product`] →
//! [`game::solve`] → [`game::extract_strategy`], with [`verify`] checking
//! automata against the LTL semantics and strategies against the arena.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automata;
mod error;
pub mod game;
pub mod hierarchy;
pub mod ltl;
pub mod verify;

pub use error::{Error, Result};
