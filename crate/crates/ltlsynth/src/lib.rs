//! Spec files, artifact formats and the synthesis driver behind the
//! `ltlsynth` command.

pub mod format;
pub mod pipeline;
pub mod spec;
