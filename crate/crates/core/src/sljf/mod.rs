//! Proof search, proof objects and traces for skolemised sequents.

mod engine;
mod proof;
mod trace;
pub mod unify;

pub use engine::*;
pub use proof::*;
pub use trace::*;
