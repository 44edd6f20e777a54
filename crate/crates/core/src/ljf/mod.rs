//! Reference prover for the focused calculus with quantifiers.

mod engine;
mod proof;

pub use engine::*;
pub use proof::*;
