//! Skolemisation-based proof search for first-order focused intuitionistic
//! linear logic.

pub mod gen;
pub mod ljf;
pub mod reconstruct;
pub mod report;
pub mod search;
pub mod skolem;
pub mod sljf;
pub mod subst;
pub mod syntax;

pub use subst::{AdmissibilityVerdict, DependencyGraph, Substitution, Violation};
pub use syntax::{Formula, Polarity, SFormula, SSequent, Sequent, Term, Var, VarContext, VarKind};
