//! Budgets, verdicts and counters shared by both engines.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// How often each unrestricted entry may be copied in one proof.
    pub copy_bound: u32,
    /// Maximum length of a root-to-leaf path of rule applications.
    pub depth: usize,
    /// Maximum number of rule applications tried overall.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { copy_bound: 2, depth: 40, max_nodes: 2_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Proved,
    Unprovable,
    BudgetExhausted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Proved => "proved",
            Verdict::Unprovable => "unprovable",
            Verdict::BudgetExhausted => "budget_exhausted",
        }
    }

    /// Exit status used by the command line.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Proved => 0,
            Verdict::Unprovable => 1,
            Verdict::BudgetExhausted => 2,
        }
    }
}

/// Which stable-sequent choices are tried first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FocusOrder {
    /// Right focus, then linear assumptions in order, then copies.
    #[default]
    RightFirst,
    /// Linear assumptions, then copies, then right focus.
    LeftFirst,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub node_expansions: u64,
    /// Focus, copy or context choices that were undone.
    pub focus_backtracks: u64,
    /// Quantifier instantiations that were undone to try another term.
    pub term_backtracks: u64,
    pub unifications: u64,
    pub admissibility_checks: u64,
    pub admissibility_failures_cond1: u64,
    pub admissibility_failures_cond2: u64,
    pub copies: u64,
    pub max_depth: usize,
}
