use super::proof::SRule;
use crate::subst::Violation;
use serde::{Deserialize, Serialize};

/// Outcome of trying one axiom candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AxiomOutcome {
    Accepted,
    Clash,
    OccursCheck { var: String },
    Rejected { violation: Violation, explanation: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Rule { rule: SRule, depth: usize, sequent: String },
    Bind { entries: Vec<String> },
    Axiom { rule: SRule, assumption: String, goal: String, outcome: AxiomOutcome },
    Copy { world: String, renamed: Vec<String> },
    Backtrack { rule: SRule, depth: usize },
    Cutoff { reason: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    /// Axiom candidates rejected by admissibility, in search order.
    pub fn rejections(&self) -> Vec<&Violation> {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::Axiom { outcome: AxiomOutcome::Rejected { violation, .. }, .. } => Some(violation),
                _ => None,
            })
            .collect()
    }
}
