//! Benchmark fixtures.

use linskol::gen::{random_batch, GenConfig};
use linskol::syntax::{parse_sequent, ParseOptions, Sequent};

const EXAMPLES: [(&str, &str); 3] = [
    ("focus_order", include_str!("../../../corpus/ex1_focus_order.lin")),
    ("tensor_cycle", include_str!("../../../corpus/ex2_tensor_cycle.lin")),
    ("bang_cycle", include_str!("../../../corpus/ex3_bang_cycle.lin")),
];

pub fn examples() -> Vec<(&'static str, Sequent)> {
    EXAMPLES.iter().map(|(name, src)| (*name, parse_sequent(src, ParseOptions::default()).expect("corpus parses"))).collect()
}

/// A fixed batch of random sequents.
pub fn random(count: usize) -> Vec<Sequent> {
    random_batch(2024, count, &GenConfig::default())
}
