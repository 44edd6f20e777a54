mod common;

use common::{context, extra_var, pool, substitution};
use linskol::syntax::{Term, Var};
use proptest::prelude::*;
use std::collections::BTreeSet;

proptest! {
    #![proptest_config(ProptestConfig { cases: 2000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn condition_one_matches_brute_force_and_fixpoint(s in substitution()) {
        common::condition_one(&s)?;
    }

    #[test]
    fn condition_two_matches_brute_force(s in substitution(), phi in context()) {
        common::condition_two(&s, &phi)?;
    }

    #[test]
    fn restrict_and_remove_partition(s in substitution(), phi in context()) {
        common::partition(&s, &phi)?;
    }

    #[test]
    fn typecheck_is_monotone_in_the_codomain(s in substitution(), dom in context(), cod in context(), extra in extra_var()) {
        common::monotone(&s, &dom, &cod, &extra)?;
    }

    #[test]
    fn dependency_edges_follow_binding_images(s in substitution()) {
        let g = s.dependency_order();
        for (v, t) in s.iter() {
            let image: BTreeSet<Var> = match t {
                Term::Skolem(u, args) if u == v => args.iter().flat_map(Term::vars).collect(),
                t => t.vars().into_iter().collect(),
            };
            for w in &image {
                prop_assert!(g.has_edge(v, w));
            }
            prop_assert_eq!(g.successors(v).count(), image.len());
        }
    }
}

fn sample<T: std::fmt::Debug>(strategy: impl Strategy<Value = T>, n: usize) -> Vec<T> {
    use proptest::strategy::ValueTree;
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    (0..n).map(|_| strategy.new_tree(&mut runner).unwrap().current()).collect()
}

#[test]
fn both_outcomes_of_condition_one_are_generated() {
    let cyclic = sample(substitution(), 1000).iter().filter(|s| s.cycle_violation().is_some()).count();
    assert!((100..900).contains(&cyclic), "{cyclic}");
}

#[test]
fn typed_cases_are_generated() {
    let typed = sample((substitution(), context()), 1000)
        .into_iter()
        .filter(|(s, cod)| s.is_typed(&pool().into_iter().collect(), &s.domain().union(cod)))
        .count();
    assert!(typed > 100, "{typed}");
}
