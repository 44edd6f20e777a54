#![allow(dead_code)]

//! Random substitutions over a small variable pool and the substitution
//! kernel properties checked against them.

use linskol::subst::Substitution;
use linskol::syntax::{PairTag, Side, Term, Var, VarContext, VarKind};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use std::collections::BTreeSet;

pub fn pool() -> Vec<Var> {
    let mut vs: Vec<Var> = (0..4).map(|i| Var::new(format!("x{i}"), VarKind::Existential, 1 + i)).collect();
    vs.extend((0..3).map(|i| Var::new(format!("u{i}"), VarKind::Eigen, 11 + i)));
    for (id, base) in [(1, 21), (2, 23)] {
        for (k, side) in [(0, Side::L), (1, Side::R)] {
            let mut a = Var::new(format!("a{id}{side:?}"), VarKind::Special, base + k);
            a.pair = Some(PairTag { id, side });
            vs.push(a);
        }
    }
    vs.push(Var::new("b", VarKind::Special, 30));
    vs
}

fn non_eigen() -> Vec<Var> {
    pool().into_iter().filter(|v| !v.is_eigen()).collect()
}

fn term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        3 => prop::sample::select(pool()).prop_map(|v| Term::var(&v)),
        1 => Just(Term::constant("t0")),
    ];
    leaf.prop_recursive(depth, 8, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(|args| Term::App("f".into(), args)),
            prop::collection::vec(inner, 1..3).prop_map(Term::Tuple),
        ]
    })
    .boxed()
}

/// Up to eight bindings over distinct variables; Eigen-variables are bound
/// to Skolem terms over non-Eigen arguments.
pub fn substitution() -> impl Strategy<Value = Substitution> {
    let binding = (prop::sample::select(pool()), term(2), prop::sample::subsequence(non_eigen(), 0..3));
    prop::collection::vec(binding, 0..=8).prop_map(|bs| {
        let mut s = Substitution::new();
        for (v, t, args) in bs {
            if s.binds(&v) {
                continue;
            }
            if v.is_eigen() {
                s.insert_skolem(v, args.iter().map(Term::var).collect()).unwrap();
            } else {
                s.insert(v, t).unwrap();
            }
        }
        s
    })
}

pub fn context() -> impl Strategy<Value = VarContext> {
    prop::sample::subsequence(pool(), 0..6).prop_map(|vs| vs.into_iter().collect())
}

/// Does `v` occur in `vσⁿ` for some `1 ≤ n ≤ |dom σ| + 1`?
fn brute_cycle(s: &Substitution, v: &Var) -> bool {
    let mut t = Term::var(v);
    (0..=s.len()).any(|_| {
        t = s.apply(&t);
        t.occurs(v)
    })
}

/// Every variable in `vσⁿ` for `0 ≤ n ≤ |dom σ| + 1`.
fn brute_reach(s: &Substitution, v: &Var) -> BTreeSet<Var> {
    let mut t = Term::var(v);
    let mut out: BTreeSet<Var> = t.vars().into_iter().collect();
    for _ in 0..=s.len() {
        t = s.apply(&t);
        out.extend(t.vars());
    }
    out
}

pub fn condition_one(s: &Substitution) -> Result<(), TestCaseError> {
    let dom = s.domain();
    let sources: Vec<&Var> = dom.iter().filter(|v| !v.is_eigen()).collect();
    let brute = sources.iter().any(|v| brute_cycle(s, v));
    let fix_fails = sources.iter().any(|v| s.apply_fix(&Term::var(v)).is_err());
    let cond1 = s.cycle_violation().is_some();
    prop_assert_eq!(cond1, brute);
    prop_assert_eq!(cond1, fix_fails);
    prop_assert_eq!(!cond1, s.dependency_order().acyclic_over_non_eigen());
    Ok(())
}

pub fn condition_two(s: &Substitution, phi: &VarContext) -> Result<(), TestCaseError> {
    if s.cycle_violation().is_some() {
        return Ok(());
    }
    let mut seen = BTreeSet::new();
    for v in phi.iter() {
        seen.extend(brute_reach(s, v));
    }
    let clash = seen.iter().any(|a| match a.pair {
        Some(PairTag { id, side: Side::L }) => seen.iter().any(|b| b.pair == Some(PairTag { id, side: Side::R })),
        _ => false,
    });
    prop_assert_eq!(s.branch_violation(phi).is_some(), clash);
    prop_assert_eq!(s.admissible(phi).ok, !clash);
    Ok(())
}

pub fn partition(s: &Substitution, phi: &VarContext) -> Result<(), TestCaseError> {
    let kept = s.restrict(phi);
    let dropped = s.remove(phi);
    prop_assert!(kept.iter().all(|(v, _)| phi.contains(v)));
    prop_assert!(dropped.iter().all(|(v, _)| !phi.contains(v)));
    prop_assert_eq!(kept.len() + dropped.len(), s.len());
    for (v, t) in s.iter() {
        let side = if phi.contains(v) { &kept } else { &dropped };
        prop_assert_eq!(side.get(v), Some(t));
    }
    Ok(())
}

pub fn monotone(s: &Substitution, dom: &VarContext, cod: &VarContext, extra: &Var) -> Result<(), TestCaseError> {
    let cod = s.domain().union(cod);
    let dom = dom.union(&cod);
    if s.is_typed(&dom, &cod) {
        prop_assert!(s.is_typed(&dom, &cod.extended(extra)));
    }
    Ok(())
}

pub fn extra_var() -> impl Strategy<Value = Var> {
    prop::sample::select(pool())
}
