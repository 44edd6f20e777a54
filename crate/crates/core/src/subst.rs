//! Parallel substitutions over existential, Eigen- and special variables.
//!
//! A substitution binds each variable at most once. Eigen-variables are
//! always bound to a Skolem application of themselves (`u(t⃗)/u`); the
//! arguments record which existential and special variables the
//! Eigen-variable depends on.

use crate::syntax::{Side, Term, Var, VarContext, VarKind};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Entry {
    pub var: Var,
    pub term: Term,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Substitution {
    entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("variable {0} is bound twice")]
    DuplicateBinding(String),
    #[error("binding for Eigen-variable {0} is not a Skolem application of itself")]
    NotSkolem(String),
    #[error("binding for {var} mentions {missing}, which is not declared in the domain")]
    Unbound { var: String, missing: String },
    #[error("variable {0} is bound but not part of the co-domain")]
    OutsideCodomain(String),
    #[error("substitution does not reach a fixpoint on {0}: cyclic dependency")]
    Cycle(String),
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution { entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.entries.iter().map(|e| (&e.var, &e.term))
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.entries.iter().find(|e| e.var == *v).map(|e| &e.term)
    }

    pub fn binds(&self, v: &Var) -> bool {
        self.get(v).is_some()
    }

    pub fn domain(&self) -> VarContext {
        self.entries.iter().map(|e| e.var.clone()).collect()
    }

    /// Adds `t/v`; fails if `v` is already bound.
    pub fn insert(&mut self, v: Var, t: Term) -> Result<(), SubstError> {
        if self.binds(&v) {
            return Err(SubstError::DuplicateBinding(v.name));
        }
        self.entries.push(Entry { var: v, term: t });
        Ok(())
    }

    /// `u(args)/u`.
    pub fn insert_skolem(&mut self, u: Var, args: Vec<Term>) -> Result<(), SubstError> {
        let t = Term::Skolem(u.clone(), args);
        self.insert(u, t)
    }

    /// Overwrite the binding of an already bound variable.
    pub fn replace(&mut self, v: &Var, t: Term) -> bool {
        match self.entries.iter_mut().find(|e| e.var == *v) {
            Some(e) => {
                e.term = t;
                true
            }
            None => false,
        }
    }

    pub fn max_uid(&self) -> u32 {
        self.entries.iter().map(|e| e.var.uid.max(e.term.max_uid())).max().unwrap_or(0)
    }

    pub fn truncate(&mut self, len: usize) {
        self.entries.truncate(len);
    }

    /// Concatenation `σ, τ`. Fails on a variable bound by both.
    pub fn extend(&mut self, other: &Substitution) -> Result<(), SubstError> {
        for e in &other.entries {
            self.insert(e.var.clone(), e.term.clone())?;
        }
        Ok(())
    }

    pub fn concat(&self, other: &Substitution) -> Result<Substitution, SubstError> {
        let mut out = self.clone();
        out.extend(other)?;
        Ok(out)
    }

    /// Renames bound variables and the variables inside the bound terms.
    pub fn rename(&self, map: &BTreeMap<u32, Term>) -> Substitution {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let var = match map.get(&e.var.uid) {
                    Some(Term::Var(w)) => w.clone(),
                    _ => e.var.clone(),
                };
                Entry { var, term: e.term.substitute(map) }
            })
            .collect();
        Substitution { entries }
    }

    /// σ restricted to the variables of `phi`.
    pub fn restrict(&self, phi: &VarContext) -> Substitution {
        let entries = self.entries.iter().filter(|e| phi.contains(&e.var)).cloned().collect();
        Substitution { entries }
    }

    /// σ without the variables of `phi`.
    pub fn remove(&self, phi: &VarContext) -> Substitution {
        let entries = self.entries.iter().filter(|e| !phi.contains(&e.var)).cloned().collect();
        Substitution { entries }
    }

    /// One parallel application.
    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
            Term::Tuple(args) => Term::Tuple(args.iter().map(|a| self.apply(a)).collect()),
            Term::Skolem(u, args) => Term::Skolem(u.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// Iterates [`Substitution::apply`] to a fixpoint, giving up after
    /// `|dom σ| + 1` rounds. A fixpoint that still mentions a bound
    /// non-Eigen variable (a binding `x/x`) also counts as a cycle.
    pub fn apply_fix(&self, t: &Term) -> Result<Term, SubstError> {
        let mut cur = t.clone();
        for _ in 0..=self.len() + 1 {
            let next = self.apply(&cur);
            if next == cur {
                if cur.vars().iter().any(|v| !v.is_eigen() && self.binds(v)) {
                    break;
                }
                return Ok(cur);
            }
            cur = next;
        }
        Err(SubstError::Cycle(format!("{t:?}")))
    }

    /// Typing `σ : domain → codomain`: every bound variable is in the
    /// co-domain, every binding is built from domain variables, and
    /// Eigen-variables are bound to Skolem applications of themselves.
    pub fn typecheck(&self, domain: &VarContext, codomain: &VarContext) -> Result<(), SubstError> {
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            if !seen.insert(e.var.uid) {
                return Err(SubstError::DuplicateBinding(e.var.name.clone()));
            }
            if !codomain.contains(&e.var) {
                return Err(SubstError::OutsideCodomain(e.var.name.clone()));
            }
            let args: Vec<&Term> = match (&e.var.kind, &e.term) {
                (VarKind::Eigen, Term::Skolem(u, args)) if *u == e.var => args.iter().collect(),
                (VarKind::Eigen, _) => return Err(SubstError::NotSkolem(e.var.name.clone())),
                (_, t) => vec![t],
            };
            for t in args {
                if let Some(missing) = t.vars().into_iter().find(|w| !domain.contains(w)) {
                    return Err(SubstError::Unbound { var: e.var.name.clone(), missing: missing.name });
                }
            }
        }
        Ok(())
    }

    pub fn is_typed(&self, domain: &VarContext, codomain: &VarContext) -> bool {
        self.typecheck(domain, codomain).is_ok()
    }

    /// Variables occurring in the image of `v` (Skolem heads excluded for
    /// the variable's own binding).
    fn image_vars(&self, v: &Var) -> Vec<Var> {
        match self.get(v) {
            None => Vec::new(),
            Some(Term::Skolem(u, args)) if u == v => args.iter().flat_map(Term::vars).collect(),
            Some(t) => t.vars(),
        }
    }

    /// Variables occurring in `vσⁿ` for some `n ≥ 1`, ignoring the Skolem
    /// head that every Eigen-variable keeps in its own image.
    pub fn reach(&self, v: &Var) -> BTreeSet<Var> {
        let mut seen = BTreeSet::new();
        let mut stack = self.image_vars(v);
        while let Some(w) = stack.pop() {
            if seen.insert(w.clone()) {
                stack.extend(self.image_vars(&w));
            }
        }
        seen
    }

    pub fn dependency_order(&self) -> DependencyGraph {
        let mut edges = BTreeSet::new();
        let mut nodes = BTreeSet::new();
        for e in &self.entries {
            nodes.insert(e.var.clone());
            for w in self.image_vars(&e.var) {
                nodes.insert(w.clone());
                edges.insert((e.var.clone(), w));
            }
        }
        DependencyGraph { nodes, edges }
    }

    /// Both admissibility conditions for the axiom context `phi`.
    ///
    /// 1. No existential or special variable reaches itself.
    /// 2. The variables of `phi`, together with everything they reach, never
    ///    contain both halves of one `(a_L, a_R)` pair.
    pub fn admissible(&self, phi: &VarContext) -> AdmissibilityVerdict {
        if let Some(v) = self.cycle_violation() {
            return AdmissibilityVerdict::violated(v);
        }
        match self.branch_violation(phi) {
            Some(v) => AdmissibilityVerdict::violated(v),
            None => AdmissibilityVerdict::ok(),
        }
    }

    /// Condition 1 alone.
    pub fn cycle_violation(&self) -> Option<Violation> {
        let mut on_cycle: Vec<Var> = self
            .entries
            .iter()
            .map(|e| &e.var)
            .filter(|v| !v.is_eigen())
            .filter(|v| self.reach(v).contains(v))
            .cloned()
            .collect();
        if on_cycle.is_empty() {
            return None;
        }
        // Report a special variable when one is on the cycle; it names the
        // structural rule that cannot be placed.
        on_cycle.sort_by_key(|v| (!v.is_special(), v.uid));
        let witness = on_cycle[0].clone();
        Some(Violation::Cycle { witness, cycle: on_cycle })
    }

    /// Condition 2 alone.
    pub fn branch_violation(&self, phi: &VarContext) -> Option<Violation> {
        let mut origin: BTreeMap<(u32, Side), (Var, Var)> = BTreeMap::new();
        for v in phi.iter() {
            let mut reached = self.reach(v);
            reached.insert(v.clone());
            for w in reached {
                if let Some(tag) = w.pair {
                    origin.entry((tag.id, tag.side)).or_insert((w.clone(), v.clone()));
                }
            }
        }
        for ((id, side), (left, via_left)) in &origin {
            if *side != Side::L {
                continue;
            }
            if let Some((right, via_right)) = origin.get(&(*id, Side::R)) {
                return Some(Violation::BranchConflict {
                    left: left.clone(),
                    right: right.clone(),
                    via_left: via_left.clone(),
                    via_right: via_right.clone(),
                });
            }
        }
        None
    }
}

/// Which admissibility condition failed, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// Condition 1: `witness` occurs in its own iterated image.
    Cycle { witness: Var, cycle: Vec<Var> },
    /// Condition 2: both halves of a pair are reached from the axiom context.
    BranchConflict { left: Var, right: Var, via_left: Var, via_right: Var },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::Cycle { .. } => 1,
            Violation::BranchConflict { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityVerdict {
    pub ok: bool,
    pub violation: Option<Violation>,
}

impl AdmissibilityVerdict {
    pub fn ok() -> AdmissibilityVerdict {
        AdmissibilityVerdict { ok: true, violation: None }
    }

    pub fn violated(v: Violation) -> AdmissibilityVerdict {
        AdmissibilityVerdict { ok: false, violation: Some(v) }
    }
}

/// Edge `v → w` means `v < w`: `w` occurs in the binding of `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyGraph {
    pub nodes: BTreeSet<Var>,
    pub edges: BTreeSet<(Var, Var)>,
}

impl DependencyGraph {
    pub fn has_edge(&self, from: &Var, to: &Var) -> bool {
        self.edges.contains(&(from.clone(), to.clone()))
    }

    pub fn successors(&self, v: &Var) -> impl Iterator<Item = &Var> {
        let v = v.clone();
        self.edges.iter().filter(move |(a, _)| *a == v).map(|(_, b)| b)
    }

    /// True iff no existential or special variable lies on a directed cycle.
    pub fn acyclic_over_non_eigen(&self) -> bool {
        self.nodes.iter().filter(|v| !v.is_eigen()).all(|v| !self.reaches(v, v))
    }

    fn reaches(&self, from: &Var, target: &Var) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&Var> = self.successors(from).collect();
        while let Some(w) = stack.pop() {
            if w == target {
                return true;
            }
            if seen.insert(w.clone()) {
                stack.extend(self.successors(w));
            }
        }
        false
    }

    /// Orders the nodes so that for every edge `v → w`, `w` comes before `v`.
    /// Ties are broken by uid. Returns `None` on a cycle.
    pub fn linear_extension(&self) -> Option<Vec<Var>> {
        let mut remaining: BTreeSet<Var> = self.nodes.clone();
        let mut out = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let next = remaining
                .iter()
                .find(|v| self.successors(v).all(|w| !remaining.contains(w) || w == *v))?
                .clone();
            remaining.remove(&next);
            out.push(next);
        }
        Some(out)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut namer = crate::syntax::SNamer::default();
        write!(f, "{}", namer.subst(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::PairTag;

    fn ex(name: &str, uid: u32) -> Var {
        Var::new(name, VarKind::Existential, uid)
    }
    fn eig(name: &str, uid: u32) -> Var {
        Var::new(name, VarKind::Eigen, uid)
    }
    fn special(name: &str, uid: u32, pair: Option<(u32, Side)>) -> Var {
        let mut v = Var::new(name, VarKind::Special, uid);
        v.pair = pair.map(|(id, side)| PairTag { id, side });
        v
    }
    fn ctx(vs: &[&Var]) -> VarContext {
        vs.iter().map(|v| (*v).clone()).collect()
    }
    fn v(x: &Var) -> Term {
        Term::var(x)
    }

    #[test]
    fn empty_substitution_typechecks_into_empty_codomain() {
        let x = ex("x", 1);
        assert!(Substitution::new().is_typed(&ctx(&[&x]), &VarContext::new()));
    }

    #[test]
    fn skolem_entry_typechecks() {
        let x2 = ex("x2", 1);
        let u = eig("u", 2);
        let mut s = Substitution::new();
        s.insert_skolem(u.clone(), vec![v(&x2)]).unwrap();
        assert!(s.is_typed(&ctx(&[&x2]), &ctx(&[&u])));
    }

    #[test]
    fn undeclared_term_variable_fails_typecheck() {
        let x = ex("x", 1);
        let y = ex("y", 2);
        let mut s = Substitution::new();
        s.insert(x.clone(), v(&y)).unwrap();
        assert!(matches!(s.typecheck(&VarContext::new(), &ctx(&[&x])), Err(SubstError::Unbound { .. })));
    }

    #[test]
    fn eigen_binding_must_be_skolem() {
        let u = eig("u", 1);
        let x = ex("x", 2);
        let mut s = Substitution::new();
        s.insert(u.clone(), v(&x)).unwrap();
        assert_eq!(s.typecheck(&ctx(&[&x]), &ctx(&[&u])), Err(SubstError::NotSkolem("u".into())));
    }

    #[test]
    fn apply_one_pass() {
        let x1 = ex("x1", 1);
        let u = eig("u", 2);
        let mut s = Substitution::new();
        s.insert(x1.clone(), v(&u)).unwrap();
        let b = Term::App("B".into(), vec![v(&x1)]);
        assert_eq!(s.apply(&b), Term::App("B".into(), vec![v(&u)]));
        assert_eq!(Substitution::new().apply(&b), b);
    }

    #[test]
    fn apply_fix_detects_cycle_through_special() {
        // {u/x, x/b, u(b)/u}
        let x = ex("x", 1);
        let u = eig("u", 2);
        let b = special("b", 3, None);
        let mut s = Substitution::new();
        s.insert(x.clone(), v(&u)).unwrap();
        s.insert(b.clone(), v(&x)).unwrap();
        s.insert_skolem(u.clone(), vec![v(&b)]).unwrap();
        assert!(matches!(s.apply_fix(&v(&b)), Err(SubstError::Cycle(_))));
    }

    #[test]
    fn restrict_and_remove() {
        let x = ex("x", 1);
        let y = ex("y", 2);
        let mut s = Substitution::new();
        s.insert(x.clone(), Term::constant("t")).unwrap();
        s.insert(y.clone(), Term::constant("s")).unwrap();
        assert_eq!(s.restrict(&ctx(&[&x])).domain(), ctx(&[&x]));
        assert_eq!(s.remove(&ctx(&[&x])).domain(), ctx(&[&y]));
        assert!(s.restrict(&VarContext::new()).is_empty());
    }

    #[test]
    fn admissible_example_four() {
        // σ = u/x1, x1/x3, u(x2)/u
        let x1 = ex("x1", 1);
        let x2 = ex("x2", 2);
        let x3 = ex("x3", 3);
        let u = eig("u", 4);
        let al = special("aL", 5, Some((1, Side::L)));
        let ar = special("aR", 6, Some((1, Side::R)));
        let mut s = Substitution::new();
        s.insert(x1.clone(), v(&u)).unwrap();
        s.insert(x3.clone(), v(&x1)).unwrap();
        s.insert_skolem(u.clone(), vec![v(&x2)]).unwrap();
        assert!(s.admissible(&ctx(&[&x1, &al, &x2, &u])).ok);
        assert!(s.admissible(&ctx(&[&x1, &ar, &x3])).ok);
    }

    #[test]
    fn example_five_violates_condition_two() {
        // σ = u/x, u(aR)/u, not admissible for (x, aL)
        let x = ex("x", 1);
        let u = eig("u", 2);
        let al = special("aL", 3, Some((7, Side::L)));
        let ar = special("aR", 4, Some((7, Side::R)));
        let mut s = Substitution::new();
        s.insert(x.clone(), v(&u)).unwrap();
        s.insert_skolem(u.clone(), vec![v(&ar)]).unwrap();
        let verdict = s.admissible(&ctx(&[&x, &al]));
        assert!(!verdict.ok);
        assert_eq!(verdict.violation.unwrap().condition(), 2);
        // The axiom on the right branch alone is fine.
        assert!(s.admissible(&ctx(&[&x, &ar, &u])).ok);
    }

    #[test]
    fn example_six_violates_condition_one_at_b() {
        let x = ex("x", 1);
        let u = eig("u", 2);
        let b = special("b", 3, None);
        let a = special("a", 4, None);
        let mut s = Substitution::new();
        s.insert(x.clone(), v(&u)).unwrap();
        s.insert(b.clone(), v(&x)).unwrap();
        s.insert_skolem(u.clone(), vec![v(&b)]).unwrap();
        let verdict = s.admissible(&ctx(&[&x, &u, &b, &a]));
        match verdict.violation {
            Some(Violation::Cycle { witness, .. }) => assert_eq!(witness, b),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn dependency_edges() {
        let x1 = ex("x1", 1);
        let x2 = ex("x2", 2);
        let u = eig("u", 3);
        let mut s = Substitution::new();
        s.insert_skolem(u.clone(), vec![v(&x2)]).unwrap();
        assert!(s.dependency_order().has_edge(&u, &x2));
        let mut t = Substitution::new();
        t.insert(x1.clone(), v(&u)).unwrap();
        assert!(t.dependency_order().has_edge(&x1, &u));
        assert!(Substitution::new().dependency_order().edges.is_empty());
    }

    #[test]
    fn linear_extension_respects_edges() {
        let x1 = ex("x1", 1);
        let x2 = ex("x2", 2);
        let x3 = ex("x3", 3);
        let u = eig("u", 4);
        let mut s = Substitution::new();
        s.insert(x1.clone(), v(&u)).unwrap();
        s.insert(x3.clone(), v(&x1)).unwrap();
        s.insert_skolem(u.clone(), vec![v(&x2)]).unwrap();
        let order = s.dependency_order().linear_extension().unwrap();
        let pos = |w: &Var| order.iter().position(|z| z == w).unwrap();
        assert!(pos(&x2) < pos(&u) && pos(&u) < pos(&x1) && pos(&x1) < pos(&x3));
    }
}
