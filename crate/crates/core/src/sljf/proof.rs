use super::unify::resolve;
use crate::subst::Substitution;
use crate::syntax::{Closure, SAtom, SFocus, SFormula, SSequent, Term, Var, VarContext};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SRule {
    AxNeg,
    AxPos,
    LolliL,
    LolliR,
    TensorL,
    TensorR,
    BangL,
    BangR,
    Copy,
    FocusL,
    FocusR,
    BlurL,
    BlurR,
}

impl SRule {
    pub fn name(self) -> &'static str {
        match self {
            SRule::AxNeg => "ax-",
            SRule::AxPos => "ax+",
            SRule::LolliL => "-oL",
            SRule::LolliR => "-oR",
            SRule::TensorL => "*L",
            SRule::TensorR => "*R",
            SRule::BangL => "!L",
            SRule::BangR => "!R",
            SRule::Copy => "copy",
            SRule::FocusL => "focusL",
            SRule::FocusR => "focusR",
            SRule::BlurL => "blurL",
            SRule::BlurR => "blurR",
        }
    }
}

impl fmt::Display for SRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which closure a copy used and how its variables were renamed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyInfo {
    pub world: Var,
    pub renaming: Vec<(Var, Var)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SProof {
    pub rule: SRule,
    pub conclusion: SSequent,
    pub premises: Vec<SProof>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copy: Option<CopyInfo>,
    /// Fresh world given to each unrestricted entry by `!R`, in context order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub worlds: Vec<(Var, Var)>,
}

impl SProof {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(SProof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(SProof::height).max().unwrap_or(0)
    }

    pub fn count(&self, rule: SRule) -> usize {
        usize::from(self.rule == rule) + self.premises.iter().map(|p| p.count(rule)).sum::<usize>()
    }

    /// Axiom leaves as `(focused or resource atom, goal atom)`.
    pub fn axioms(&self) -> Vec<(&SAtom, &SAtom)> {
        let mut out = Vec::new();
        self.collect_axioms(&mut out);
        out
    }

    fn collect_axioms<'a>(&'a self, out: &mut Vec<(&'a SAtom, &'a SAtom)>) {
        match (self.rule, &self.conclusion.focus, &self.conclusion.goal) {
            (SRule::AxNeg, SFocus::Left(SFormula::Atom(a)), SFormula::Atom(b)) => out.push((a, b)),
            (SRule::AxPos, SFocus::Right, SFormula::Atom(b)) => {
                if let Some(SFormula::Atom(a)) = self.conclusion.delta.first() {
                    out.push((a, b));
                }
            }
            _ => {}
        }
        self.premises.iter().for_each(|p| p.collect_axioms(out));
    }
}

/// A proof with the substitution built during search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SProofDoc {
    pub proof: SProof,
    pub sigma: Substitution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("at node {}: {message}", display_path(path))]
pub struct CheckError {
    /// Premise indices from the root.
    pub path: Vec<usize>,
    pub message: String,
}

pub(crate) fn display_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

pub(crate) fn same_multiset<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    sorted(a.to_vec()) == sorted(b.to_vec())
}

pub(crate) fn without<T: PartialEq + Clone>(delta: &[T], f: &T) -> Option<Vec<T>> {
    let i = delta.iter().position(|g| g == f)?;
    let mut out = delta.to_vec();
    out.remove(i);
    Some(out)
}

fn atom_terms_equal(sigma: &Substitution, a: &SAtom, b: &SAtom) -> bool {
    a.pred == b.pred
        && a.polarity == b.polarity
        && a.args.len() == b.args.len()
        && a.args.iter().zip(&b.args).all(|(s, t)| resolve(sigma, s) == resolve(sigma, t))
}

/// Every variable mentioned in a closure body, nested closures included.
pub fn body_vars(body: &SFormula) -> BTreeSet<Var> {
    body.all_vars().into_iter().collect()
}

/// The variables a copy of `c` must rename.
pub fn copy_domain(c: &Closure) -> Vec<Var> {
    let mut vs: BTreeSet<Var> = body_vars(&c.body);
    for (v, t) in c.sigma.iter() {
        vs.insert(v.clone());
        vs.extend(t.vars());
    }
    vs.into_iter().filter(|v| !c.phi.contains(v) && *v != c.world).collect()
}

pub fn rename_map(pairs: &[(Var, Var)]) -> BTreeMap<u32, Term> {
    pairs.iter().map(|(v, w)| (v.uid, Term::var(w))).collect()
}

fn tuple_vars(t: &Term) -> BTreeSet<Var> {
    t.vars().into_iter().collect()
}

struct Checker<'a> {
    sigma: &'a Substitution,
    axioms: Vec<VarContext>,
}

impl Checker<'_> {
    fn node(&mut self, p: &SProof, path: &mut Vec<usize>) -> Result<(), CheckError> {
        self.local(p).map_err(|message| CheckError { path: path.clone(), message })?;
        for (i, q) in p.premises.iter().enumerate() {
            path.push(i);
            self.node(q, path)?;
            path.pop();
        }
        Ok(())
    }

    fn local(&mut self, p: &SProof) -> Result<(), String> {
        let c = &p.conclusion;
        let arity = match p.rule {
            SRule::AxNeg | SRule::AxPos => 0,
            SRule::LolliL | SRule::TensorR => 2,
            _ => 1,
        };
        if p.premises.len() != arity {
            return Err(format!("{} expects {arity} premise(s), found {}", p.rule, p.premises.len()));
        }
        let prem = |i: usize| &p.premises[i].conclusion;
        let same_gamma = |q: &SSequent| {
            if q.gamma == c.gamma {
                Ok(())
            } else {
                Err("unrestricted context changed".to_string())
            }
        };
        let expect = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };
        match p.rule {
            SRule::AxNeg => {
                let (SFocus::Left(SFormula::Atom(a)), SFormula::Atom(b)) = (&c.focus, &c.goal) else {
                    return Err("ax- needs a focused atom and an atomic goal".into());
                };
                expect(a.polarity == crate::syntax::Polarity::Negative, "ax- on a positive atom")?;
                expect(c.delta.is_empty(), "ax- with a non-empty linear context")?;
                self.axiom(a, b)
            }
            SRule::AxPos => {
                let (SFocus::Right, SFormula::Atom(b)) = (&c.focus, &c.goal) else {
                    return Err("ax+ needs a right-focused atom".into());
                };
                let [SFormula::Atom(a)] = c.delta.as_slice() else {
                    return Err("ax+ needs exactly one atom in the linear context".into());
                };
                expect(b.polarity == crate::syntax::Polarity::Positive, "ax+ on a negative atom")?;
                self.axiom(a, b)
            }
            SRule::LolliL => {
                let SFocus::Left(SFormula::Lolli(pp, n)) = &c.focus else {
                    return Err("-oL needs a focused implication".into());
                };
                let (l, r) = (prem(0), prem(1));
                same_gamma(l)?;
                same_gamma(r)?;
                expect(l.focus == SFocus::Right && l.goal == **pp, "-oL left premise must focus on the antecedent")?;
                expect(r.focus == SFocus::Left((**n).clone()) && r.goal == c.goal, "-oL right premise mismatch")?;
                let joined: Vec<SFormula> = l.delta.iter().chain(&r.delta).cloned().collect();
                expect(same_multiset(&joined, &c.delta), "-oL premises do not split the linear context")
            }
            SRule::TensorR => {
                let (SFocus::Right, SFormula::Tensor(p1, p2)) = (&c.focus, &c.goal) else {
                    return Err("*R needs a right-focused tensor".into());
                };
                let (l, r) = (prem(0), prem(1));
                same_gamma(l)?;
                same_gamma(r)?;
                expect(l.focus == SFocus::Right && l.goal == **p1, "*R left premise mismatch")?;
                expect(r.focus == SFocus::Right && r.goal == **p2, "*R right premise mismatch")?;
                let joined: Vec<SFormula> = l.delta.iter().chain(&r.delta).cloned().collect();
                expect(same_multiset(&joined, &c.delta), "*R premises do not split the linear context")
            }
            SRule::LolliR => {
                let (SFocus::None, SFormula::Lolli(pp, n)) = (&c.focus, &c.goal) else {
                    return Err("-oR needs an unfocused implication goal".into());
                };
                let q = prem(0);
                same_gamma(q)?;
                let mut want = c.delta.clone();
                want.push((**pp).clone());
                expect(q.focus == SFocus::None && q.goal == **n, "-oR premise goal mismatch")?;
                expect(same_multiset(&q.delta, &want), "-oR premise context mismatch")
            }
            SRule::TensorL => {
                expect(c.focus == SFocus::None, "*L under focus")?;
                let q = prem(0);
                same_gamma(q)?;
                expect(q.goal == c.goal && q.focus == SFocus::None, "*L changed the goal")?;
                let ok = c.delta.iter().any(|f| match f {
                    SFormula::Tensor(p1, p2) => {
                        let mut want = without(&c.delta, f).unwrap();
                        want.push((**p1).clone());
                        want.push((**p2).clone());
                        same_multiset(&want, &q.delta)
                    }
                    _ => false,
                });
                expect(ok, "*L premise does not decompose a tensor of the conclusion")
            }
            SRule::BangL => {
                expect(c.focus == SFocus::None, "!L under focus")?;
                let q = prem(0);
                expect(q.goal == c.goal && q.focus == SFocus::None, "!L changed the goal")?;
                let ok = c.delta.iter().any(|f| match f {
                    SFormula::Bang(cl) => {
                        let mut g = c.gamma.clone();
                        g.push((**cl).clone());
                        g == q.gamma && same_multiset(&without(&c.delta, f).unwrap(), &q.delta)
                    }
                    _ => false,
                });
                expect(ok, "!L premise does not move a closure to the unrestricted context")
            }
            SRule::BangR => {
                let (SFocus::Right, SFormula::Bang(cl)) = (&c.focus, &c.goal) else {
                    return Err("!R needs a right-focused bang".into());
                };
                expect(c.delta.is_empty(), "!R with a non-empty linear context")?;
                let q = prem(0);
                expect(q.focus == SFocus::None && q.goal == cl.body && q.delta.is_empty(), "!R premise mismatch")?;
                for (v, t) in cl.sigma.iter() {
                    expect(self.sigma.get(v) == Some(t), "!R closure substitution missing from the store")?;
                }
                let want: BTreeSet<Var> = c.gamma.iter().flat_map(|g| g.phi.iter().cloned()).collect();
                let bound = self.sigma.get(&cl.world).map(tuple_vars);
                expect(bound.as_ref() == Some(&want), "!R world binding does not list the context indices")?;
                expect(p.worlds.len() == c.gamma.len(), "!R must rename every context world")?;
                let index: BTreeSet<Var> = cl.phi.iter().cloned().collect();
                for ((g, h), (old, new)) in c.gamma.iter().zip(&q.gamma).zip(&p.worlds) {
                    expect(g.world == *old, "!R world renaming out of order")?;
                    expect(*h == g.rename(&rename_map(&[(old.clone(), new.clone())])), "!R premise context is not the renamed context")?;
                    let has = self.sigma.get(new).map(tuple_vars);
                    expect(has.as_ref() == Some(&index), "!R context world not bound to the closure index")?;
                }
                expect(q.gamma.len() == c.gamma.len(), "!R changed the size of the context")
            }
            SRule::Copy => {
                expect(c.focus == SFocus::None, "copy under focus")?;
                let q = prem(0);
                same_gamma(q)?;
                expect(q.goal == c.goal && same_multiset(&q.delta, &c.delta), "copy changed the sequent")?;
                let info = p.copy.as_ref().ok_or("copy without renaming record")?;
                let cl = c.gamma.iter().find(|g| g.world == info.world).ok_or("copied closure not in context")?;
                let domain: BTreeSet<Var> = copy_domain(cl).into_iter().collect();
                let renamed: BTreeSet<Var> = info.renaming.iter().map(|(v, _)| v.clone()).collect();
                expect(domain == renamed, "copy renaming does not cover the closure's own variables")?;
                let map = rename_map(&info.renaming);
                expect(q.focus == SFocus::Left(cl.body.rename(&map)), "copy focus is not the renamed body")?;
                for (v, t) in cl.sigma.rename(&map).iter() {
                    expect(self.sigma.get(v) == Some(t), "copied closure substitution missing from the store")?;
                }
                Ok(())
            }
            SRule::FocusL => {
                expect(c.focus == SFocus::None, "focusL under focus")?;
                let q = prem(0);
                same_gamma(q)?;
                let SFocus::Left(n) = &q.focus else {
                    return Err("focusL premise is not left-focused".into());
                };
                let rest = without(&c.delta, &SFormula::down(n.clone())).ok_or("focused formula not in context")?;
                expect(q.goal == c.goal && same_multiset(&rest, &q.delta), "focusL premise mismatch")
            }
            SRule::FocusR => {
                let (SFocus::None, SFormula::Up(pp)) = (&c.focus, &c.goal) else {
                    return Err("focusR needs an unfocused shifted goal".into());
                };
                let q = prem(0);
                same_gamma(q)?;
                expect(q.focus == SFocus::Right && q.goal == **pp && same_multiset(&q.delta, &c.delta), "focusR premise mismatch")
            }
            SRule::BlurL => {
                let SFocus::Left(SFormula::Up(pp)) = &c.focus else {
                    return Err("blurL needs a focused up-shift".into());
                };
                let q = prem(0);
                same_gamma(q)?;
                let mut want = c.delta.clone();
                want.push((**pp).clone());
                expect(q.focus == SFocus::None && q.goal == c.goal && same_multiset(&q.delta, &want), "blurL premise mismatch")
            }
            SRule::BlurR => {
                let (SFocus::Right, SFormula::Down(n)) = (&c.focus, &c.goal) else {
                    return Err("blurR needs a right-focused down-shift".into());
                };
                let q = prem(0);
                same_gamma(q)?;
                expect(q.focus == SFocus::None && q.goal == **n && same_multiset(&q.delta, &c.delta), "blurR premise mismatch")
            }
        }
    }

    fn axiom(&mut self, a: &SAtom, b: &SAtom) -> Result<(), String> {
        if !atom_terms_equal(self.sigma, a, b) {
            return Err(format!("axiom atoms `{}` and `{}` differ under the substitution", a.pred, b.pred));
        }
        let phi = a.phi.union(&b.phi);
        let verdict = self.sigma.admissible(&phi);
        if let Some(v) = verdict.violation {
            return Err(format!("substitution not admissible at this axiom (condition {})", v.condition()));
        }
        self.axioms.push(phi);
        Ok(())
    }
}

/// Validate every node of `doc` against its rule schema, with axioms checked
/// under the final substitution.
pub fn check_sljf(doc: &SProofDoc) -> Result<(), CheckError> {
    let mut checker = Checker { sigma: &doc.sigma, axioms: Vec::new() };
    checker.node(&doc.proof, &mut Vec::new())?;
    if let Some(v) = doc.sigma.cycle_violation() {
        return Err(CheckError { path: Vec::new(), message: format!("final substitution is cyclic (condition {})", v.condition()) });
    }
    Ok(())
}

/// [`check_sljf`] plus a check that the proof's root is `goal` and that the
/// final substitution extends `initial`.
pub fn check_sljf_for(doc: &SProofDoc, goal: &SSequent, initial: &Substitution) -> Result<(), CheckError> {
    let root = |message: &str| CheckError { path: Vec::new(), message: message.to_string() };
    let c = &doc.proof.conclusion;
    if c.gamma != goal.gamma || c.goal != goal.goal || c.focus != goal.focus || !same_multiset(&c.delta, &goal.delta) {
        return Err(root("proof does not conclude the given sequent"));
    }
    if initial.iter().any(|(v, t)| doc.sigma.get(v) != Some(t)) {
        return Err(root("final substitution drops a skolemisation entry"));
    }
    check_sljf(doc)
}
