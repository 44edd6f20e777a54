use crate::sljf::{same_multiset, without, CheckError};
use crate::syntax::{alpha_eq_formula, Focus, Formula, Polarity, Sequent, Term, Var};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LRule {
    AxNeg,
    AxPos,
    ForallL,
    ForallR,
    ExistsL,
    ExistsR,
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

impl LRule {
    pub fn name(self) -> &'static str {
        match self {
            LRule::AxNeg => "ax-",
            LRule::AxPos => "ax+",
            LRule::ForallL => "faL",
            LRule::ForallR => "faR",
            LRule::ExistsL => "exL",
            LRule::ExistsR => "exR",
            LRule::LolliL => "-oL",
            LRule::LolliR => "-oR",
            LRule::TensorL => "*L",
            LRule::TensorR => "*R",
            LRule::BangL => "!L",
            LRule::BangR => "!R",
            LRule::Copy => "copy",
            LRule::FocusL => "focusL",
            LRule::FocusR => "focusR",
            LRule::BlurL => "blurL",
            LRule::BlurR => "blurR",
        }
    }
}

impl fmt::Display for LRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LProof {
    pub rule: LRule,
    pub conclusion: Sequent,
    pub premises: Vec<LProof>,
    /// Instantiation term of `faL` and `exR`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Term>,
    /// Eigen-variable of `faR` and `exL`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen: Option<Var>,
}

impl LProof {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(LProof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(LProof::height).max().unwrap_or(0)
    }

    pub fn count(&self, rule: LRule) -> usize {
        usize::from(self.rule == rule) + self.premises.iter().map(|p| p.count(rule)).sum::<usize>()
    }

    /// Rule names in pre-order.
    pub fn rules(&self) -> Vec<LRule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rules());
        }
        out
    }
}

fn occurs_free(s: &Sequent, v: &Var) -> bool {
    s.free_vars().contains(v) || matches!(&s.focus, Focus::Left(f) if f.free_vars().contains(v))
}

fn check_eigen(p: &LProof) -> Result<&Var, String> {
    let u = p.eigen.as_ref().ok_or_else(|| format!("{} without an eigen-variable", p.rule))?;
    if !u.is_eigen() {
        return Err(format!("{} eigen-variable has the wrong kind", p.rule));
    }
    if occurs_free(&p.conclusion, u) {
        return Err(format!("eigen-variable {} is not fresh", u.name));
    }
    Ok(u)
}

fn local(p: &LProof) -> Result<(), String> {
    let c = &p.conclusion;
    let arity = match p.rule {
        LRule::AxNeg | LRule::AxPos => 0,
        LRule::LolliL | LRule::TensorR => 2,
        _ => 1,
    };
    if p.premises.len() != arity {
        return Err(format!("{} expects {arity} premise(s), found {}", p.rule, p.premises.len()));
    }
    let prem = |i: usize| &p.premises[i].conclusion;
    let expect = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };
    if arity > 0 && p.rule != LRule::BangL {
        for q in &p.premises {
            expect(q.conclusion.gamma == c.gamma, "unrestricted context changed")?;
        }
    }
    match p.rule {
        LRule::AxNeg => {
            let (Focus::Left(Formula::Atom(a)), Formula::Atom(b)) = (&c.focus, &c.goal) else {
                return Err("ax- needs a focused atom and an atomic goal".into());
            };
            expect(a.polarity == Polarity::Negative, "ax- on a positive atom")?;
            expect(c.delta.is_empty(), "ax- with a non-empty linear context")?;
            expect(a == b, "ax- atoms differ")
        }
        LRule::AxPos => {
            let (Focus::Right, Formula::Atom(b)) = (&c.focus, &c.goal) else {
                return Err("ax+ needs a right-focused atom".into());
            };
            expect(b.polarity == Polarity::Positive, "ax+ on a negative atom")?;
            expect(c.delta == [Formula::Atom(b.clone())], "ax+ context is not the goal atom")
        }
        LRule::ForallL => {
            let Focus::Left(Formula::Forall(x, n)) = &c.focus else {
                return Err("faL needs a focused universal".into());
            };
            let t = p.witness.as_ref().ok_or("faL without a witness")?;
            let q = prem(0);
            expect(q.focus == Focus::Left(n.instantiate(x, t)), "faL premise is not the instance")?;
            expect(q.goal == c.goal && same_multiset(&q.delta, &c.delta), "faL changed the sequent")
        }
        LRule::ExistsR => {
            let (Focus::Right, Formula::Exists(x, pp)) = (&c.focus, &c.goal) else {
                return Err("exR needs a right-focused existential".into());
            };
            let t = p.witness.as_ref().ok_or("exR without a witness")?;
            let q = prem(0);
            expect(q.focus == Focus::Right && q.goal == pp.instantiate(x, t), "exR premise is not the instance")?;
            expect(same_multiset(&q.delta, &c.delta), "exR changed the linear context")
        }
        LRule::ForallR => {
            let (Focus::None, Formula::Forall(x, n)) = (&c.focus, &c.goal) else {
                return Err("faR needs an unfocused universal goal".into());
            };
            let u = check_eigen(p)?;
            let q = prem(0);
            expect(q.focus == Focus::None && q.goal == n.instantiate(x, &Term::var(u)), "faR premise mismatch")?;
            expect(same_multiset(&q.delta, &c.delta), "faR changed the linear context")
        }
        LRule::ExistsL => {
            expect(c.focus == Focus::None, "exL under focus")?;
            let u = check_eigen(p)?;
            let q = prem(0);
            expect(q.goal == c.goal && q.focus == Focus::None, "exL changed the goal")?;
            let ok = c.delta.iter().any(|f| match f {
                Formula::Exists(x, pp) => {
                    let mut want = without(&c.delta, f).unwrap();
                    want.push(pp.instantiate(x, &Term::var(u)));
                    same_multiset(&want, &q.delta)
                }
                _ => false,
            });
            expect(ok, "exL premise does not open an existential of the conclusion")
        }
        LRule::LolliL => {
            let Focus::Left(Formula::Lolli(pp, n)) = &c.focus else {
                return Err("-oL needs a focused implication".into());
            };
            let (l, r) = (prem(0), prem(1));
            expect(l.focus == Focus::Right && l.goal == **pp, "-oL left premise must focus on the antecedent")?;
            expect(r.focus == Focus::Left((**n).clone()) && r.goal == c.goal, "-oL right premise mismatch")?;
            let joined: Vec<Formula> = l.delta.iter().chain(&r.delta).cloned().collect();
            expect(same_multiset(&joined, &c.delta), "-oL premises do not split the linear context")
        }
        LRule::TensorR => {
            let (Focus::Right, Formula::Tensor(p1, p2)) = (&c.focus, &c.goal) else {
                return Err("*R needs a right-focused tensor".into());
            };
            let (l, r) = (prem(0), prem(1));
            expect(l.focus == Focus::Right && l.goal == **p1, "*R left premise mismatch")?;
            expect(r.focus == Focus::Right && r.goal == **p2, "*R right premise mismatch")?;
            let joined: Vec<Formula> = l.delta.iter().chain(&r.delta).cloned().collect();
            expect(same_multiset(&joined, &c.delta), "*R premises do not split the linear context")
        }
        LRule::LolliR => {
            let (Focus::None, Formula::Lolli(pp, n)) = (&c.focus, &c.goal) else {
                return Err("-oR needs an unfocused implication goal".into());
            };
            let q = prem(0);
            let mut want = c.delta.clone();
            want.push((**pp).clone());
            expect(q.focus == Focus::None && q.goal == **n, "-oR premise goal mismatch")?;
            expect(same_multiset(&q.delta, &want), "-oR premise context mismatch")
        }
        LRule::TensorL => {
            expect(c.focus == Focus::None, "*L under focus")?;
            let q = prem(0);
            expect(q.goal == c.goal && q.focus == Focus::None, "*L changed the goal")?;
            let ok = c.delta.iter().any(|f| match f {
                Formula::Tensor(p1, p2) => {
                    let mut want = without(&c.delta, f).unwrap();
                    want.push((**p1).clone());
                    want.push((**p2).clone());
                    same_multiset(&want, &q.delta)
                }
                _ => false,
            });
            expect(ok, "*L premise does not decompose a tensor of the conclusion")
        }
        LRule::BangL => {
            expect(c.focus == Focus::None, "!L under focus")?;
            let q = prem(0);
            expect(q.goal == c.goal && q.focus == Focus::None, "!L changed the goal")?;
            let ok = c.delta.iter().any(|f| match f {
                Formula::Bang(n) => {
                    let mut g = c.gamma.clone();
                    g.push((**n).clone());
                    g == q.gamma && same_multiset(&without(&c.delta, f).unwrap(), &q.delta)
                }
                _ => false,
            });
            expect(ok, "!L premise does not move a formula to the unrestricted context")
        }
        LRule::BangR => {
            let (Focus::Right, Formula::Bang(n)) = (&c.focus, &c.goal) else {
                return Err("!R needs a right-focused bang".into());
            };
            expect(c.delta.is_empty(), "!R with a non-empty linear context")?;
            let q = prem(0);
            expect(q.focus == Focus::None && q.goal == **n && q.delta.is_empty(), "!R premise mismatch")
        }
        LRule::Copy => {
            expect(c.focus == Focus::None, "copy under focus")?;
            let q = prem(0);
            expect(q.goal == c.goal && same_multiset(&q.delta, &c.delta), "copy changed the sequent")?;
            let Focus::Left(n) = &q.focus else {
                return Err("copy premise is not left-focused".into());
            };
            expect(c.gamma.iter().any(|g| alpha_eq_formula(g, n)), "copied formula not in the unrestricted context")
        }
        LRule::FocusL => {
            expect(c.focus == Focus::None, "focusL under focus")?;
            let q = prem(0);
            let Focus::Left(n) = &q.focus else {
                return Err("focusL premise is not left-focused".into());
            };
            let rest = without(&c.delta, &Formula::down(n.clone())).ok_or("focused formula not in context")?;
            expect(q.goal == c.goal && same_multiset(&rest, &q.delta), "focusL premise mismatch")
        }
        LRule::FocusR => {
            let (Focus::None, Formula::Up(pp)) = (&c.focus, &c.goal) else {
                return Err("focusR needs an unfocused shifted goal".into());
            };
            let q = prem(0);
            expect(q.focus == Focus::Right && q.goal == **pp && same_multiset(&q.delta, &c.delta), "focusR premise mismatch")
        }
        LRule::BlurL => {
            let Focus::Left(Formula::Up(pp)) = &c.focus else {
                return Err("blurL needs a focused up-shift".into());
            };
            let q = prem(0);
            let mut want = c.delta.clone();
            want.push((**pp).clone());
            expect(q.focus == Focus::None && q.goal == c.goal && same_multiset(&q.delta, &want), "blurL premise mismatch")
        }
        LRule::BlurR => {
            let (Focus::Right, Formula::Down(n)) = (&c.focus, &c.goal) else {
                return Err("blurR needs a right-focused down-shift".into());
            };
            let q = prem(0);
            expect(q.focus == Focus::None && q.goal == **n && same_multiset(&q.delta, &c.delta), "blurR premise mismatch")
        }
    }
}

fn node(p: &LProof, path: &mut Vec<usize>) -> Result<(), CheckError> {
    local(p).map_err(|message| CheckError { path: path.clone(), message })?;
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        node(q, path)?;
        path.pop();
    }
    Ok(())
}

/// Validate every node of `p` against its rule schema.
pub fn check_ljf(p: &LProof) -> Result<(), CheckError> {
    node(p, &mut Vec::new())
}

/// [`check_ljf`] plus a check that the root concludes `goal`.
pub fn check_ljf_for(p: &LProof, goal: &Sequent) -> Result<(), CheckError> {
    let c = &p.conclusion;
    if c.gamma != goal.gamma || c.goal != goal.goal || c.focus != goal.focus || !same_multiset(&c.delta, &goal.delta) {
        return Err(CheckError { path: Vec::new(), message: "proof does not conclude the given sequent".into() });
    }
    check_ljf(p)
}
