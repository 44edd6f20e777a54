use super::{Term, Var};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
    pub polarity: Polarity,
}

impl Atom {
    pub fn substitute(&self, map: &BTreeMap<u32, Term>) -> Atom {
        Atom {
            pred: self.pred.clone(),
            args: self.args.iter().map(|t| t.substitute(map)).collect(),
            polarity: self.polarity,
        }
    }
}

/// Polarised LJF formula.
///
/// Negative: atoms of negative polarity, `Lolli`, `Forall`, `Up`.
/// Positive: atoms of positive polarity, `Tensor`, `Bang`, `Exists`, `Down`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Atom(Atom),
    Lolli(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Up(Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
    Exists(Var, Box<Formula>),
    Down(Box<Formula>),
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>, polarity: Polarity) -> Formula {
        Formula::Atom(Atom { pred: pred.into(), args, polarity })
    }

    pub fn lolli(p: Formula, n: Formula) -> Formula {
        Formula::Lolli(Box::new(p), Box::new(n))
    }

    pub fn tensor(p: Formula, q: Formula) -> Formula {
        Formula::Tensor(Box::new(p), Box::new(q))
    }

    pub fn forall(v: Var, n: Formula) -> Formula {
        Formula::Forall(v, Box::new(n))
    }

    pub fn exists(v: Var, p: Formula) -> Formula {
        Formula::Exists(v, Box::new(p))
    }

    pub fn up(p: Formula) -> Formula {
        Formula::Up(Box::new(p))
    }

    pub fn down(n: Formula) -> Formula {
        Formula::Down(Box::new(n))
    }

    pub fn bang(n: Formula) -> Formula {
        Formula::Bang(Box::new(n))
    }

    pub fn polarity(&self) -> Polarity {
        match self {
            Formula::Atom(a) => a.polarity,
            Formula::Lolli(..) | Formula::Forall(..) | Formula::Up(_) => Polarity::Negative,
            Formula::Tensor(..) | Formula::Bang(_) | Formula::Exists(..) | Formula::Down(_) => Polarity::Positive,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.polarity() == Polarity::Negative
    }

    pub fn is_positive(&self) -> bool {
        self.polarity() == Polarity::Positive
    }

    pub fn connective_name(&self) -> &'static str {
        match self {
            Formula::Atom(_) => "atom",
            Formula::Lolli(..) => "-o",
            Formula::Forall(..) => "fa",
            Formula::Up(_) => "^",
            Formula::Tensor(..) => "*",
            Formula::Bang(_) => "!",
            Formula::Exists(..) => "ex",
            Formula::Down(_) => "v",
        }
    }

    /// Checks that every sub-formula sits at the polarity its parent requires.
    pub fn check_polarised(&self) -> Result<(), String> {
        let want = |f: &Formula, pol: Polarity, parent: &str| -> Result<(), String> {
            if f.polarity() != pol {
                return Err(format!(
                    "operand of `{parent}` must be {} but `{}` is {}",
                    pol_name(pol),
                    f.connective_name(),
                    pol_name(f.polarity())
                ));
            }
            f.check_polarised()
        };
        match self {
            Formula::Atom(_) => Ok(()),
            Formula::Lolli(p, n) => {
                want(p, Polarity::Positive, "-o")?;
                want(n, Polarity::Negative, "-o")
            }
            Formula::Forall(_, n) => want(n, Polarity::Negative, "fa"),
            Formula::Up(p) => want(p, Polarity::Positive, "^"),
            Formula::Tensor(p, q) => {
                want(p, Polarity::Positive, "*")?;
                want(q, Polarity::Positive, "*")
            }
            Formula::Bang(n) => want(n, Polarity::Negative, "!"),
            Formula::Exists(_, p) => want(p, Polarity::Positive, "ex"),
            Formula::Down(n) => want(n, Polarity::Negative, "v"),
        }
    }

    /// Capture-free because bound variables carry unique uids.
    pub fn substitute(&self, map: &BTreeMap<u32, Term>) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(a.substitute(map)),
            Formula::Lolli(p, n) => Formula::lolli(p.substitute(map), n.substitute(map)),
            Formula::Forall(v, n) => Formula::forall(v.clone(), n.substitute(map)),
            Formula::Up(p) => Formula::up(p.substitute(map)),
            Formula::Tensor(p, q) => Formula::tensor(p.substitute(map), q.substitute(map)),
            Formula::Bang(n) => Formula::bang(n.substitute(map)),
            Formula::Exists(v, p) => Formula::exists(v.clone(), p.substitute(map)),
            Formula::Down(n) => Formula::down(n.substitute(map)),
        }
    }

    pub fn instantiate(&self, v: &Var, t: &Term) -> Formula {
        let mut map = BTreeMap::new();
        map.insert(v.uid, t.clone());
        self.substitute(&map)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Lolli(a, b) | Formula::Tensor(a, b) => vec![a, b],
            Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::Up(a) | Formula::Down(a) | Formula::Bang(a) => {
                vec![a]
            }
        }
    }

    /// Binary connectives, quantifiers and bangs; shifts are not counted.
    pub fn connective_count(&self) -> usize {
        let own = match self {
            Formula::Atom(_) | Formula::Up(_) | Formula::Down(_) => 0,
            _ => 1,
        };
        own + self.children().iter().map(|c| c.connective_count()).sum::<usize>()
    }

    pub fn quantifier_count(&self) -> usize {
        let own = matches!(self, Formula::Forall(..) | Formula::Exists(..)) as usize;
        own + self.children().iter().map(|c| c.quantifier_count()).sum::<usize>()
    }

    pub fn bang_count(&self) -> usize {
        let own = matches!(self, Formula::Bang(_)) as usize;
        own + self.children().iter().map(|c| c.bang_count()).sum::<usize>()
    }

    pub fn binders(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut Vec<Var>) {
        if let Formula::Forall(v, _) | Formula::Exists(v, _) = self {
            out.push(v.clone());
        }
        for c in self.children() {
            c.collect_binders(out);
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    for v in t.vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let fresh = bound.insert(v.clone());
                body.collect_free(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        if let Formula::Atom(a) = self {
            out.push(a);
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    pub fn max_uid(&self) -> u32 {
        let binders = self.binders().iter().map(|v| v.uid).max().unwrap_or(0);
        let atoms = self
            .atoms()
            .iter()
            .flat_map(|a| a.args.iter().map(Term::max_uid))
            .max()
            .unwrap_or(0);
        binders.max(atoms)
    }
}

pub(crate) fn pol_name(p: Polarity) -> &'static str {
    match p {
        Polarity::Positive => "positive",
        Polarity::Negative => "negative",
    }
}

/// Focus slot of an LJF sequent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Focus {
    None,
    /// `[N]` in the linear context.
    Left(Formula),
    /// The goal is `[P]`.
    Right,
}

/// `Γ; Δ ⊢ goal` with an optional focus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequent {
    pub gamma: Vec<Formula>,
    pub delta: Vec<Formula>,
    pub focus: Focus,
    pub goal: Formula,
}

impl Sequent {
    pub fn new(gamma: Vec<Formula>, delta: Vec<Formula>, goal: Formula) -> Sequent {
        Sequent { gamma, delta, focus: Focus::None, goal }
    }

    /// Γ negative, Δ positive, goal negative (or positive under right focus),
    /// left focus negative, every formula well polarised.
    pub fn check_polarised(&self) -> Result<(), String> {
        for g in &self.gamma {
            if !g.is_negative() {
                return Err(format!("unrestricted context formula `{}` must be negative", g.connective_name()));
            }
            g.check_polarised()?;
        }
        for d in &self.delta {
            if !d.is_positive() {
                return Err(format!("linear context formula `{}` must be positive", d.connective_name()));
            }
            d.check_polarised()?;
        }
        let goal_pol = if self.focus == Focus::Right { Polarity::Positive } else { Polarity::Negative };
        if self.goal.polarity() != goal_pol {
            return Err(format!("goal `{}` must be {}", self.goal.connective_name(), pol_name(goal_pol)));
        }
        self.goal.check_polarised()?;
        if let Focus::Left(n) = &self.focus {
            if !n.is_negative() {
                return Err("left focus must be negative".into());
            }
            n.check_polarised()?;
        }
        Ok(())
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        let focus = match &self.focus {
            Focus::Left(n) => Some(n),
            _ => None,
        };
        self.gamma.iter().chain(self.delta.iter()).chain(focus).chain(std::iter::once(&self.goal))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.formulas().flat_map(|f| f.free_vars()).collect()
    }

    pub fn max_uid(&self) -> u32 {
        self.formulas().map(Formula::max_uid).max().unwrap_or(0)
    }

    pub fn substitute(&self, map: &BTreeMap<u32, Term>) -> Sequent {
        Sequent {
            gamma: self.gamma.iter().map(|f| f.substitute(map)).collect(),
            delta: self.delta.iter().map(|f| f.substitute(map)).collect(),
            focus: match &self.focus {
                Focus::Left(n) => Focus::Left(n.substitute(map)),
                other => other.clone(),
            },
            goal: self.goal.substitute(map),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::VarKind;

    fn a(p: &str) -> Formula {
        Formula::atom(p, vec![], Polarity::Negative)
    }

    #[test]
    fn polarity_check_names_connective() {
        let bad = Formula::tensor(a("A"), Formula::down(a("B")));
        let err = bad.check_polarised().unwrap_err();
        assert!(err.contains("`*`"), "{err}");
        let good = Formula::tensor(Formula::down(a("A")), Formula::down(a("B")));
        assert!(good.check_polarised().is_ok());
    }

    #[test]
    fn counts_ignore_shifts() {
        let x = Var::new("x", VarKind::Existential, 1);
        let f = Formula::forall(x, Formula::up(Formula::bang(a("A"))));
        assert_eq!(f.connective_count(), 2);
        assert_eq!(f.quantifier_count(), 1);
        assert_eq!(f.bang_count(), 1);
    }

    #[test]
    fn free_vars_respect_binders() {
        let x = Var::new("x", VarKind::Existential, 1);
        let y = Var::new("y", VarKind::Eigen, 2);
        let body = Formula::atom("A", vec![Term::var(&x), Term::var(&y)], Polarity::Negative);
        let f = Formula::forall(x.clone(), body);
        let fv = f.free_vars();
        assert!(fv.contains(&y) && !fv.contains(&x));
    }
}
