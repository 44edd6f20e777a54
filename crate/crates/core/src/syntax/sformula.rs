use super::{Polarity, Term, Var, VarContext};
use crate::subst::Substitution;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Atom indexed by its dependency context Φ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SAtom {
    pub pred: String,
    pub args: Vec<Term>,
    pub polarity: Polarity,
    pub phi: VarContext,
}

/// `(a; Φ; σ) : N`, a banged formula together with its world name,
/// dependency context and pending Skolem entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Closure {
    pub world: Var,
    pub phi: VarContext,
    pub sigma: Substitution,
    pub body: SFormula,
}

impl Closure {
    pub fn rename(&self, map: &BTreeMap<u32, Term>) -> Closure {
        let world = match map.get(&self.world.uid) {
            Some(Term::Var(w)) => w.clone(),
            _ => self.world.clone(),
        };
        Closure {
            world,
            phi: self.phi.rename(map),
            sigma: self.sigma.rename(map),
            body: self.body.rename(map),
        }
    }
}

/// Quantifier-free skolemised formula. Polarity follows the same split as
/// LJF, with `Bang` carrying a closure instead of a bare body.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SFormula {
    Atom(SAtom),
    Lolli(Box<SFormula>, Box<SFormula>),
    Up(Box<SFormula>),
    Tensor(Box<SFormula>, Box<SFormula>),
    Bang(Box<Closure>),
    Down(Box<SFormula>),
}

impl SFormula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>, polarity: Polarity, phi: VarContext) -> SFormula {
        SFormula::Atom(SAtom { pred: pred.into(), args, polarity, phi })
    }

    pub fn lolli(p: SFormula, n: SFormula) -> SFormula {
        SFormula::Lolli(Box::new(p), Box::new(n))
    }

    pub fn tensor(p: SFormula, q: SFormula) -> SFormula {
        SFormula::Tensor(Box::new(p), Box::new(q))
    }

    pub fn up(p: SFormula) -> SFormula {
        SFormula::Up(Box::new(p))
    }

    pub fn down(n: SFormula) -> SFormula {
        SFormula::Down(Box::new(n))
    }

    pub fn bang(c: Closure) -> SFormula {
        SFormula::Bang(Box::new(c))
    }

    pub fn polarity(&self) -> Polarity {
        match self {
            SFormula::Atom(a) => a.polarity,
            SFormula::Lolli(..) | SFormula::Up(_) => Polarity::Negative,
            SFormula::Tensor(..) | SFormula::Bang(_) | SFormula::Down(_) => Polarity::Positive,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.polarity() == Polarity::Negative
    }

    pub fn is_positive(&self) -> bool {
        self.polarity() == Polarity::Positive
    }

    pub fn rename(&self, map: &BTreeMap<u32, Term>) -> SFormula {
        match self {
            SFormula::Atom(a) => SFormula::Atom(SAtom {
                pred: a.pred.clone(),
                args: a.args.iter().map(|t| t.substitute(map)).collect(),
                polarity: a.polarity,
                phi: a.phi.rename(map),
            }),
            SFormula::Lolli(p, n) => SFormula::lolli(p.rename(map), n.rename(map)),
            SFormula::Up(p) => SFormula::up(p.rename(map)),
            SFormula::Tensor(p, q) => SFormula::tensor(p.rename(map), q.rename(map)),
            SFormula::Bang(c) => SFormula::bang(c.rename(map)),
            SFormula::Down(n) => SFormula::down(n.rename(map)),
        }
    }

    /// Atoms outside nested closures are listed first; closure bodies are included.
    pub fn atoms(&self) -> Vec<&SAtom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a SAtom>) {
        match self {
            SFormula::Atom(a) => out.push(a),
            SFormula::Lolli(a, b) | SFormula::Tensor(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            SFormula::Up(a) | SFormula::Down(a) => a.collect_atoms(out),
            SFormula::Bang(c) => c.body.collect_atoms(out),
        }
    }

    /// Every variable mentioned anywhere, closures included.
    pub fn all_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut Vec<Var>) {
        match self {
            SFormula::Atom(a) => {
                a.args.iter().for_each(|t| t.collect_vars(out));
                out.extend(a.phi.iter().cloned());
            }
            SFormula::Lolli(a, b) | SFormula::Tensor(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            SFormula::Up(a) | SFormula::Down(a) => a.collect_all_vars(out),
            SFormula::Bang(c) => {
                out.push(c.world.clone());
                out.extend(c.phi.iter().cloned());
                for (v, t) in c.sigma.iter() {
                    out.push(v.clone());
                    t.collect_vars(out);
                }
                c.body.collect_all_vars(out);
            }
        }
    }

    pub fn max_uid(&self) -> u32 {
        self.all_vars().iter().map(|v| v.uid).max().unwrap_or(0)
    }
}

/// Free variables of a skolemised formula.
///
/// Atoms contribute their index Φ, a closure contributes its own Φ only,
/// and shifts are transparent.
pub fn free_vars(f: &SFormula) -> VarContext {
    match f {
        SFormula::Atom(a) => a.phi.clone(),
        SFormula::Tensor(p, q) | SFormula::Lolli(p, q) => free_vars(p).union(&free_vars(q)),
        SFormula::Bang(c) => c.phi.clone(),
        SFormula::Up(g) | SFormula::Down(g) => free_vars(g),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SFocus {
    None,
    Left(SFormula),
    Right,
}

/// `Γ; Δ ⊢ goal` in the skolemised calculus. The substitution is carried
/// separately (see `SkolemisedSequent` and the proof tree root).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SSequent {
    pub gamma: Vec<Closure>,
    pub delta: Vec<SFormula>,
    pub focus: SFocus,
    pub goal: SFormula,
}

impl SSequent {
    pub fn formulas(&self) -> impl Iterator<Item = &SFormula> {
        let focus = match &self.focus {
            SFocus::Left(n) => Some(n),
            _ => None,
        };
        self.gamma.iter().map(|c| &c.body).chain(self.delta.iter()).chain(focus).chain(std::iter::once(&self.goal))
    }

    pub fn max_uid(&self) -> u32 {
        let closures = self
            .gamma
            .iter()
            .map(|c| SFormula::bang(c.clone()).max_uid())
            .max()
            .unwrap_or(0);
        let rest = self.delta.iter().chain(std::iter::once(&self.goal)).map(SFormula::max_uid).max().unwrap_or(0);
        closures.max(rest)
    }
}
