//! Translation of LJF formulas and sequents into the skolemised calculus.

use crate::subst::Substitution;
use crate::syntax::{
    alpha_rename_sequent, Closure, Formula, PairTag, Renaming, SFocus, SFormula, SSequent, Sequent, Side, Term,
    UidSource, Var, VarContext, VarKind,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `⟨K⟩⁺`
pub fn pos_adjust(k: SFormula) -> SFormula {
    match k {
        SFormula::Up(p) => *p,
        k if k.is_negative() => SFormula::down(k),
        k => k,
    }
}

/// `⟨K⟩⁻`
pub fn neg_adjust(k: SFormula) -> SFormula {
    match k {
        SFormula::Down(n) => *n,
        k if k.is_positive() => SFormula::up(k),
        k => k,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkolemResult {
    pub formula: SFormula,
    pub sigma: Substitution,
}

/// Where an LJF binder ended up in the skolemised sequent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinderInfo {
    /// The skolemised variable; same uid as the α-renamed LJF binder.
    pub var: Var,
    /// Innermost enclosing closure world, if the binder sits under a `!`.
    pub world: Option<Var>,
}

/// State threaded through the translation: fresh names plus bookkeeping
/// about binders and special variables.
#[derive(Clone, Debug)]
pub struct Skolemiser {
    uids: UidSource,
    next_pair: u32,
    worlds: Vec<Var>,
    retyped: BTreeMap<u32, Term>,
    pub binders: BTreeMap<u32, BinderInfo>,
    pub pairs: Vec<(Var, Var)>,
}

impl Skolemiser {
    pub fn new(uids: UidSource) -> Skolemiser {
        Skolemiser { uids, next_pair: 1, worlds: Vec::new(), retyped: BTreeMap::new(), binders: BTreeMap::new(), pairs: Vec::new() }
    }

    pub fn uids(&self) -> &UidSource {
        &self.uids
    }

    fn pair(&mut self) -> (Var, Var) {
        let id = self.next_pair;
        self.next_pair += 1;
        let mut l = self.uids.fresh("aL", VarKind::Special);
        let mut r = self.uids.fresh("aR", VarKind::Special);
        l.pair = Some(PairTag { id, side: Side::L });
        r.pair = Some(PairTag { id, side: Side::R });
        self.pairs.push((l.clone(), r.clone()));
        (l, r)
    }

    fn bind(&mut self, v: &Var, kind: VarKind) -> Var {
        let var = v.with_kind(kind);
        let world = self.worlds.last().cloned();
        self.retyped.insert(v.uid, Term::var(&var));
        self.binders.insert(v.uid, BinderInfo { var: var.clone(), world });
        var
    }

    pub fn left(&mut self, phi: &VarContext, f: &Formula) -> SkolemResult {
        self.sk(phi, f, Side::L)
    }

    pub fn right(&mut self, phi: &VarContext, f: &Formula) -> SkolemResult {
        self.sk(phi, f, Side::R)
    }

    fn sk(&mut self, phi: &VarContext, f: &Formula, side: Side) -> SkolemResult {
        let done = |formula, sigma| SkolemResult { formula, sigma };
        match f {
            Formula::Atom(a) => {
                let args = a.args.iter().map(|t| t.substitute(&self.retyped)).collect();
                let atom = SFormula::atom(a.pred.clone(), args, a.polarity, phi.clone());
                let formula = if side == Side::L { pos_adjust(atom) } else { neg_adjust(atom) };
                done(formula, Substitution::new())
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let instantiable = matches!(
                    (f, side),
                    (Formula::Forall(..), Side::L) | (Formula::Exists(..), Side::R)
                );
                if instantiable {
                    let x = self.bind(v, VarKind::Existential);
                    self.sk(&phi.extended(&x), body, side)
                } else {
                    let u = self.bind(v, VarKind::Eigen);
                    let mut r = self.sk(&phi.extended(&u), body, side);
                    r.sigma
                        .insert_skolem(u, phi.non_eigen().to_terms())
                        .expect("binders are renamed apart");
                    r
                }
            }
            Formula::Tensor(p, q) => {
                let (phi1, phi2) = if side == Side::R {
                    let (l, r) = self.pair();
                    (phi.extended(&l), phi.extended(&r))
                } else {
                    (phi.clone(), phi.clone())
                };
                let k1 = self.sk(&phi1, p, side);
                let k2 = self.sk(&phi2, q, side);
                let formula = SFormula::tensor(pos_adjust(k1.formula), pos_adjust(k2.formula));
                done(formula, join(k1.sigma, k2.sigma))
            }
            Formula::Lolli(p, n) => {
                let (k1, k2) = if side == Side::L {
                    let (l, r) = self.pair();
                    (self.sk(&phi.extended(&l), p, Side::R), self.sk(&phi.extended(&r), n, Side::L))
                } else {
                    (self.sk(phi, p, Side::L), self.sk(phi, n, Side::R))
                };
                let formula = SFormula::lolli(pos_adjust(k1.formula), neg_adjust(k2.formula));
                done(formula, join(k1.sigma, k2.sigma))
            }
            Formula::Bang(n) => {
                let closure = self.closure(phi, n, side);
                let outward = closure.1;
                done(SFormula::bang(closure.0), outward)
            }
            Formula::Down(g) => {
                let k = self.sk(phi, g, side);
                done(neg_adjust(k.formula), k.sigma)
            }
            Formula::Up(g) => {
                let k = self.sk(phi, g, side);
                done(pos_adjust(k.formula), k.sigma)
            }
        }
    }

    /// `!_{(a;Φ;σ\Φ)}⟨K⟩⁻` together with `σ_↑Φ`.
    fn closure(&mut self, phi: &VarContext, body: &Formula, side: Side) -> (Closure, Substitution) {
        let name = if side == Side::R { "b" } else { "a" };
        let a = self.uids.fresh(name, VarKind::Special);
        self.worlds.push(a.clone());
        let k = self.sk(&phi.extended(&a), body, side);
        self.worlds.pop();
        let closure = Closure { world: a, phi: phi.clone(), sigma: k.sigma.remove(phi), body: neg_adjust(k.formula) };
        (closure, k.sigma.restrict(phi))
    }
}

fn join(mut a: Substitution, b: Substitution) -> Substitution {
    a.extend(&b).expect("binders are renamed apart");
    a
}

/// Output of [`skolemise_sequent`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Skolemised {
    pub sequent: SSequent,
    /// Skolem entries of every top-level formula.
    pub sigma: Substitution,
    /// The α-renamed source sequent whose binder uids the output reuses.
    pub source: Sequent,
    pub binders: BTreeMap<u32, BinderInfo>,
    pub pairs: Vec<(Var, Var)>,
    /// Every uid in the output is below this bound.
    pub next_uid: u32,
    #[serde(skip)]
    pub renaming: Renaming,
}

impl Skolemised {
    pub fn binder(&self, uid: u32) -> Option<&BinderInfo> {
        self.binders.get(&uid)
    }
}

/// Skolemise each context formula on the left and the goal on the right.
/// Unrestricted formulas become closures as though they had been moved
/// there from a `!` in the linear context.
pub fn skolemise_sequent(s: &Sequent) -> Skolemised {
    let (source, renaming) = alpha_rename_sequent(s);
    let phi: VarContext = source.free_vars().into_iter().collect();
    let mut sk = Skolemiser::new(UidSource::after(source.max_uid()));
    let mut sigma = Substitution::new();
    let mut gamma = Vec::new();
    for n in &source.gamma {
        let (c, outward) = sk.closure(&phi, n, Side::L);
        sigma = join(sigma, outward);
        gamma.push(c);
    }
    let mut delta = Vec::new();
    for p in &source.delta {
        let r = sk.left(&phi, p);
        sigma = join(sigma, r.sigma);
        delta.push(pos_adjust(r.formula));
    }
    let r = sk.right(&phi, &source.goal);
    sigma = join(sigma, r.sigma);
    let goal = neg_adjust(r.formula);
    let sequent = SSequent { gamma, delta, focus: SFocus::None, goal };
    Skolemised {
        sequent,
        sigma,
        source,
        next_uid: sk.uids.peek(),
        binders: sk.binders,
        pairs: sk.pairs,
        renaming,
    }
}

/// Skolemise a single formula from the empty context, as in the per-formula
/// presentation. `left` selects `sk_L`.
pub fn skolemise_formula(f: &Formula, left: bool) -> SkolemResult {
    let mut uids = UidSource::after(f.max_uid());
    let mut renaming = Renaming::default();
    let f = crate::syntax::alpha_rename(f, &mut uids, &mut renaming);
    let mut sk = Skolemiser::new(uids);
    if left {
        sk.left(&VarContext::new(), &f)
    } else {
        sk.right(&VarContext::new(), &f)
    }
}
