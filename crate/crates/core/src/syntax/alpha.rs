use super::{Closure, Focus, Formula, Sequent, SFocus, SFormula, SSequent, Term, UidSource, Var, VarContext};
use crate::subst::Substitution;
use std::collections::BTreeMap;

/// Record of binder renamings: new uid to the variable it replaced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Renaming {
    pub original: BTreeMap<u32, Var>,
}

impl Renaming {
    pub fn original_of(&self, v: &Var) -> Option<&Var> {
        self.original.get(&v.uid)
    }
}

/// Give every binder in `f` a fresh uid.
pub fn alpha_rename(f: &Formula, uids: &mut UidSource, renaming: &mut Renaming) -> Formula {
    rename_in(f, &BTreeMap::new(), uids, renaming)
}

fn rename_in(f: &Formula, env: &BTreeMap<u32, Term>, uids: &mut UidSource, r: &mut Renaming) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(a.substitute(env)),
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            let nv = uids.refresh(v);
            r.original.insert(nv.uid, v.clone());
            let mut inner = env.clone();
            inner.insert(v.uid, Term::var(&nv));
            let body = rename_in(b, &inner, uids, r);
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(nv, body)
            } else {
                Formula::exists(nv, body)
            }
        }
        Formula::Lolli(p, n) => Formula::lolli(rename_in(p, env, uids, r), rename_in(n, env, uids, r)),
        Formula::Tensor(p, q) => Formula::tensor(rename_in(p, env, uids, r), rename_in(q, env, uids, r)),
        Formula::Up(p) => Formula::up(rename_in(p, env, uids, r)),
        Formula::Down(n) => Formula::down(rename_in(n, env, uids, r)),
        Formula::Bang(n) => Formula::bang(rename_in(n, env, uids, r)),
    }
}

/// Rename every binder of the sequent apart from each other and from its free variables.
pub fn alpha_rename_sequent(s: &Sequent) -> (Sequent, Renaming) {
    let mut uids = UidSource::after(s.max_uid());
    let mut r = Renaming::default();
    let mut go = |f: &Formula| alpha_rename(f, &mut uids, &mut r);
    let gamma = s.gamma.iter().map(&mut go).collect();
    let delta = s.delta.iter().map(&mut go).collect();
    let focus = match &s.focus {
        Focus::Left(n) => Focus::Left(go(n)),
        other => other.clone(),
    };
    let goal = go(&s.goal);
    (Sequent { gamma, delta, focus, goal }, r)
}

/// Bound-variable correspondence used during comparison.
#[derive(Default)]
struct Env {
    pairs: Vec<(u32, u32)>,
}

impl Env {
    fn lookup(&self, a: u32, b: u32) -> Option<bool> {
        for &(x, y) in self.pairs.iter().rev() {
            if x == a || y == b {
                return Some(x == a && y == b);
            }
        }
        None
    }

    fn var_eq(&self, a: &Var, b: &Var) -> bool {
        self.lookup(a.uid, b.uid).unwrap_or(a.uid == b.uid)
    }
}

fn term_eq(env: &Env, a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => env.var_eq(x, y),
        (Term::App(f, xs), Term::App(g, ys)) => f == g && terms_eq(env, xs, ys),
        (Term::Tuple(xs), Term::Tuple(ys)) => terms_eq(env, xs, ys),
        (Term::Skolem(u, xs), Term::Skolem(w, ys)) => env.var_eq(u, w) && terms_eq(env, xs, ys),
        _ => false,
    }
}

fn terms_eq(env: &Env, xs: &[Term], ys: &[Term]) -> bool {
    xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(env, x, y))
}

fn formula_eq(env: &mut Env, a: &Formula, b: &Formula) -> bool {
    match (a, b) {
        (Formula::Atom(x), Formula::Atom(y)) => {
            x.pred == y.pred && x.polarity == y.polarity && terms_eq(env, &x.args, &y.args)
        }
        (Formula::Forall(v, p), Formula::Forall(w, q)) | (Formula::Exists(v, p), Formula::Exists(w, q)) => {
            env.pairs.push((v.uid, w.uid));
            let ok = formula_eq(env, p, q);
            env.pairs.pop();
            ok
        }
        (Formula::Lolli(p1, n1), Formula::Lolli(p2, n2)) | (Formula::Tensor(p1, n1), Formula::Tensor(p2, n2)) => {
            formula_eq(env, p1, p2) && formula_eq(env, n1, n2)
        }
        (Formula::Up(p), Formula::Up(q)) | (Formula::Down(p), Formula::Down(q)) | (Formula::Bang(p), Formula::Bang(q)) => {
            formula_eq(env, p, q)
        }
        _ => false,
    }
}

/// Equality up to renaming of bound variables. Free variables must match by uid.
pub fn alpha_eq_formula(a: &Formula, b: &Formula) -> bool {
    formula_eq(&mut Env::default(), a, b)
}

/// Componentwise [`alpha_eq_formula`]; context order matters.
pub fn alpha_eq_sequent(a: &Sequent, b: &Sequent) -> bool {
    let eq = alpha_eq_formula;
    let focus = match (&a.focus, &b.focus) {
        (Focus::None, Focus::None) | (Focus::Right, Focus::Right) => true,
        (Focus::Left(x), Focus::Left(y)) => eq(x, y),
        _ => false,
    };
    focus
        && a.gamma.len() == b.gamma.len()
        && a.delta.len() == b.delta.len()
        && a.gamma.iter().zip(&b.gamma).all(|(x, y)| eq(x, y))
        && a.delta.iter().zip(&b.delta).all(|(x, y)| eq(x, y))
        && eq(&a.goal, &b.goal)
}

/// Consistent bijection between the variables of two skolemised objects.
#[derive(Default)]
struct Bijection {
    fwd: BTreeMap<u32, u32>,
    back: BTreeMap<u32, u32>,
}

impl Bijection {
    fn var(&mut self, a: &Var, b: &Var) -> bool {
        if a.kind != b.kind {
            return false;
        }
        match (self.fwd.get(&a.uid), self.back.get(&b.uid)) {
            (Some(&x), Some(&y)) => x == b.uid && y == a.uid,
            (None, None) => {
                self.fwd.insert(a.uid, b.uid);
                self.back.insert(b.uid, a.uid);
                true
            }
            _ => false,
        }
    }

    fn term(&mut self, a: &Term, b: &Term) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => self.var(x, y),
            (Term::App(f, xs), Term::App(g, ys)) => f == g && self.terms(xs, ys),
            (Term::Tuple(xs), Term::Tuple(ys)) => self.terms(xs, ys),
            (Term::Skolem(u, xs), Term::Skolem(w, ys)) => self.var(u, w) && self.terms(xs, ys),
            _ => false,
        }
    }

    fn terms(&mut self, xs: &[Term], ys: &[Term]) -> bool {
        xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.term(x, y))
    }

    fn context(&mut self, a: &VarContext, b: &VarContext) -> bool {
        a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| self.var(x, y))
    }

    fn subst(&mut self, a: &Substitution, b: &Substitution) -> bool {
        a.len() == b.len() && a.iter().zip(b.iter()).all(|((v, s), (w, t))| self.var(v, w) && self.term(s, t))
    }

    fn closure(&mut self, a: &Closure, b: &Closure) -> bool {
        self.var(&a.world, &b.world)
            && self.context(&a.phi, &b.phi)
            && self.subst(&a.sigma, &b.sigma)
            && self.sformula(&a.body, &b.body)
    }

    fn sformula(&mut self, a: &SFormula, b: &SFormula) -> bool {
        match (a, b) {
            (SFormula::Atom(x), SFormula::Atom(y)) => {
                x.pred == y.pred
                    && x.polarity == y.polarity
                    && self.terms(&x.args, &y.args)
                    && self.context(&x.phi, &y.phi)
            }
            (SFormula::Lolli(p1, n1), SFormula::Lolli(p2, n2))
            | (SFormula::Tensor(p1, n1), SFormula::Tensor(p2, n2)) => {
                self.sformula(p1, p2) && self.sformula(n1, n2)
            }
            (SFormula::Up(p), SFormula::Up(q)) | (SFormula::Down(p), SFormula::Down(q)) => self.sformula(p, q),
            (SFormula::Bang(c), SFormula::Bang(d)) => self.closure(c, d),
            _ => false,
        }
    }
}

/// Equality of skolemised sequents with their substitutions up to a
/// kind-preserving bijective renaming of all variables. Index contexts and
/// substitution entries are compared in order.
pub fn alpha_eq_skolemised(a: &SSequent, sa: &Substitution, b: &SSequent, sb: &Substitution) -> bool {
    let mut bij = Bijection::default();
    let focus = match (&a.focus, &b.focus) {
        (SFocus::None, SFocus::None) | (SFocus::Right, SFocus::Right) => true,
        (SFocus::Left(x), SFocus::Left(y)) => bij.sformula(x, y),
        _ => false,
    };
    focus
        && a.gamma.len() == b.gamma.len()
        && a.delta.len() == b.delta.len()
        && a.gamma.iter().zip(&b.gamma).all(|(x, y)| bij.closure(x, y))
        && a.delta.iter().zip(&b.delta).all(|(x, y)| bij.sformula(x, y))
        && bij.sformula(&a.goal, &b.goal)
        && bij.subst(sa, sb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Polarity, VarKind};

    fn a_of(v: &Var) -> Formula {
        Formula::atom("A", vec![Term::var(v)], Polarity::Negative)
    }

    #[test]
    fn renamed_formula_is_alpha_equal() {
        let x = Var::new("x", VarKind::Existential, 1);
        let f = Formula::forall(x.clone(), a_of(&x));
        let mut uids = UidSource::after(10);
        let mut r = Renaming::default();
        let g = alpha_rename(&f, &mut uids, &mut r);
        assert_ne!(f, g);
        assert!(alpha_eq_formula(&f, &g));
        assert_eq!(r.original.len(), 1);
    }

    #[test]
    fn free_variables_must_match() {
        let x = Var::new("x", VarKind::Existential, 1);
        let y = Var::new("y", VarKind::Existential, 2);
        assert!(!alpha_eq_formula(&a_of(&x), &a_of(&y)));
        let f = Formula::forall(x.clone(), a_of(&y));
        let g = Formula::forall(y.clone(), a_of(&y));
        assert!(!alpha_eq_formula(&f, &g));
    }

    #[test]
    fn shadowing_is_respected() {
        let x = Var::new("x", VarKind::Existential, 1);
        let y = Var::new("y", VarKind::Existential, 2);
        let f = Formula::forall(x.clone(), Formula::forall(x.clone(), a_of(&x)));
        let g = Formula::forall(x.clone(), Formula::forall(y.clone(), a_of(&x)));
        assert!(!alpha_eq_formula(&f, &g));
    }
}
