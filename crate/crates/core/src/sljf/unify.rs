//! Syntactic unification of atom arguments against a triangular store.
//!
//! Only existential variables are ever bound. Eigen-variables and their
//! Skolem applications are rigid and compared by head; special variables are
//! rigid.

use crate::subst::Substitution;
use crate::syntax::{Term, Var};

/// Why two atoms failed to unify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    Clash,
    Occurs(Var),
}

/// Follows bindings of existential variables until a non-variable or an
/// unbound variable is reached.
pub fn walk<'a>(sigma: &'a Substitution, mut t: &'a Term) -> &'a Term {
    while let Term::Var(x) = t {
        if !x.is_existential() {
            break;
        }
        match sigma.get(x) {
            Some(next) => t = next,
            None => break,
        }
    }
    t
}

/// Fully resolves existential bindings inside `t`.
pub fn resolve(sigma: &Substitution, t: &Term) -> Term {
    match walk(sigma, t) {
        Term::Var(v) => Term::Var(v.clone()),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| resolve(sigma, a)).collect()),
        Term::Tuple(args) => Term::Tuple(args.iter().map(|a| resolve(sigma, a)).collect()),
        Term::Skolem(u, _) => Term::Var(u.clone()),
    }
}

fn unbound_existential<'a>(sigma: &Substitution, t: &'a Term) -> Option<&'a Var> {
    match t {
        Term::Var(x) if x.is_existential() && !sigma.binds(x) => Some(x),
        _ => None,
    }
}

fn bind(sigma: &mut Substitution, x: &Var, t: &Term) -> Result<(), Mismatch> {
    if let Term::Var(y) = walk(sigma, t) {
        if y == x {
            return Ok(());
        }
    }
    if resolve(sigma, t).occurs(x) {
        return Err(Mismatch::Occurs(x.clone()));
    }
    sigma.insert(x.clone(), t.clone()).expect("variable checked unbound");
    Ok(())
}

fn rigid_head(t: &Term) -> Option<&Var> {
    match t {
        Term::Var(v) if !v.is_existential() => Some(v),
        Term::Skolem(u, _) => Some(u),
        _ => None,
    }
}

/// Unify `l` (the focused assumption side) with `r` (the goal side),
/// extending `sigma`. On failure `sigma` may contain partial bindings;
/// callers truncate it back.
pub fn unify(sigma: &mut Substitution, l: &Term, r: &Term) -> Result<(), Mismatch> {
    if let Some(x) = unbound_existential(sigma, r) {
        let x = x.clone();
        return bind(sigma, &x, l);
    }
    if let Some(x) = unbound_existential(sigma, l) {
        let x = x.clone();
        return bind(sigma, &x, r);
    }
    if let Term::Var(x) = r {
        if x.is_existential() {
            let next = sigma.get(x).cloned().expect("bound");
            return unify(sigma, l, &next);
        }
    }
    if let Term::Var(x) = l {
        if x.is_existential() {
            let next = sigma.get(x).cloned().expect("bound");
            return unify(sigma, &next, r);
        }
    }
    match (rigid_head(l), rigid_head(r)) {
        (Some(a), Some(b)) => return if a == b { Ok(()) } else { Err(Mismatch::Clash) },
        (Some(_), None) | (None, Some(_)) => return Err(Mismatch::Clash),
        (None, None) => {}
    }
    match (l, r) {
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => unify_all(sigma, xs, ys),
        (Term::Tuple(xs), Term::Tuple(ys)) if xs.len() == ys.len() => unify_all(sigma, xs, ys),
        _ => Err(Mismatch::Clash),
    }
}

pub fn unify_all(sigma: &mut Substitution, ls: &[Term], rs: &[Term]) -> Result<(), Mismatch> {
    if ls.len() != rs.len() {
        return Err(Mismatch::Clash);
    }
    for (l, r) in ls.iter().zip(rs) {
        unify(sigma, l, r)?;
    }
    Ok(())
}
