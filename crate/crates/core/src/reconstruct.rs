//! LJF proofs from skolemised proofs.
//!
//! The substitution of a skolemised proof fixes every quantifier
//! instantiation. Reconstruction replays the focused calculus with those
//! witnesses and with the copy renamings of the skolemised proof, so the only
//! remaining freedom is the order of focusing steps. Eigen-variables keep the
//! uid of their binder, which is also the head of their Skolem term.

use crate::ljf::{check_ljf_for, prove_guided, Guide, LProof, LRule, LjfOptions};
use crate::search::{Budget, FocusOrder, Verdict};
use crate::skolem::skolemise_sequent;
use crate::sljf::unify::resolve;
use crate::sljf::{check_sljf_for, CheckError, SProof, SProofDoc, SRule};
use crate::subst::Substitution;
use crate::syntax::{alpha_eq_sequent, Focus, Formula, Sequent, Signature, Term, Var};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Instantiate { var: Var, term: Term },
    IntroduceEigen { var: Var },
    Structural { rule: LRule },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Reconstruction {
    pub proof: LProof,
    /// Quantifier and structural rules in root-first pre-order.
    pub schedule: Vec<Event>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReconstructError {
    #[error("not a skolemised proof of the sequent: {0}")]
    Precondition(CheckError),
    #[error("no focused proof follows the skolemised proof ({})", .0.as_str())]
    NotFound(Verdict),
    #[error("reconstructed proof rejected: {0}")]
    Check(CheckError),
    #[error("{later} is scheduled before {earlier}, against the dependency order")]
    Order { earlier: String, later: String },
    #[error("reconstructed proof does not conclude the original sequent")]
    Conclusion,
}

/// Build an LJF proof of `original` from `doc`, a proof of
/// `skolemise_sequent(original)`.
pub fn reconstruct(doc: &SProofDoc, original: &Sequent) -> Result<Reconstruction, ReconstructError> {
    let sk = skolemise_sequent(original);
    check_sljf_for(doc, &sk.sequent, &sk.sigma).map_err(ReconstructError::Precondition)?;
    let source = sk.source;
    let mut renamings = Vec::new();
    let mut copies = 0;
    collect_renamings(&doc.proof, &mut renamings, &mut copies);
    let mut binders: BTreeSet<Var> = source.formulas().flat_map(Formula::binders).collect();
    binders.extend(renamings.iter().flat_map(|m| m.values().cloned()));
    let witnesses = binders.iter().map(|x| (x.uid, witness(&doc.sigma, x))).collect();
    let guide = Guide { witnesses, used: vec![false; renamings.len()], renamings };
    let height = doc.proof.height();
    let options = LjfOptions {
        budget: Budget { copy_bound: copies, depth: 4 * height + 20, ..Budget::default() },
        order: FocusOrder::RightFirst,
    };
    let outcome = prove_guided(&source, &options, guide);
    let proof = outcome.proof.ok_or(ReconstructError::NotFound(outcome.verdict))?;
    check_ljf_for(&proof, &source).map_err(ReconstructError::Check)?;
    if !alpha_eq_sequent(&proof.conclusion, original) {
        return Err(ReconstructError::Conclusion);
    }
    let mut schedule = Vec::new();
    events(&proof, &mut schedule);
    check_schedule(&schedule, &doc.sigma)?;
    Ok(Reconstruction { proof, schedule })
}

/// `xσ^∞` with Skolem terms collapsed to their Eigen-variables and every
/// unconstrained variable grounded to the witness constant.
fn witness(sigma: &Substitution, x: &Var) -> Term {
    let t = resolve(sigma, &Term::var(x));
    let t0 = Signature::default().witness_constant();
    let ground: BTreeMap<u32, Term> = t.vars().into_iter().filter(|v| !v.is_eigen()).map(|v| (v.uid, t0.clone())).collect();
    t.substitute(&ground)
}

fn collect_renamings(p: &SProof, out: &mut Vec<BTreeMap<u32, Var>>, copies: &mut u32) {
    if p.rule == SRule::Copy {
        *copies += 1;
        if let Some(info) = &p.copy {
            let map: BTreeMap<u32, Var> =
                info.renaming.iter().filter(|(v, _)| !v.is_special()).map(|(v, w)| (v.uid, w.clone())).collect();
            if !map.is_empty() {
                out.push(map);
            }
        }
    }
    p.premises.iter().for_each(|q| collect_renamings(q, out, copies));
}

fn events(p: &LProof, out: &mut Vec<Event>) {
    let c = &p.conclusion;
    match p.rule {
        LRule::ForallL => {
            if let (Focus::Left(Formula::Forall(x, _)), Some(t)) = (&c.focus, &p.witness) {
                out.push(Event::Instantiate { var: x.clone(), term: t.clone() });
            }
        }
        LRule::ExistsR => {
            if let (Formula::Exists(x, _), Some(t)) = (&c.goal, &p.witness) {
                out.push(Event::Instantiate { var: x.clone(), term: t.clone() });
            }
        }
        LRule::ForallR | LRule::ExistsL => {
            if let Some(u) = &p.eigen {
                out.push(Event::IntroduceEigen { var: u.clone() });
            }
        }
        LRule::TensorR | LRule::LolliL | LRule::BangR => out.push(Event::Structural { rule: p.rule }),
        _ => {}
    }
    p.premises.iter().for_each(|q| events(q, out));
}

/// `x < u` (the witness of `x` mentions `u`) puts the introduction of `u`
/// before the instantiation of `x`; `u < x` (`x` is a Skolem argument of
/// `u`) puts the instantiation of `x` before the introduction of `u`.
pub fn check_schedule(schedule: &[Event], sigma: &Substitution) -> Result<(), ReconstructError> {
    let mut pos: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, e) in schedule.iter().enumerate() {
        if let Event::Instantiate { var, .. } | Event::IntroduceEigen { var } = e {
            pos.entry(var.uid).or_insert(i);
        }
    }
    let before = |earlier: &Var, later: &Var| match (pos.get(&earlier.uid), pos.get(&later.uid)) {
        (Some(a), Some(b)) if a > b => Err(ReconstructError::Order { earlier: earlier.name.clone(), later: later.name.clone() }),
        _ => Ok(()),
    };
    for e in schedule {
        if let Event::Instantiate { var, term } = e {
            term.vars().iter().filter(|u| u.is_eigen()).try_for_each(|u| before(u, var))?;
        }
    }
    for (v, w) in &sigma.dependency_order().edges {
        if v.is_eigen() && w.is_existential() {
            before(w, v)?;
        }
    }
    Ok(())
}
