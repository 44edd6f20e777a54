//! Terms, variables and formulas shared by both calculi.
//!
//! LJF formulas (with quantifiers) live in [`formula`], quantifier-free
//! skolemised formulas in [`sformula`]. Variables are identified by a
//! numeric uid; the name is only used for display.

mod alpha;
mod formula;
mod parse;
mod print;
mod sformula;

pub use alpha::{alpha_eq_formula, alpha_eq_sequent, alpha_eq_skolemised, alpha_rename, alpha_rename_sequent, Renaming};
pub use formula::{Atom, Focus, Formula, Polarity, Sequent};
pub use parse::{parse_formula, parse_problem, parse_sequent, ParseOptions, Problem};
pub use print::{Namer, SNamer};
pub use sformula::{free_vars, Closure, SAtom, SFocus, SFormula, SSequent};

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

/// Which of the three variable sorts a [`Var`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    /// Instantiable variable (`x`), introduced by left-universal / right-existential.
    Existential,
    /// Eigen-variable (`u`), introduced by right-universal / left-existential.
    Eigen,
    /// Rule marker (`a`) for tensor-right, lolli-left and bang.
    Special,
}

/// Side of a special variable created as half of an `(a_L, a_R)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// Pair membership of a special variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairTag {
    pub id: u32,
    pub side: Side,
}

/// A variable. Equality, ordering and hashing use `uid` only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub kind: VarKind,
    pub uid: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairTag>,
}

impl Var {
    pub fn new(name: impl Into<String>, kind: VarKind, uid: u32) -> Var {
        Var { name: name.into(), kind, uid, pair: None }
    }

    pub fn is_existential(&self) -> bool {
        self.kind == VarKind::Existential
    }

    pub fn is_eigen(&self) -> bool {
        self.kind == VarKind::Eigen
    }

    pub fn is_special(&self) -> bool {
        self.kind == VarKind::Special
    }

    /// Same identity, different sort. Used when a bound LJF variable becomes
    /// an SLJF variable whose sort depends on the side it was skolemised on.
    pub fn with_kind(&self, kind: VarKind) -> Var {
        Var { kind, ..self.clone() }
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Var) -> bool {
        self.uid == other.uid
    }
}

impl Eq for Var {}

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.uid.hash(state)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Var) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Var) -> Ordering {
        self.uid.cmp(&other.uid)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Source of fresh uids.
#[derive(Clone, Debug, Default)]
pub struct UidSource {
    next: u32,
}

impl UidSource {
    pub fn new() -> UidSource {
        UidSource { next: 1 }
    }

    /// A source whose uids are all strictly greater than `max_uid`.
    pub fn after(max_uid: u32) -> UidSource {
        UidSource { next: max_uid + 1 }
    }

    pub fn next_uid(&mut self) -> u32 {
        let uid = self.next;
        self.next += 1;
        uid
    }

    pub fn fresh(&mut self, name: impl Into<String>, kind: VarKind) -> Var {
        let uid = self.next_uid();
        Var::new(name, kind, uid)
    }

    /// Fresh copy of `v`: same name, kind and pair side, new uid.
    pub fn refresh(&mut self, v: &Var) -> Var {
        let uid = self.next_uid();
        Var { uid, ..v.clone() }
    }

    pub fn peek(&self) -> u32 {
        self.next
    }
}

/// First-order term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Var(Var),
    App(String, Vec<Term>),
    Tuple(Vec<Term>),
    /// Skolem term `u(t1..tn)`; the head is always an Eigen-variable.
    Skolem(Var, Vec<Term>),
}

impl Term {
    pub fn var(v: &Var) -> Term {
        Term::Var(v.clone())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    /// Every variable occurrence, Skolem heads included.
    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => out.push(v.clone()),
            Term::App(_, args) | Term::Tuple(args) => args.iter().for_each(|a| a.collect_vars(out)),
            Term::Skolem(u, args) => {
                out.push(u.clone());
                args.iter().for_each(|a| a.collect_vars(out));
            }
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn occurs(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) | Term::Tuple(args) => args.iter().any(|a| a.occurs(v)),
            Term::Skolem(u, args) => u == v || args.iter().any(|a| a.occurs(v)),
        }
    }

    /// Replace variables by uid. Skolem heads are renamed only if mapped to a variable.
    pub fn substitute(&self, map: &BTreeMap<u32, Term>) -> Term {
        match self {
            Term::Var(v) => map.get(&v.uid).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(map)).collect()),
            Term::Tuple(args) => Term::Tuple(args.iter().map(|a| a.substitute(map)).collect()),
            Term::Skolem(u, args) => {
                let head = match map.get(&u.uid) {
                    Some(Term::Var(w)) => w.clone(),
                    _ => u.clone(),
                };
                Term::Skolem(head, args.iter().map(|a| a.substitute(map)).collect())
            }
        }
    }

    /// Replace every Skolem application `u(..)` by the bare Eigen-variable `u`.
    pub fn collapse_skolems(&self) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(Term::collapse_skolems).collect()),
            Term::Tuple(args) => Term::Tuple(args.iter().map(Term::collapse_skolems).collect()),
            Term::Skolem(u, _) => Term::Var(u.clone()),
        }
    }

    pub fn max_uid(&self) -> u32 {
        self.vars().iter().map(|v| v.uid).max().unwrap_or(0)
    }
}

/// Function symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    symbols: BTreeMap<String, usize>,
}

impl Default for Signature {
    fn default() -> Signature {
        let mut symbols = BTreeMap::new();
        symbols.insert(Signature::DEFAULT_CONSTANT.to_string(), 0);
        Signature { symbols }
    }
}

impl Signature {
    /// Constant that is always present so the term universe is non-empty.
    pub const DEFAULT_CONSTANT: &'static str = "t0";

    pub fn declare(&mut self, name: impl Into<String>, arity: usize) {
        self.symbols.insert(name.into(), arity);
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// The constant used to ground leftover metavariables.
    pub fn witness_constant(&self) -> Term {
        Term::constant(Signature::DEFAULT_CONSTANT)
    }
}

/// Ordered list of distinct variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarContext(Vec<Var>);

impl VarContext {
    pub fn new() -> VarContext {
        VarContext(Vec::new())
    }

    /// Appends `v` unless it is already present.
    pub fn push(&mut self, v: Var) {
        if !self.0.contains(&v) {
            self.0.push(v);
        }
    }

    pub fn extended(&self, v: &Var) -> VarContext {
        let mut out = self.clone();
        out.push(v.clone());
        out
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.0.contains(v)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Var> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Var] {
        &self.0
    }

    pub fn union(&self, other: &VarContext) -> VarContext {
        let mut out = self.clone();
        for v in other.iter() {
            out.push(v.clone());
        }
        out
    }

    /// Existential and special variables only, in declaration order.
    pub fn non_eigen(&self) -> VarContext {
        VarContext(self.0.iter().filter(|v| !v.is_eigen()).cloned().collect())
    }

    pub fn to_set(&self) -> BTreeSet<Var> {
        self.0.iter().cloned().collect()
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.0.iter().map(Term::var).collect()
    }

    /// Rename by uid; variables mapped to something other than a variable are kept.
    pub fn rename(&self, map: &BTreeMap<u32, Term>) -> VarContext {
        let mut out = VarContext::new();
        for v in &self.0 {
            match map.get(&v.uid) {
                Some(Term::Var(w)) => out.push(w.clone()),
                _ => out.push(v.clone()),
            }
        }
        out
    }
}

impl FromIterator<Var> for VarContext {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> VarContext {
        let mut out = VarContext::new();
        for v in iter {
            out.push(v);
        }
        out
    }
}

impl<'a> IntoIterator for &'a VarContext {
    type Item = &'a Var;
    type IntoIter = std::slice::Iter<'a, Var>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
