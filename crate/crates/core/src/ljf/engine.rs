//! Backtracking search in the focused calculus with quantifiers.
//!
//! `faL` and `exR` instantiate with a fresh metavariable that unification
//! binds later. Uids are allocated in creation order, so a metavariable may
//! only be bound to terms whose eigen-variables have a smaller uid; that is
//! the eigen-variable freshness condition.

use super::proof::{LProof, LRule};
use crate::search::{Budget, FocusOrder, Stats, Verdict};
use crate::sljf::unify::{resolve, unify_all};
use crate::subst::Substitution;
use crate::syntax::{Atom, Focus, Formula, Sequent, Signature, Term, UidSource, Var, VarKind};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LjfOptions {
    pub budget: Budget,
    pub order: FocusOrder,
}

impl Default for LjfOptions {
    fn default() -> LjfOptions {
        LjfOptions { budget: Budget::default(), order: FocusOrder::LeftFirst }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LjfOutcome {
    pub verdict: Verdict,
    pub proof: Option<LProof>,
    pub stats: Stats,
}

/// Fixed instantiations and copy renamings taken from a skolemised proof.
/// With a guide the search never creates metavariables: `faL` and `exR`
/// use the prescribed witness, eigen-variables keep the uid of their binder
/// and every copy renames the binders of the copied formula.
#[derive(Clone, Debug, Default)]
pub(crate) struct Guide {
    pub witnesses: BTreeMap<u32, Term>,
    pub renamings: Vec<BTreeMap<u32, Var>>,
    pub used: Vec<bool>,
}

type Cont<'a> = &'a mut dyn FnMut(&mut Engine) -> bool;

struct Resource {
    formula: Formula,
    consumed_at: Option<usize>,
    produced_at: Option<usize>,
}

struct GammaEntry {
    formula: Formula,
    copies: u32,
}

struct RawNode {
    rule: LRule,
    parent: Option<usize>,
    depth: usize,
    gamma: Vec<usize>,
    focus: Focus,
    goal: Formula,
    witness: Option<Term>,
    eigen: Option<Var>,
}

struct Engine {
    budget: Budget,
    order: FocusOrder,
    sigma: Substitution,
    metas: Vec<Var>,
    res: Vec<Resource>,
    avail: Vec<usize>,
    floor: usize,
    /// Start of each open boundary in `avail`.
    marks: Vec<usize>,
    entries: Vec<GammaEntry>,
    gamma: Vec<usize>,
    nodes: Vec<RawNode>,
    uids: UidSource,
    stats: Stats,
    cutoff: bool,
    aborted: bool,
    result: Option<LProof>,
    guide: Option<Guide>,
}

/// Search for a proof of the closed sequent `seq`.
pub fn prove_ljf(seq: &Sequent, options: &LjfOptions) -> LjfOutcome {
    on_big_stack(|| run(seq, options, None))
}

pub(crate) fn prove_guided(seq: &Sequent, options: &LjfOptions, guide: Guide) -> LjfOutcome {
    on_big_stack(|| run(seq, options, Some(guide)))
}

fn on_big_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(scope, f)
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    })
}

fn run(seq: &Sequent, options: &LjfOptions, guide: Option<Guide>) -> LjfOutcome {
    let mut e = Engine {
        budget: options.budget,
        order: options.order,
        sigma: Substitution::new(),
        metas: Vec::new(),
        res: Vec::new(),
        avail: Vec::new(),
        floor: 0,
        marks: Vec::new(),
        entries: Vec::new(),
        gamma: Vec::new(),
        nodes: Vec::new(),
        uids: UidSource::after(seq.max_uid()),
        stats: Stats::default(),
        cutoff: false,
        aborted: false,
        result: None,
        guide,
    };
    for f in &seq.gamma {
        e.entries.push(GammaEntry { formula: f.clone(), copies: 0 });
        e.gamma.push(e.entries.len() - 1);
    }
    for f in &seq.delta {
        e.res.push(Resource { formula: f.clone(), consumed_at: None, produced_at: None });
        e.avail.push(e.res.len() - 1);
    }
    e.prove_goal(seq.goal.clone(), None, &mut |s| {
        if s.avail.iter().any(|&r| s.res[r].consumed_at.is_none()) {
            return false;
        }
        s.result = Some(s.build());
        true
    });
    let verdict = match (&e.result, e.aborted || e.cutoff) {
        (Some(_), _) => Verdict::Proved,
        (None, true) => Verdict::BudgetExhausted,
        (None, false) => Verdict::Unprovable,
    };
    LjfOutcome { verdict, proof: e.result, stats: e.stats }
}

impl Engine {
    fn push_node(&mut self, rule: LRule, parent: Option<usize>, focus: Focus, goal: &Formula) -> Option<usize> {
        if self.aborted {
            return None;
        }
        if self.stats.node_expansions >= self.budget.max_nodes {
            self.aborted = true;
            return None;
        }
        let depth = parent.map_or(1, |p| self.nodes[p].depth + 1);
        if depth > self.budget.depth {
            self.cutoff = true;
            return None;
        }
        self.stats.node_expansions += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        self.nodes.push(RawNode {
            rule,
            parent,
            depth,
            gamma: self.gamma.clone(),
            focus,
            goal: goal.clone(),
            witness: None,
            eigen: None,
        });
        Some(self.nodes.len() - 1)
    }

    fn pop_node(&mut self, id: usize) {
        debug_assert_eq!(self.nodes.len(), id + 1);
        self.nodes.truncate(id);
    }

    fn produce(&mut self, formula: Formula, node: usize) {
        self.res.push(Resource { formula, consumed_at: None, produced_at: Some(node) });
        self.avail.push(self.res.len() - 1);
    }

    fn unproduce(&mut self) {
        self.avail.pop();
        self.res.pop();
    }

    fn available(&self, pred: impl Fn(&Formula) -> bool) -> Vec<usize> {
        let mut seen: Vec<(usize, &Formula)> = Vec::new();
        let mut out = Vec::new();
        for (pos, &r) in self.avail.iter().enumerate().skip(self.floor) {
            let f = &self.res[r].formula;
            let zone = self.marks.partition_point(|&m| m <= pos);
            if self.res[r].consumed_at.is_none() && pred(f) && !seen.contains(&(zone, f)) {
                seen.push((zone, f));
                out.push(r);
            }
        }
        out
    }

    fn fresh_eigen(&mut self, x: &Var) -> Var {
        if self.guide.is_some() {
            return x.with_kind(VarKind::Eigen);
        }
        self.uids.fresh(x.name.clone(), VarKind::Eigen)
    }

    /// The prescribed witness for `x`, provided every eigen-variable it
    /// mentions was introduced below `node`.
    fn guided_witness(&self, x: &Var, node: usize) -> Option<Term> {
        let guide = self.guide.as_ref()?;
        let t = guide.witnesses.get(&x.uid).cloned().unwrap_or_else(|| Signature::default().witness_constant());
        let mut open: BTreeSet<Var> = t.vars().into_iter().filter(Var::is_eigen).collect();
        let mut at = Some(node);
        while let (Some(id), false) = (at, open.is_empty()) {
            if let Some(u) = &self.nodes[id].eigen {
                open.remove(u);
            }
            at = self.nodes[id].parent;
        }
        open.is_empty().then_some(t)
    }

    fn witness_for(&mut self, x: &Var, node: usize) -> Option<Term> {
        if self.guide.is_some() {
            return self.guided_witness(x, node);
        }
        let m = self.uids.fresh(x.name.clone(), VarKind::Existential);
        self.metas.push(m.clone());
        Some(Term::var(&m))
    }

    fn drop_witness(&mut self) {
        if self.guide.is_none() {
            self.metas.pop();
            self.stats.term_backtracks += 1;
        }
    }

    fn prove_goal(&mut self, goal: Formula, parent: Option<usize>, k: Cont) -> bool {
        let pending = self.available(|f| matches!(f, Formula::Tensor(..) | Formula::Bang(_) | Formula::Exists(..)));
        if let Some(&rid) = pending.first() {
            let Some(node) = self.push_node(LRule::TensorL, parent, Focus::None, &goal) else { return false };
            self.res[rid].consumed_at = Some(node);
            let ok = match self.res[rid].formula.clone() {
                Formula::Tensor(p1, p2) => {
                    self.produce(*p1, node);
                    self.produce(*p2, node);
                    let ok = self.prove_goal(goal, Some(node), k);
                    if !ok {
                        self.unproduce();
                        self.unproduce();
                    }
                    ok
                }
                Formula::Bang(n) => {
                    self.nodes[node].rule = LRule::BangL;
                    self.entries.push(GammaEntry { formula: *n, copies: 0 });
                    self.gamma.push(self.entries.len() - 1);
                    let ok = self.prove_goal(goal, Some(node), k);
                    if !ok {
                        self.gamma.pop();
                        self.entries.pop();
                    }
                    ok
                }
                Formula::Exists(x, p) => {
                    self.nodes[node].rule = LRule::ExistsL;
                    let u = self.fresh_eigen(&x);
                    self.nodes[node].eigen = Some(u.clone());
                    self.produce(p.instantiate(&x, &Term::var(&u)), node);
                    let ok = self.prove_goal(goal, Some(node), k);
                    if !ok {
                        self.unproduce();
                    }
                    ok
                }
                _ => unreachable!(),
            };
            if !ok {
                self.res[rid].consumed_at = None;
                self.pop_node(node);
            }
            return ok;
        }
        match &goal {
            Formula::Lolli(p, n) => {
                let Some(node) = self.push_node(LRule::LolliR, parent, Focus::None, &goal) else { return false };
                self.produce((**p).clone(), node);
                let ok = self.prove_goal((**n).clone(), Some(node), k);
                if !ok {
                    self.unproduce();
                    self.pop_node(node);
                }
                ok
            }
            Formula::Forall(x, n) => {
                let Some(node) = self.push_node(LRule::ForallR, parent, Focus::None, &goal) else { return false };
                let u = self.fresh_eigen(x);
                self.nodes[node].eigen = Some(u.clone());
                let ok = self.prove_goal(n.instantiate(x, &Term::var(&u)), Some(node), k);
                if !ok {
                    self.pop_node(node);
                }
                ok
            }
            _ => self.stable(goal, parent, k),
        }
    }

    fn stable(&mut self, goal: Formula, parent: Option<usize>, k: Cont) -> bool {
        let right_first = self.order == FocusOrder::RightFirst;
        if right_first && self.try_right(&goal, parent, k) {
            return true;
        }
        for rid in self.available(|f| matches!(f, Formula::Down(_))) {
            if self.aborted {
                return false;
            }
            if self.focus_resource(rid, &goal, parent, k) {
                return true;
            }
            self.stats.focus_backtracks += 1;
        }
        for slot in 0..self.gamma.len() {
            if self.aborted {
                return false;
            }
            let gid = self.gamma[slot];
            if self.entries[gid].copies >= self.budget.copy_bound {
                continue;
            }
            if self.copy(gid, &goal, parent, k) {
                return true;
            }
            self.stats.focus_backtracks += 1;
        }
        !right_first && self.try_right(&goal, parent, k)
    }

    fn try_right(&mut self, goal: &Formula, parent: Option<usize>, k: Cont) -> bool {
        let Formula::Up(p) = goal else { return false };
        let Some(node) = self.push_node(LRule::FocusR, parent, Focus::None, goal) else { return false };
        let ok = self.focus_right((**p).clone(), Some(node), k);
        if !ok {
            self.pop_node(node);
            self.stats.focus_backtracks += 1;
        }
        ok
    }

    fn focus_resource(&mut self, rid: usize, goal: &Formula, parent: Option<usize>, k: Cont) -> bool {
        let Formula::Down(n) = self.res[rid].formula.clone() else { unreachable!() };
        let Some(node) = self.push_node(LRule::FocusL, parent, Focus::None, goal) else { return false };
        self.res[rid].consumed_at = Some(node);
        let ok = self.focus_left(*n, goal.clone(), Some(node), k);
        if !ok {
            self.res[rid].consumed_at = None;
            self.pop_node(node);
        }
        ok
    }

    fn copy(&mut self, gid: usize, goal: &Formula, parent: Option<usize>, k: Cont) -> bool {
        let body = self.entries[gid].formula.clone();
        if self.guide.is_some() {
            return self.guided_copy(gid, body, goal, parent, k);
        }
        self.copy_as(gid, body, goal, parent, k)
    }

    /// Try each unused recorded renaming whose domain is exactly the binders
    /// of `body`. Quantifier-free bodies need none.
    fn guided_copy(&mut self, gid: usize, body: Formula, goal: &Formula, parent: Option<usize>, k: Cont) -> bool {
        let binders: BTreeSet<u32> = body.binders().iter().map(|v| v.uid).collect();
        if binders.is_empty() {
            return self.copy_as(gid, body, goal, parent, k);
        }
        let guide = self.guide.as_ref().expect("guided");
        let candidates: Vec<usize> = (0..guide.renamings.len())
            .filter(|&i| !guide.used[i] && guide.renamings[i].keys().copied().collect::<BTreeSet<u32>>() == binders)
            .collect();
        for i in candidates {
            let renamed = rename_binders(&body, &self.guide.as_ref().expect("guided").renamings[i]);
            self.guide.as_mut().expect("guided").used[i] = true;
            if self.copy_as(gid, renamed, goal, parent, k) {
                return true;
            }
            self.guide.as_mut().expect("guided").used[i] = false;
            if self.aborted {
                return false;
            }
        }
        false
    }

    fn copy_as(&mut self, gid: usize, body: Formula, goal: &Formula, parent: Option<usize>, k: Cont) -> bool {
        let Some(node) = self.push_node(LRule::Copy, parent, Focus::None, goal) else { return false };
        self.entries[gid].copies += 1;
        self.stats.copies += 1;
        let ok = self.focus_left(body, goal.clone(), Some(node), k);
        if !ok {
            self.entries[gid].copies -= 1;
            self.pop_node(node);
        }
        ok
    }

    fn focus_left(&mut self, n: Formula, goal: Formula, parent: Option<usize>, k: Cont) -> bool {
        let focus = Focus::Left(n.clone());
        match n {
            Formula::Atom(a) => {
                let Formula::Atom(b) = &goal else { return false };
                let b = b.clone();
                let Some(node) = self.push_node(LRule::AxNeg, parent, focus, &goal) else { return false };
                self.close_axiom(&a, &b, node, k)
            }
            Formula::Up(p) => {
                let Some(node) = self.push_node(LRule::BlurL, parent, focus, &goal) else { return false };
                self.produce(*p, node);
                let ok = self.prove_goal(goal, Some(node), k);
                if !ok {
                    self.unproduce();
                    self.pop_node(node);
                }
                ok
            }
            Formula::Lolli(p, m) => {
                let Some(node) = self.push_node(LRule::LolliL, parent, focus, &goal) else { return false };
                let m = *m;
                let ok = self.focus_right(*p, Some(node), &mut |s| s.focus_left(m.clone(), goal.clone(), Some(node), k));
                if !ok {
                    self.pop_node(node);
                }
                ok
            }
            Formula::Forall(x, body) => {
                let Some(node) = self.push_node(LRule::ForallL, parent, focus, &goal) else { return false };
                let Some(t) = self.witness_for(&x, node) else {
                    self.pop_node(node);
                    return false;
                };
                self.nodes[node].witness = Some(t.clone());
                let ok = self.focus_left(body.instantiate(&x, &t), goal, Some(node), k);
                if !ok {
                    self.drop_witness();
                    self.pop_node(node);
                }
                ok
            }
            _ => false,
        }
    }

    fn focus_right(&mut self, p: Formula, parent: Option<usize>, k: Cont) -> bool {
        match &p {
            Formula::Atom(b) => {
                let candidates = self.available(|f| match f {
                    Formula::Atom(a) => a.pred == b.pred && a.polarity == b.polarity && a.args.len() == b.args.len(),
                    _ => false,
                });
                for rid in candidates {
                    let Some(node) = self.push_node(LRule::AxPos, parent, Focus::Right, &p) else { return false };
                    self.res[rid].consumed_at = Some(node);
                    let Formula::Atom(a) = self.res[rid].formula.clone() else { unreachable!() };
                    if self.close_axiom(&a, b, node, k) {
                        return true;
                    }
                    self.res[rid].consumed_at = None;
                    self.stats.focus_backtracks += 1;
                }
                false
            }
            Formula::Tensor(p1, p2) => {
                let Some(node) = self.push_node(LRule::TensorR, parent, Focus::Right, &p) else { return false };
                let p2 = (**p2).clone();
                let ok = self.focus_right((**p1).clone(), Some(node), &mut |s| s.focus_right(p2.clone(), Some(node), k));
                if !ok {
                    self.pop_node(node);
                }
                ok
            }
            Formula::Exists(x, body) => {
                let Some(node) = self.push_node(LRule::ExistsR, parent, Focus::Right, &p) else { return false };
                let Some(t) = self.witness_for(x, node) else {
                    self.pop_node(node);
                    return false;
                };
                self.nodes[node].witness = Some(t.clone());
                let ok = self.focus_right(body.instantiate(x, &t), Some(node), k);
                if !ok {
                    self.drop_witness();
                    self.pop_node(node);
                }
                ok
            }
            Formula::Down(n) => {
                let Some(node) = self.push_node(LRule::BlurR, parent, Focus::Right, &p) else { return false };
                let ok = self.boundary((**n).clone(), node, false, k);
                if !ok {
                    self.pop_node(node);
                }
                ok
            }
            Formula::Bang(n) => {
                let Some(node) = self.push_node(LRule::BangR, parent, Focus::Right, &p) else { return false };
                let ok = self.boundary((**n).clone(), node, true, k);
                if !ok {
                    self.pop_node(node);
                }
                ok
            }
            _ => false,
        }
    }

    fn boundary(&mut self, goal: Formula, node: usize, lock: bool, k: Cont) -> bool {
        let mark = self.avail.len();
        let gmark = self.gamma.len();
        let old_floor = self.floor;
        if lock {
            self.floor = mark;
        }
        self.marks.push(mark);
        let ok = self.prove_goal(goal, Some(node), &mut |s| {
            if s.avail[mark..].iter().any(|&r| s.res[r].consumed_at.is_none()) {
                return false;
            }
            let saved = s.avail.split_off(mark);
            let gsaved = s.gamma.split_off(gmark);
            let inner_floor = s.floor;
            s.floor = old_floor;
            s.marks.pop();
            if k(s) {
                return true;
            }
            s.marks.push(mark);
            s.floor = inner_floor;
            s.avail.extend(saved);
            s.gamma.extend(gsaved);
            false
        });
        if !ok {
            self.marks.pop();
            self.floor = old_floor;
        }
        ok
    }

    /// Every bound metavariable only mentions eigen-variables created before it.
    fn fresh_ok(&self) -> bool {
        self.metas.iter().filter(|m| self.sigma.binds(m)).all(|m| {
            resolve(&self.sigma, &Term::var(m)).vars().iter().all(|v| !v.is_eigen() || v.uid < m.uid)
        })
    }

    fn close_axiom(&mut self, a: &Atom, b: &Atom, node: usize, k: Cont) -> bool {
        if a.pred != b.pred || a.polarity != b.polarity {
            self.pop_node(node);
            return false;
        }
        self.stats.unifications += 1;
        let len = self.sigma.len();
        let ok = unify_all(&mut self.sigma, &a.args, &b.args).is_ok() && self.fresh_ok();
        if ok && k(self) {
            return true;
        }
        self.sigma.truncate(len);
        self.pop_node(node);
        false
    }

    fn grounding(&self) -> BTreeMap<u32, Term> {
        let t0 = Signature::default().witness_constant();
        let leftovers: BTreeMap<u32, Term> = self
            .metas
            .iter()
            .filter(|m| !self.sigma.binds(m))
            .map(|m| (m.uid, t0.clone()))
            .collect();
        self.metas.iter().map(|m| (m.uid, resolve(&self.sigma, &Term::var(m)).substitute(&leftovers))).collect()
    }

    fn build(&self) -> LProof {
        let map = self.grounding();
        let n = self.nodes.len();
        let mut consumed: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut produced: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (rid, r) in self.res.iter().enumerate() {
            if let Some(c) = r.consumed_at {
                consumed[c].insert(rid);
            }
            if let Some(p) = r.produced_at {
                produced[p].insert(rid);
            }
        }
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for id in (0..n).rev() {
            if let Some(p) = self.nodes[id].parent {
                children[p].push(id);
                let (c, q) = (consumed[id].clone(), produced[id].clone());
                consumed[p].extend(c);
                produced[p].extend(q);
            }
        }
        children.iter_mut().for_each(|c| c.reverse());
        let root = (0..n).find(|&i| self.nodes[i].parent.is_none()).expect("root node");
        self.tree(root, &children, &consumed, &produced, &map)
    }

    fn tree(
        &self,
        id: usize,
        children: &[Vec<usize>],
        consumed: &[BTreeSet<usize>],
        produced: &[BTreeSet<usize>],
        map: &BTreeMap<u32, Term>,
    ) -> LProof {
        let node = &self.nodes[id];
        let delta = consumed[id].difference(&produced[id]).map(|&r| self.res[r].formula.substitute(map)).collect();
        let gamma = node.gamma.iter().map(|&g| self.entries[g].formula.substitute(map)).collect();
        let focus = match &node.focus {
            Focus::Left(f) => Focus::Left(f.substitute(map)),
            other => other.clone(),
        };
        LProof {
            rule: node.rule,
            conclusion: Sequent { gamma, delta, focus, goal: node.goal.substitute(map) },
            premises: children[id].iter().map(|&c| self.tree(c, children, consumed, produced, map)).collect(),
            witness: node.witness.as_ref().map(|t| t.substitute(map)),
            eigen: node.eigen.clone(),
        }
    }
}

/// Rename bound variables by uid. Free occurrences of a renamed binder can
/// only be bound by that binder because binders are renamed apart.
fn rename_binders(f: &Formula, map: &BTreeMap<u32, Var>) -> Formula {
    let terms: BTreeMap<u32, Term> = map.iter().map(|(&u, v)| (u, Term::var(v))).collect();
    fn go(f: &Formula, map: &BTreeMap<u32, Var>, terms: &BTreeMap<u32, Term>) -> Formula {
        let rec = |g: &Formula| Box::new(go(g, map, terms));
        let binder = |x: &Var| map.get(&x.uid).cloned().unwrap_or_else(|| x.clone());
        match f {
            Formula::Atom(a) => Formula::Atom(a.substitute(terms)),
            Formula::Forall(x, n) => Formula::Forall(binder(x), rec(n)),
            Formula::Exists(x, p) => Formula::Exists(binder(x), rec(p)),
            Formula::Lolli(a, b) => Formula::Lolli(rec(a), rec(b)),
            Formula::Tensor(a, b) => Formula::Tensor(rec(a), rec(b)),
            Formula::Up(a) => Formula::Up(rec(a)),
            Formula::Down(a) => Formula::Down(rec(a)),
            Formula::Bang(a) => Formula::Bang(rec(a)),
        }
    }
    go(f, map, &terms)
}
