//! Focused proof search over skolemised sequents.
//!
//! The search is written in continuation-passing style: each rule gets a
//! continuation to call once its premises are closed, and undoes its own
//! effects if the continuation fails. Linear resources are threaded lazily:
//! a premise may consume any available resource, and whatever it leaves is
//! available to the next premise. Resources created inside a `blurR` or `!R`
//! premise must be used up before that premise is left.

use super::proof::{copy_domain, rename_map, CopyInfo, SProof, SProofDoc, SRule};
use super::trace::{AxiomOutcome, Trace, TraceEvent};
use super::unify::{unify_all, Mismatch};
use crate::search::{Budget, FocusOrder, Stats, Verdict};
use crate::subst::{Substitution, Violation};
use crate::syntax::{Closure, Namer, SAtom, SFocus, SFormula, SSequent, Term, UidSource, Var, VarContext};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SljfOptions {
    pub budget: Budget,
    pub order: FocusOrder,
    pub trace: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SljfOutcome {
    pub verdict: Verdict,
    pub proof: Option<SProofDoc>,
    pub stats: Stats,
    pub trace: Trace,
}

type Cont<'a> = &'a mut dyn FnMut(&mut Engine) -> bool;

struct Resource {
    formula: SFormula,
    consumed_at: Option<usize>,
    produced_at: Option<usize>,
}

struct GammaEntry {
    closure: Closure,
    copies: u32,
    /// Entry this one was renamed from at `!R`; copies are counted there.
    origin: usize,
}

struct RawNode {
    rule: SRule,
    parent: Option<usize>,
    depth: usize,
    gamma: Vec<usize>,
    focus: SFocus,
    goal: SFormula,
    copy: Option<CopyInfo>,
    worlds: Vec<(Var, Var)>,
}

struct Engine {
    budget: Budget,
    order: FocusOrder,
    tracing: bool,
    sigma: Substitution,
    res: Vec<Resource>,
    avail: Vec<usize>,
    floor: usize,
    /// Start of each open boundary in `avail`.
    marks: Vec<usize>,
    closures: Vec<GammaEntry>,
    gamma: Vec<usize>,
    nodes: Vec<RawNode>,
    axioms: Vec<VarContext>,
    uids: UidSource,
    next_pair: u32,
    stats: Stats,
    trace: Trace,
    namer: Namer,
    cutoff: bool,
    aborted: bool,
    result: Option<SProofDoc>,
}

/// Search for a proof of `seq` starting from the skolemisation entries `sigma0`.
pub fn prove(seq: &SSequent, sigma0: &Substitution, options: &SljfOptions) -> SljfOutcome {
    let seq = seq.clone();
    let sigma0 = sigma0.clone();
    let options = options.clone();
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(scope, move || run(&seq, &sigma0, &options))
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    })
}

fn run(seq: &SSequent, sigma0: &Substitution, options: &SljfOptions) -> SljfOutcome {
    let max_uid = seq.max_uid().max(sigma0.max_uid());
    let mut e = Engine {
        budget: options.budget,
        order: options.order,
        tracing: options.trace,
        sigma: sigma0.clone(),
        res: Vec::new(),
        avail: Vec::new(),
        floor: 0,
        marks: Vec::new(),
        closures: Vec::new(),
        gamma: Vec::new(),
        nodes: Vec::new(),
        axioms: Vec::new(),
        uids: UidSource::after(max_uid),
        next_pair: max_pair(seq, sigma0) + 1,
        stats: Stats::default(),
        trace: Trace::default(),
        namer: Namer::default(),
        cutoff: false,
        aborted: false,
        result: None,
    };
    for c in &seq.gamma {
        e.closures.push(GammaEntry { closure: c.clone(), copies: 0, origin: e.closures.len() });
        e.gamma.push(e.closures.len() - 1);
    }
    for p in &seq.delta {
        e.res.push(Resource { formula: p.clone(), consumed_at: None, produced_at: None });
        e.avail.push(e.res.len() - 1);
    }
    let goal = seq.goal.clone();
    e.prove_goal(goal, None, &mut |s| {
        if s.avail.iter().any(|&r| s.res[r].consumed_at.is_none()) {
            return false;
        }
        if s.sigma.cycle_violation().is_some() || s.axioms.iter().any(|phi| s.sigma.branch_violation(phi).is_some()) {
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
    if e.tracing && verdict == Verdict::BudgetExhausted {
        let reason = if e.aborted { "node budget" } else { "depth bound" };
        e.trace.events.push(TraceEvent::Cutoff { reason: reason.into() });
    }
    SljfOutcome { verdict, proof: e.result, stats: e.stats, trace: e.trace }
}

fn max_pair(seq: &SSequent, sigma: &Substitution) -> u32 {
    let mut vars: Vec<Var> = seq.gamma.iter().flat_map(|c| SFormula::bang(c.clone()).all_vars()).collect();
    vars.extend(seq.formulas().flat_map(SFormula::all_vars));
    for (v, t) in sigma.iter() {
        vars.push(v.clone());
        vars.extend(t.vars());
    }
    vars.iter().filter_map(|v| v.pair.map(|p| p.id)).max().unwrap_or(0)
}

fn tuple_of(vars: Vec<Var>) -> Term {
    if vars.len() == 1 {
        Term::Var(vars.into_iter().next().unwrap())
    } else {
        Term::Tuple(vars.iter().map(Term::var).collect())
    }
}

fn explain(v: &Violation, namer: &mut Namer) -> String {
    match v {
        Violation::Cycle { witness, .. } => {
            format!("first condition of admissibility is violated for the variable {}", namer.name(witness))
        }
        Violation::BranchConflict { left, right, .. } => format!(
            "second condition of admissibility is violated: {} and {} are both reached",
            namer.name(left),
            namer.name(right)
        ),
    }
}

impl Engine {
    fn push_node(&mut self, rule: SRule, parent: Option<usize>, focus: SFocus, goal: &SFormula) -> Option<usize> {
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
        if self.tracing {
            let focus_text = match &focus {
                SFocus::Left(n) => format!("[{}] ", self.namer.sformula(n)),
                _ => String::new(),
            };
            let goal_text = self.namer.sformula(goal);
            let goal_text = if focus == SFocus::Right { format!("[{goal_text}]") } else { goal_text };
            self.trace.events.push(TraceEvent::Rule { rule, depth, sequent: format!("{focus_text}|- {goal_text}") });
        }
        self.nodes.push(RawNode { rule, parent, depth, gamma: self.gamma.clone(), focus, goal: goal.clone(), copy: None, worlds: Vec::new() });
        Some(self.nodes.len() - 1)
    }

    fn pop_node(&mut self, id: usize) {
        debug_assert_eq!(self.nodes.len(), id + 1);
        let rule = self.nodes[id].rule;
        let depth = self.nodes[id].depth;
        self.nodes.truncate(id);
        if self.tracing {
            self.trace.events.push(TraceEvent::Backtrack { rule, depth });
        }
    }

    fn produce(&mut self, formula: SFormula, node: usize) {
        self.res.push(Resource { formula, consumed_at: None, produced_at: Some(node) });
        self.avail.push(self.res.len() - 1);
    }

    fn unproduce(&mut self) {
        self.avail.pop();
        self.res.pop();
    }

    /// Unconsumed resources that may be used here, skipping duplicates.
    fn available(&self, pred: impl Fn(&SFormula) -> bool) -> Vec<usize> {
        let mut seen: Vec<(usize, &SFormula)> = Vec::new();
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

    fn prove_goal(&mut self, goal: SFormula, parent: Option<usize>, k: Cont) -> bool {
        let pending = self.available(|f| matches!(f, SFormula::Tensor(..) | SFormula::Bang(_)));
        if let Some(&rid) = pending.first() {
            return match self.res[rid].formula.clone() {
                SFormula::Tensor(p1, p2) => {
                    let Some(node) = self.push_node(SRule::TensorL, parent, SFocus::None, &goal) else { return false };
                    self.res[rid].consumed_at = Some(node);
                    self.produce(*p1, node);
                    self.produce(*p2, node);
                    let ok = self.prove_goal(goal, Some(node), k);
                    if !ok {
                        self.unproduce();
                        self.unproduce();
                        self.res[rid].consumed_at = None;
                        self.pop_node(node);
                    }
                    ok
                }
                SFormula::Bang(c) => {
                    let Some(node) = self.push_node(SRule::BangL, parent, SFocus::None, &goal) else { return false };
                    self.res[rid].consumed_at = Some(node);
                    let origin = self.closures.len();
                    self.closures.push(GammaEntry { closure: *c, copies: 0, origin });
                    self.gamma.push(self.closures.len() - 1);
                    let ok = self.prove_goal(goal, Some(node), k);
                    if !ok {
                        self.gamma.pop();
                        self.closures.pop();
                        self.res[rid].consumed_at = None;
                        self.pop_node(node);
                    }
                    ok
                }
                _ => unreachable!(),
            };
        }
        if let SFormula::Lolli(p, n) = &goal {
            let Some(node) = self.push_node(SRule::LolliR, parent, SFocus::None, &goal) else { return false };
            self.produce((**p).clone(), node);
            let ok = self.prove_goal((**n).clone(), Some(node), k);
            if !ok {
                self.unproduce();
                self.pop_node(node);
            }
            return ok;
        }
        self.stable(goal, parent, k)
    }

    fn stable(&mut self, goal: SFormula, parent: Option<usize>, k: Cont) -> bool {
        let right_first = self.order == FocusOrder::RightFirst;
        if right_first && self.try_right(&goal, parent, k) {
            return true;
        }
        for rid in self.available(|f| matches!(f, SFormula::Down(_))) {
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
            if self.closures[self.closures[gid].origin].copies >= self.budget.copy_bound {
                continue;
            }
            if self.copy(gid, &goal, parent, k) {
                return true;
            }
            self.stats.focus_backtracks += 1;
        }
        !right_first && self.try_right(&goal, parent, k)
    }

    fn try_right(&mut self, goal: &SFormula, parent: Option<usize>, k: Cont) -> bool {
        let SFormula::Up(p) = goal else { return false };
        let Some(node) = self.push_node(SRule::FocusR, parent, SFocus::None, goal) else { return false };
        let ok = self.focus_right((**p).clone(), Some(node), k);
        if !ok {
            self.pop_node(node);
            self.stats.focus_backtracks += 1;
        }
        ok
    }

    fn focus_resource(&mut self, rid: usize, goal: &SFormula, parent: Option<usize>, k: Cont) -> bool {
        let SFormula::Down(n) = self.res[rid].formula.clone() else { unreachable!() };
        let Some(node) = self.push_node(SRule::FocusL, parent, SFocus::None, goal) else { return false };
        self.res[rid].consumed_at = Some(node);
        let ok = self.focus_left(*n, goal.clone(), Some(node), k);
        if !ok {
            self.res[rid].consumed_at = None;
            self.pop_node(node);
        }
        ok
    }

    fn copy(&mut self, gid: usize, goal: &SFormula, parent: Option<usize>, k: Cont) -> bool {
        let closure = self.closures[gid].closure.clone();
        let Some(node) = self.push_node(SRule::Copy, parent, SFocus::None, goal) else { return false };
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut renaming: Vec<(Var, Var)> = Vec::new();
        for v in copy_domain(&closure) {
            let mut w = self.uids.refresh(&v);
            if let Some(tag) = w.pair.as_mut() {
                let id = match pairs.iter().find(|(old, _)| *old == tag.id) {
                    Some(&(_, new)) => new,
                    None => {
                        self.next_pair += 1;
                        pairs.push((tag.id, self.next_pair));
                        self.next_pair
                    }
                };
                tag.id = id;
            }
            renaming.push((v, w));
        }
        let map = rename_map(&renaming);
        let body = closure.body.rename(&map);
        let len = self.sigma.len();
        for (v, t) in closure.sigma.rename(&map).iter() {
            self.sigma.insert(v.clone(), t.clone()).expect("copied variables are fresh");
        }
        if self.tracing {
            let world = self.namer.name(&closure.world);
            let renamed = renaming.iter().map(|(v, w)| format!("{}/{}", self.namer.name(w), self.namer.name(v))).collect();
            self.trace.events.push(TraceEvent::Copy { world, renamed });
        }
        self.nodes[node].copy = Some(CopyInfo { world: closure.world.clone(), renaming });
        let origin = self.closures[gid].origin;
        self.closures[origin].copies += 1;
        self.stats.copies += 1;
        let ok = self.focus_left(body, goal.clone(), Some(node), k);
        if !ok {
            self.closures[origin].copies -= 1;
            self.sigma.truncate(len);
            self.pop_node(node);
        }
        ok
    }

    fn focus_left(&mut self, n: SFormula, goal: SFormula, parent: Option<usize>, k: Cont) -> bool {
        let focus = SFocus::Left(n.clone());
        match n {
            SFormula::Atom(a) => {
                let SFormula::Atom(b) = &goal else { return false };
                if a.pred != b.pred || a.polarity != b.polarity || a.args.len() != b.args.len() {
                    return false;
                }
                let Some(node) = self.push_node(SRule::AxNeg, parent, focus, &goal) else { return false };
                let b = b.clone();
                self.close_axiom(SRule::AxNeg, &a, &b, node, k)
            }
            SFormula::Up(p) => {
                let Some(node) = self.push_node(SRule::BlurL, parent, focus, &goal) else { return false };
                self.produce(*p, node);
                let ok = self.prove_goal(goal, Some(node), k);
                if !ok {
                    self.unproduce();
                    self.pop_node(node);
                }
                ok
            }
            SFormula::Lolli(p, m) => {
                let Some(node) = self.push_node(SRule::LolliL, parent, focus, &goal) else { return false };
                let m = *m;
                let ok = self.focus_right(*p, Some(node), &mut |s| s.focus_left(m.clone(), goal.clone(), Some(node), k));
                if !ok {
                    self.pop_node(node);
                }
                ok
            }
            _ => false,
        }
    }

    fn focus_right(&mut self, p: SFormula, parent: Option<usize>, k: Cont) -> bool {
        match &p {
            SFormula::Atom(b) => {
                let candidates = self.available(|f| match f {
                    SFormula::Atom(a) => a.pred == b.pred && a.polarity == b.polarity && a.args.len() == b.args.len(),
                    _ => false,
                });
                for rid in candidates {
                    let Some(node) = self.push_node(SRule::AxPos, parent, SFocus::Right, &p) else { return false };
                    self.res[rid].consumed_at = Some(node);
                    let SFormula::Atom(a) = self.res[rid].formula.clone() else { unreachable!() };
                    if self.close_axiom(SRule::AxPos, &a, b, node, k) {
                        return true;
                    }
                    self.res[rid].consumed_at = None;
                    self.stats.focus_backtracks += 1;
                }
                false
            }
            SFormula::Tensor(p1, p2) => {
                let Some(node) = self.push_node(SRule::TensorR, parent, SFocus::Right, &p) else { return false };
                let p2 = (**p2).clone();
                let ok = self.focus_right((**p1).clone(), Some(node), &mut |s| s.focus_right(p2.clone(), Some(node), k));
                if !ok {
                    self.pop_node(node);
                }
                ok
            }
            SFormula::Down(n) => {
                let Some(node) = self.push_node(SRule::BlurR, parent, SFocus::Right, &p) else { return false };
                let ok = self.boundary((**n).clone(), node, false, k);
                if !ok {
                    self.pop_node(node);
                }
                ok
            }
            SFormula::Bang(c) => {
                let Some(node) = self.push_node(SRule::BangR, parent, SFocus::Right, &p) else { return false };
                let len = self.sigma.len();
                let outer = self.gamma.clone();
                let entries = self.closures.len();
                if !self.bang_right(c, node) {
                    self.sigma.truncate(len);
                    self.pop_node(node);
                    return false;
                }
                let ok = self.boundary(c.body.clone(), node, true, &mut |s| {
                    let inner = std::mem::replace(&mut s.gamma, outer.clone());
                    if k(s) {
                        return true;
                    }
                    s.gamma = inner;
                    false
                });
                if !ok {
                    self.gamma = outer;
                    self.closures.truncate(entries);
                    self.sigma.truncate(len);
                    self.pop_node(node);
                }
                ok
            }
            _ => false,
        }
    }

    /// Prove `goal` as a separate sequent. With `lock`, no resource from
    /// outside is available (the `!R` premise).
    fn boundary(&mut self, goal: SFormula, node: usize, lock: bool, k: Cont) -> bool {
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

    /// Store extension of `!R`: the closure's own entries, its world bound to
    /// the indices of the unrestricted context, and a fresh world for each
    /// context entry bound to the closure's index. The premise sees the
    /// context under the fresh worlds.
    fn bang_right(&mut self, c: &Closure, node: usize) -> bool {
        let start = self.sigma.len();
        for (v, t) in c.sigma.iter() {
            match self.sigma.get(v) {
                Some(old) if old == t => {}
                Some(_) => return false,
                None => self.sigma.insert(v.clone(), t.clone()).expect("unbound"),
            }
        }
        if self.sigma.binds(&c.world) {
            return false;
        }
        let mut phis: Vec<Var> = Vec::new();
        for &gid in &self.gamma {
            for v in self.closures[gid].closure.phi.iter() {
                if !phis.contains(v) {
                    phis.push(v.clone());
                }
            }
        }
        self.sigma.insert(c.world.clone(), tuple_of(phis)).expect("unbound");
        let index = tuple_of(c.phi.iter().cloned().collect());
        let mut worlds = Vec::new();
        let mut renamed = Vec::new();
        for slot in 0..self.gamma.len() {
            let entry = &self.closures[self.gamma[slot]];
            let (old, origin) = (entry.closure.world.clone(), entry.origin);
            let new = self.uids.refresh(&old);
            let map = rename_map(&[(old.clone(), new.clone())]);
            let closure = entry.closure.rename(&map);
            self.sigma.insert(new.clone(), index.clone()).expect("fresh world");
            self.closures.push(GammaEntry { closure, copies: 0, origin });
            renamed.push(self.closures.len() - 1);
            worlds.push((old, new));
        }
        self.gamma = renamed;
        self.nodes[node].worlds = worlds;
        if self.tracing {
            let entries =
                self.sigma.entries()[start..].iter().map(|e| format!("{}/{}", self.namer.term(&e.term), self.namer.name(&e.var))).collect();
            self.trace.events.push(TraceEvent::Bind { entries });
        }
        true
    }

    fn close_axiom(&mut self, rule: SRule, a: &SAtom, b: &SAtom, node: usize, k: Cont) -> bool {
        self.stats.unifications += 1;
        let len = self.sigma.len();
        let unified = unify_all(&mut self.sigma, &a.args, &b.args);
        let outcome = match unified {
            Err(m) => {
                self.sigma.truncate(len);
                match m {
                    Mismatch::Clash => AxiomOutcome::Clash,
                    Mismatch::Occurs(v) => AxiomOutcome::OccursCheck { var: self.namer.name(&v) },
                }
            }
            Ok(()) => {
                self.stats.admissibility_checks += 1;
                let phi = a.phi.union(&b.phi);
                let violation = self
                    .sigma
                    .cycle_violation()
                    .or_else(|| self.sigma.branch_violation(&phi))
                    .or_else(|| self.axioms.iter().find_map(|q| self.sigma.branch_violation(q)));
                match violation {
                    Some(v) => {
                        if v.condition() == 1 {
                            self.stats.admissibility_failures_cond1 += 1;
                        } else {
                            self.stats.admissibility_failures_cond2 += 1;
                        }
                        self.sigma.truncate(len);
                        let explanation = explain(&v, &mut self.namer);
                        AxiomOutcome::Rejected { violation: v, explanation }
                    }
                    None => {
                        self.axioms.push(phi);
                        AxiomOutcome::Accepted
                    }
                }
            }
        };
        let accepted = outcome == AxiomOutcome::Accepted;
        if self.tracing {
            let assumption = self.namer.sformula(&SFormula::Atom(a.clone()));
            let goal = self.namer.sformula(&SFormula::Atom(b.clone()));
            self.trace.events.push(TraceEvent::Axiom { rule, assumption, goal, outcome });
            if accepted && self.sigma.len() > len {
                let entries = self.sigma.entries()[len..]
                    .iter()
                    .map(|e| format!("{}/{}", self.namer.term(&e.term), self.namer.name(&e.var)))
                    .collect();
                self.trace.events.push(TraceEvent::Bind { entries });
            }
        }
        if accepted && k(self) {
            return true;
        }
        if accepted {
            self.axioms.pop();
            self.sigma.truncate(len);
        }
        self.pop_node(node);
        false
    }

    fn build(&self) -> SProofDoc {
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
        let proof = self.tree(root, &children, &consumed, &produced);
        SProofDoc { proof, sigma: self.sigma.clone() }
    }

    fn tree(
        &self,
        id: usize,
        children: &[Vec<usize>],
        consumed: &[BTreeSet<usize>],
        produced: &[BTreeSet<usize>],
    ) -> SProof {
        let node = &self.nodes[id];
        let delta = consumed[id].difference(&produced[id]).map(|&r| self.res[r].formula.clone()).collect();
        let gamma = node.gamma.iter().map(|&g| self.closures[g].closure.clone()).collect();
        SProof {
            rule: node.rule,
            conclusion: SSequent { gamma, delta, focus: node.focus.clone(), goal: node.goal.clone() },
            premises: children[id].iter().map(|&c| self.tree(c, children, consumed, produced)).collect(),
            copy: node.copy.clone(),
            worlds: node.worlds.clone(),
        }
    }
}
