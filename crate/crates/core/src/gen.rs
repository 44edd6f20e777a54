//! Random closed, well-polarised sequents for agreement testing and benchmarks.

use crate::syntax::{Formula, Polarity, Sequent, Term, UidSource, Var, VarKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    /// Connectives on each side of the turnstile; shifts are not counted.
    pub max_connectives: usize,
    pub max_quantifiers: usize,
    pub max_bangs: usize,
    pub max_delta: usize,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig { max_connectives: 6, max_quantifiers: 3, max_bangs: 1, max_delta: 3 }
    }
}

const NEG: [(&str, usize); 2] = [("A", 1), ("B", 0)];
const POS: [(&str, usize); 2] = [("P", 1), ("Q", 0)];
const CONSTANTS: [&str; 2] = ["t0", "c"];
const NAMES: [&str; 3] = ["x", "y", "z"];

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    uids: UidSource,
    quantifiers: usize,
    bangs: usize,
    scope: Vec<Var>,
}

impl<R: Rng> Gen<'_, R> {
    fn term(&mut self) -> Term {
        if !self.scope.is_empty() && self.rng.gen_bool(0.75) {
            Term::var(self.scope.choose(self.rng).unwrap())
        } else {
            Term::constant(*CONSTANTS.choose(self.rng).unwrap())
        }
    }

    fn atom(&mut self, polarity: Polarity) -> Formula {
        let table = if polarity == Polarity::Negative { &NEG } else { &POS };
        let (pred, arity) = *table.choose(self.rng).unwrap();
        let args = (0..arity).map(|_| self.term()).collect();
        Formula::atom(pred, args, polarity)
    }

    fn binder(&mut self) -> Var {
        let name = NAMES[self.scope.len() % NAMES.len()];
        self.uids.fresh(name, VarKind::Existential)
    }

    fn split(&mut self, n: usize) -> (usize, usize) {
        let k = self.rng.gen_range(0..=n);
        (k, n - k)
    }

    fn quantified(&mut self, body: impl FnOnce(&mut Self) -> Formula, wrap: fn(Var, Formula) -> Formula) -> Formula {
        self.quantifiers -= 1;
        let x = self.binder();
        self.scope.push(x.clone());
        let f = body(self);
        self.scope.pop();
        wrap(x, f)
    }

    /// A negative formula using exactly `n` connectives. With `shifted`, the
    /// top node is not another shift.
    fn neg(&mut self, n: usize, shifted: bool) -> Formula {
        if n == 0 {
            return if shifted || self.rng.gen_bool(0.7) {
                self.atom(Polarity::Negative)
            } else {
                Formula::up(self.atom(Polarity::Positive))
            };
        }
        loop {
            match self.rng.gen_range(0..4) {
                0 | 1 => {
                    let (a, b) = self.split(n - 1);
                    return Formula::lolli(self.pos(a, false), self.neg(b, false));
                }
                2 if self.quantifiers > 0 => return self.quantified(|g| g.neg(n - 1, false), Formula::forall),
                3 if !shifted => return Formula::up(self.pos(n, true)),
                _ => {}
            }
        }
    }

    fn pos(&mut self, n: usize, shifted: bool) -> Formula {
        if n == 0 {
            return if shifted || self.rng.gen_bool(0.6) {
                self.atom(Polarity::Positive)
            } else {
                Formula::down(self.atom(Polarity::Negative))
            };
        }
        loop {
            match self.rng.gen_range(0..5) {
                0 | 1 => {
                    let (a, b) = self.split(n - 1);
                    return Formula::tensor(self.pos(a, false), self.pos(b, false));
                }
                2 if self.quantifiers > 0 => return self.quantified(|g| g.pos(n - 1, false), Formula::exists),
                3 if self.bangs > 0 => {
                    self.bangs -= 1;
                    return Formula::bang(self.neg(n - 1, false));
                }
                4 if !shifted => return Formula::down(self.neg(n, true)),
                _ => {}
            }
        }
    }
}

fn replace_const(f: &Formula, name: &str, with: &Term) -> Formula {
    fn term(t: &Term, name: &str, with: &Term) -> Term {
        match t {
            Term::App(c, args) if args.is_empty() && c == name => with.clone(),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| term(a, name, with)).collect()),
            other => other.clone(),
        }
    }
    let rec = |g: &Formula| Box::new(replace_const(g, name, with));
    match f {
        Formula::Atom(a) => {
            let args = a.args.iter().map(|t| term(t, name, with)).collect();
            Formula::atom(a.pred.clone(), args, a.polarity)
        }
        Formula::Lolli(a, b) => Formula::Lolli(rec(a), rec(b)),
        Formula::Tensor(a, b) => Formula::Tensor(rec(a), rec(b)),
        Formula::Forall(x, a) => Formula::Forall(x.clone(), rec(a)),
        Formula::Exists(x, a) => Formula::Exists(x.clone(), rec(a)),
        Formula::Up(a) => Formula::Up(rec(a)),
        Formula::Down(a) => Formula::Down(rec(a)),
        Formula::Bang(a) => Formula::Bang(rec(a)),
    }
}

fn mentions_const(f: &Formula, name: &str) -> bool {
    f.atoms().iter().any(|a| a.args.iter().any(|t| matches!(t, Term::App(c, args) if args.is_empty() && c == name)))
}

fn count(s: &Sequent, measure: fn(&Formula) -> usize) -> usize {
    s.formulas().map(measure).sum()
}

impl<R: Rng> Gen<'_, R> {
    /// Abstract constant `k` in `f` under a quantifier of the matching
    /// polarity, placed inside a top-level shift.
    fn generalise(&mut self, f: &Formula, k: &str) -> Formula {
        match f {
            Formula::Down(n) => Formula::down(self.generalise(n, k)),
            Formula::Up(p) => Formula::up(self.generalise(p, k)),
            _ => {
                let x = self.binder();
                let body = replace_const(f, k, &Term::var(&x));
                if f.is_negative() {
                    Formula::forall(x, body)
                } else {
                    Formula::exists(x, body)
                }
            }
        }
    }

    fn mutate(&mut self, s: &mut Sequent, config: &GenConfig) {
        let slot = self.rng.gen_range(0..=s.delta.len());
        let target = if slot == s.delta.len() { s.goal.clone() } else { s.delta[slot].clone() };
        let side_cost = if slot == s.delta.len() {
            s.goal.connective_count()
        } else {
            s.delta.iter().map(Formula::connective_count).sum()
        };
        let replaced = match self.rng.gen_range(0..3) {
            0 => {
                let (from, to) = if self.rng.gen_bool(0.5) { ("t0", "c") } else { ("c", "t0") };
                replace_const(&target, from, &Term::constant(to))
            }
            1 => {
                let k = *CONSTANTS.choose(self.rng).unwrap();
                if !mentions_const(&target, k)
                    || count(s, Formula::quantifier_count) >= config.max_quantifiers
                    || side_cost >= config.max_connectives
                {
                    return;
                }
                self.generalise(&target, k)
            }
            _ => {
                if s.delta.len() < config.max_delta {
                    let polarity = if self.rng.gen_bool(0.5) { Polarity::Positive } else { Polarity::Negative };
                    let a = self.atom(polarity);
                    s.delta.push(if polarity == Polarity::Negative { Formula::down(a) } else { a });
                }
                return;
            }
        };
        if slot == s.delta.len() {
            s.goal = replaced;
        } else {
            s.delta[slot] = replaced;
        }
    }

    /// `↓N ⊢ N` (or `P ⊢ ↑P`) followed by a few mutations.
    fn identity(&mut self, config: &GenConfig) -> Sequent {
        self.quantifiers = config.max_quantifiers / 2;
        self.bangs = config.max_bangs / 2;
        let n = self.rng.gen_range(0..=config.max_connectives.saturating_sub(2));
        let goal = self.neg(n, false);
        let assumption = match &goal {
            Formula::Up(p) => (**p).clone(),
            other => Formula::down(other.clone()),
        };
        let mut s = Sequent::new(Vec::new(), vec![assumption], goal);
        for _ in 0..self.rng.gen_range(0..=2) {
            self.mutate(&mut s, config);
        }
        s
    }
}

/// Draw one sequent `· ; Δ ⊢ N` within the limits of `config`. Two thirds
/// are mutated identities, the rest are drawn freely.
pub fn random_sequent<R: Rng>(rng: &mut R, config: &GenConfig) -> Sequent {
    let mut g = Gen { rng, uids: UidSource::new(), quantifiers: config.max_quantifiers, bangs: config.max_bangs, scope: Vec::new() };
    if g.rng.gen_bool(2.0 / 3.0) {
        return g.identity(config);
    }
    let count = g.rng.gen_range(1..=config.max_delta.max(1));
    let mut left = g.rng.gen_range(0..=config.max_connectives);
    let mut delta = Vec::new();
    for i in 0..count {
        let n = if i + 1 == count { left } else { g.rng.gen_range(0..=left) };
        left -= n;
        delta.push(g.pos(n, false));
    }
    let right = g.rng.gen_range(0..=config.max_connectives);
    let goal = g.neg(right, false);
    Sequent::new(Vec::new(), delta, goal)
}

/// `count` sequents drawn from a generator seeded with `seed`.
pub fn random_batch(seed: u64, count: usize, config: &GenConfig) -> Vec<Sequent> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_sequent(&mut rng, config)).collect()
}
