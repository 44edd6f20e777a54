//! Text rendering in the ASCII input grammar (LJF) and in an index-annotated
//! notation for skolemised formulas.

use super::{Closure, Focus, Formula, Sequent, SFocus, SFormula, SSequent, Term, Var, VarContext};
use crate::subst::Substitution;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

/// Assigns each variable uid a distinct display name. The first variable
/// with a given name keeps it; later ones get a numeric suffix.
#[derive(Debug, Default, Clone)]
pub struct Namer {
    names: HashMap<u32, String>,
    taken: BTreeSet<String>,
}

/// Same namer; kept as a separate name for skolemised output.
pub type SNamer = Namer;

impl Namer {
    pub fn name(&mut self, v: &Var) -> String {
        if let Some(n) = self.names.get(&v.uid) {
            return n.clone();
        }
        let base = if v.name.is_empty() { "_".to_string() } else { v.name.clone() };
        let mut candidate = base.clone();
        let mut i = 1;
        while self.taken.contains(&candidate) || candidate == "v" || candidate == "fa" || candidate == "ex" {
            candidate = format!("{base}{i}");
            i += 1;
        }
        self.taken.insert(candidate.clone());
        self.names.insert(v.uid, candidate.clone());
        candidate
    }

    /// Reserve names (e.g. signature constants) so variables never print as them.
    pub fn reserve<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) {
        self.taken.extend(names.into_iter().map(str::to_string));
    }

    pub fn term(&mut self, t: &Term) -> String {
        match t {
            Term::Var(v) => self.name(v),
            Term::App(f, args) if args.is_empty() => f.clone(),
            Term::App(f, args) => format!("{f}({})", self.terms(args)),
            Term::Tuple(args) => format!("({})", self.terms(args)),
            Term::Skolem(u, args) => format!("{}({})", self.name(u), self.terms(args)),
        }
    }

    fn terms(&mut self, ts: &[Term]) -> String {
        ts.iter().map(|t| self.term(t)).collect::<Vec<_>>().join(",")
    }

    fn atom(&mut self, pred: &str, args: &[Term]) -> String {
        if args.is_empty() {
            pred.to_string()
        } else {
            format!("{pred}({})", self.terms(args))
        }
    }

    pub fn formula(&mut self, f: &Formula) -> String {
        let mut out = String::new();
        self.formula_at(f, 0, &mut out);
        out
    }

    // Levels: 0 quantifier body, 1 lolli, 2 tensor, 3 prefix operand.
    fn formula_at(&mut self, f: &Formula, level: u8, out: &mut String) {
        let own = match f {
            Formula::Forall(..) | Formula::Exists(..) => 0,
            Formula::Lolli(..) => 1,
            Formula::Tensor(..) => 2,
            _ => 3,
        };
        let paren = own < level;
        if paren {
            out.push('(');
        }
        match f {
            Formula::Atom(a) => out.push_str(&self.atom(&a.pred, &a.args)),
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                let q = if matches!(f, Formula::Forall(..)) { "fa" } else { "ex" };
                let _ = write!(out, "{q} {}. ", self.name(v));
                self.formula_at(b, 0, out);
            }
            Formula::Lolli(p, n) => {
                self.formula_at(p, 2, out);
                out.push_str(" -o ");
                self.formula_at(n, 1, out);
            }
            Formula::Tensor(p, q) => {
                self.formula_at(p, 2, out);
                out.push_str(" * ");
                self.formula_at(q, 3, out);
            }
            Formula::Bang(n) => {
                out.push('!');
                self.formula_at(n, 3, out);
            }
            Formula::Up(p) => {
                out.push('^');
                self.formula_at(p, 3, out);
            }
            Formula::Down(n) => {
                out.push_str("v ");
                self.formula_at(n, 3, out);
            }
        }
        if paren {
            out.push(')');
        }
    }

    pub fn sequent(&mut self, s: &Sequent) -> String {
        let gamma: Vec<String> = s.gamma.iter().map(|f| self.formula(f)).collect();
        let mut delta: Vec<String> = s.delta.iter().map(|f| self.formula(f)).collect();
        if let Focus::Left(n) = &s.focus {
            delta.push(format!("[{}]", self.formula(n)));
        }
        let goal = self.formula(&s.goal);
        let goal = if s.focus == Focus::Right { format!("[{goal}]") } else { goal };
        let lhs = if gamma.is_empty() {
            delta.join(", ")
        } else {
            format!("{} ; {}", gamma.join(", "), delta.join(", "))
        };
        if lhs.is_empty() {
            format!("|- {goal}")
        } else {
            format!("{lhs} |- {goal}")
        }
    }

    /// The sequent as a parseable problem: a `%pos` header for the positive
    /// predicates, then the sequent.
    pub fn problem(&mut self, s: &Sequent) -> String {
        let pos: BTreeSet<&str> = s
            .formulas()
            .flat_map(Formula::atoms)
            .filter(|a| a.polarity == super::Polarity::Positive)
            .map(|a| a.pred.as_str())
            .collect();
        let body = self.sequent(s);
        if pos.is_empty() {
            body
        } else {
            format!("%pos {}\n{body}", pos.into_iter().collect::<Vec<_>>().join(" "))
        }
    }

    pub fn context(&mut self, phi: &VarContext) -> String {
        phi.iter().map(|v| self.name(v)).collect::<Vec<_>>().join(",")
    }

    pub fn subst(&mut self, s: &Substitution) -> String {
        if s.is_empty() {
            return "·".to_string();
        }
        s.iter()
            .map(|(v, t)| format!("{}/{}", self.term(t), self.name(v)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn sformula(&mut self, f: &SFormula) -> String {
        let mut out = String::new();
        self.sformula_at(f, 1, &mut out);
        out
    }

    fn sformula_at(&mut self, f: &SFormula, level: u8, out: &mut String) {
        let own = match f {
            SFormula::Lolli(..) => 1,
            SFormula::Tensor(..) => 2,
            _ => 3,
        };
        let paren = own < level;
        if paren {
            out.push('(');
        }
        match f {
            SFormula::Atom(a) => {
                out.push_str(&self.atom(&a.pred, &a.args));
                let _ = write!(out, "_({})", self.context(&a.phi));
            }
            SFormula::Lolli(p, n) => {
                self.sformula_at(p, 2, out);
                out.push_str(" -o ");
                self.sformula_at(n, 1, out);
            }
            SFormula::Tensor(p, q) => {
                self.sformula_at(p, 2, out);
                out.push_str(" * ");
                self.sformula_at(q, 3, out);
            }
            SFormula::Bang(c) => {
                let _ = write!(out, "!{{{}}}", self.closure_label(c));
                self.sformula_at(&c.body, 3, out);
            }
            SFormula::Up(p) => {
                out.push('^');
                self.sformula_at(p, 3, out);
            }
            SFormula::Down(n) => {
                out.push_str("v ");
                self.sformula_at(n, 3, out);
            }
        }
        if paren {
            out.push(')');
        }
    }

    fn closure_label(&mut self, c: &Closure) -> String {
        let a = self.name(&c.world);
        let phi = self.context(&c.phi);
        let phi = if phi.is_empty() { "·".to_string() } else { phi };
        format!("{a}; {phi}; {}", self.subst(&c.sigma))
    }

    pub fn closure(&mut self, c: &Closure) -> String {
        let label = self.closure_label(c);
        format!("({label}):{}", self.sformula(&c.body))
    }

    pub fn ssequent(&mut self, s: &SSequent) -> String {
        let gamma: Vec<String> = s.gamma.iter().map(|c| self.closure(c)).collect();
        let mut delta: Vec<String> = s.delta.iter().map(|f| self.sformula(f)).collect();
        if let SFocus::Left(n) = &s.focus {
            delta.push(format!("[{}]", self.sformula(n)));
        }
        let goal = self.sformula(&s.goal);
        let goal = if s.focus == SFocus::Right { format!("[{goal}]") } else { goal };
        let lhs = if gamma.is_empty() {
            delta.join(", ")
        } else {
            format!("{} ; {}", gamma.join(", "), delta.join(", "))
        };
        if lhs.is_empty() {
            format!("|- {goal}")
        } else {
            format!("{lhs} |- {goal}")
        }
    }
}
