//! Parser for the ASCII input grammar.
//!
//! ```text
//! problem  ::= header* sequent
//! header   ::= %pos p.. | %neg p.. | %const c.. | %fun f/n.. | %autoshift
//! sequent  ::= [ctx ;] ctx |- formula
//! formula  ::= fa x.. . formula | ex x.. . formula | tensor [-o formula]
//! tensor   ::= prefix (* prefix)*
//! prefix   ::= ! prefix | ^ prefix | v prefix | ( formula ) | atom | quantifier
//! atom     ::= p[+|-] [ ( term, .. ) ]
//! ```
//!
//! `#` starts a comment. Predicates are negative unless declared `%pos` or
//! written with a `+` suffix.

use super::{Formula, Polarity, Sequent, Signature, Term, UidSource, Var, VarKind};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Insert the minimal shifts instead of reporting polarity errors.
    pub autoshift: bool,
}

/// A parsed input file.
#[derive(Debug, Clone)]
pub struct Problem {
    pub sequent: Sequent,
    pub signature: Signature,
    pub polarities: BTreeMap<String, Polarity>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Semi,
    Turnstile,
    Lolli,
    Star,
    Bang,
    Caret,
    Plus,
    Minus,
    Slash,
    Percent,
    Newline,
    Number(usize),
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(n) => format!("`{n}`"),
        Tok::Eof => "end of input".into(),
        Tok::Newline => "end of line".into(),
        other => {
            let s = match other {
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::Comma => ",",
                Tok::Dot => ".",
                Tok::Semi => ";",
                Tok::Turnstile => "|-",
                Tok::Lolli => "-o",
                Tok::Star => "*",
                Tok::Bang => "!",
                Tok::Caret => "^",
                Tok::Plus => "+",
                Tok::Minus => "-",
                Tok::Slash => "/",
                _ => "%",
            };
            format!("`{s}`")
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, message: String| ParseError { line, col, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut advance = 1;
        let tok = match c {
            '\n' => {
                out.push((Tok::Newline, l0, c0));
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            ' ' | '\t' | '\r' => None,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                    col += 1;
                }
                continue;
            }
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            ';' => Some(Tok::Semi),
            '*' => Some(Tok::Star),
            '!' => Some(Tok::Bang),
            '^' => Some(Tok::Caret),
            '+' => Some(Tok::Plus),
            '/' => Some(Tok::Slash),
            '%' => Some(Tok::Percent),
            '|' if chars.get(i + 1) == Some(&'-') => {
                advance = 2;
                Some(Tok::Turnstile)
            }
            '-' if chars.get(i + 1) == Some(&'o') && !chars.get(i + 2).is_some_and(|&c| is_ident_char(c)) => {
                advance = 2;
                Some(Tok::Lolli)
            }
            '-' => Some(Tok::Minus),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                advance = j - i;
                let s: String = chars[i..j].iter().collect();
                Some(Tok::Number(s.parse().map_err(|_| err(l0, c0, "number too large".into()))?))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                advance = j - i;
                Some(Tok::Ident(chars[i..j].iter().collect()))
            }
            other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
        };
        if let Some(t) = tok {
            out.push((t, l0, c0));
        }
        i += advance;
        col += advance;
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

/// Formula before polarity resolution: atoms carry an optional explicit sign.
#[derive(Debug, Clone)]
enum Raw {
    Atom(String, Vec<Term>, Option<Polarity>, (usize, usize)),
    Lolli(Box<Raw>, Box<Raw>),
    Tensor(Box<Raw>, Box<Raw>),
    Forall(Var, Box<Raw>),
    Exists(Var, Box<Raw>),
    Bang(Box<Raw>),
    Up(Box<Raw>),
    Down(Box<Raw>),
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    uids: UidSource,
    scope: Vec<(String, Var)>,
    signature: Signature,
    declared: BTreeMap<String, usize>,
    polarities: BTreeMap<String, Polarity>,
    warnings: Vec<String>,
    autoshift: bool,
}

impl Parser {
    fn new(src: &str, options: ParseOptions) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            uids: UidSource::new(),
            scope: Vec::new(),
            signature: Signature::default(),
            declared: BTreeMap::new(),
            polarities: BTreeMap::new(),
            warnings: Vec::new(),
            autoshift: options.autoshift,
        })
    }

    /// Next token, skipping newlines unless `keep_lines`.
    fn peek_raw(&self, keep_lines: bool) -> (usize, &Tok) {
        let mut p = self.pos;
        while !keep_lines && self.toks[p].0 == Tok::Newline {
            p += 1;
        }
        (p, &self.toks[p].0)
    }

    fn peek(&self) -> &Tok {
        self.peek_raw(false).1
    }

    fn here(&self) -> (usize, usize) {
        let (p, _) = self.peek_raw(false);
        (self.toks[p].1, self.toks[p].2)
    }

    fn bump(&mut self) -> Tok {
        let (p, t) = self.peek_raw(false);
        let t = t.clone();
        self.pos = (p + 1).min(self.toks.len() - 1);
        t
    }

    fn error_at(&self, (line, col): (usize, usize), message: impl Into<String>) -> ParseError {
        ParseError { line, col, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.here(), message)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", describe(&t), describe(self.peek()))))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.error(format!("expected identifier, found {}", describe(&other)))),
        }
    }

    fn headers(&mut self) -> Result<(), ParseError> {
        while *self.peek() == Tok::Percent {
            self.bump();
            let at = self.here();
            let kw = self.ident()?;
            let mut args = Vec::new();
            loop {
                let (p, t) = self.peek_raw(true);
                match t.clone() {
                    Tok::Newline | Tok::Eof => {
                        self.pos = p;
                        break;
                    }
                    Tok::Ident(s) => {
                        self.pos = p + 1;
                        let mut arity = None;
                        if self.peek_raw(true).1 == &Tok::Slash {
                            self.pos = self.peek_raw(true).0 + 1;
                            match self.peek_raw(true) {
                                (q, Tok::Number(n)) => {
                                    arity = Some(*n);
                                    self.pos = q + 1;
                                }
                                _ => return Err(self.error("expected arity after `/`")),
                            }
                        }
                        args.push((s, arity, (self.toks[p].1, self.toks[p].2)));
                    }
                    Tok::Comma => self.pos = p + 1,
                    other => {
                        return Err(self.error_at((self.toks[p].1, self.toks[p].2), format!("unexpected {} in header", describe(&other))))
                    }
                }
            }
            match kw.as_str() {
                "pos" | "neg" => {
                    let pol = if kw == "pos" { Polarity::Positive } else { Polarity::Negative };
                    for (name, _, at) in args {
                        if self.polarities.insert(name.clone(), pol).is_some_and(|old| old != pol) {
                            return Err(self.error_at(at, format!("predicate `{name}` declared with both polarities")));
                        }
                    }
                }
                "const" => {
                    for (name, _, _) in args {
                        self.declare(&name, 0);
                    }
                }
                "fun" => {
                    for (name, arity, at) in args {
                        let Some(n) = arity else {
                            return Err(self.error_at(at, format!("function `{name}` needs an arity, as in `{name}/2`")));
                        };
                        self.declare(&name, n);
                    }
                }
                "autoshift" => self.autoshift = true,
                other => return Err(self.error_at(at, format!("unknown header `%{other}`"))),
            }
        }
        Ok(())
    }

    fn declare(&mut self, name: &str, arity: usize) {
        self.signature.declare(name, arity);
        self.declared.insert(name.to_string(), arity);
    }

    fn context(&mut self) -> Result<Vec<Raw>, ParseError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Tok::Semi | Tok::Turnstile) {
            return Ok(out);
        }
        out.push(self.formula()?);
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn formula(&mut self) -> Result<Raw, ParseError> {
        if let Tok::Ident(kw) = self.peek() {
            if kw == "fa" || kw == "ex" {
                return self.quantifier();
            }
        }
        let lhs = self.tensor()?;
        if *self.peek() == Tok::Lolli {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Raw::Lolli(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn quantifier(&mut self) -> Result<Raw, ParseError> {
        let universal = self.ident()? == "fa";
        let mut vars = Vec::new();
        while let Tok::Ident(name) = self.peek().clone() {
            let at = self.here();
            self.bump();
            if is_keyword(&name) {
                return Err(self.error_at(at, format!("`{name}` is reserved")));
            }
            if self.scope.iter().any(|(n, _)| *n == name) {
                self.warnings.push(format!("{}:{}: binder `{name}` shadows an outer binder", at.0, at.1));
            }
            let v = self.uids.fresh(name.clone(), VarKind::Existential);
            self.scope.push((name, v.clone()));
            vars.push(v);
        }
        if vars.is_empty() {
            return Err(self.error("expected a bound variable"));
        }
        self.expect(Tok::Dot)?;
        let mut body = self.formula()?;
        for v in vars.into_iter().rev() {
            self.scope.pop();
            body = if universal { Raw::Forall(v, Box::new(body)) } else { Raw::Exists(v, Box::new(body)) };
        }
        Ok(body)
    }

    fn tensor(&mut self) -> Result<Raw, ParseError> {
        let mut lhs = self.prefix()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.prefix()?;
            lhs = Raw::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Raw, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Raw::Bang(Box::new(self.prefix()?)))
            }
            Tok::Caret => {
                self.bump();
                Ok(Raw::Up(Box::new(self.prefix()?)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "v" => {
                self.bump();
                Ok(Raw::Down(Box::new(self.prefix()?)))
            }
            Tok::Ident(s) if s == "fa" || s == "ex" => self.quantifier(),
            Tok::Ident(_) => self.atom(),
            other => Err(self.error(format!("expected a formula, found {}", describe(&other)))),
        }
    }

    fn sign(&mut self) -> Option<Polarity> {
        match self.peek() {
            Tok::Plus => {
                self.bump();
                Some(Polarity::Positive)
            }
            Tok::Minus => {
                self.bump();
                Some(Polarity::Negative)
            }
            _ => None,
        }
    }

    fn atom(&mut self) -> Result<Raw, ParseError> {
        let at = self.here();
        let pred = self.ident()?;
        let mut sign = self.sign();
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            args = self.term_args()?;
            if sign.is_none() {
                sign = self.sign();
            }
        }
        Ok(Raw::Atom(pred, args, sign, at))
    }

    fn term_args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let at = self.here();
        let name = self.ident()?;
        let args = if *self.peek() == Tok::LParen { self.term_args()? } else { Vec::new() };
        if args.is_empty() {
            if let Some((_, v)) = self.scope.iter().rev().find(|(n, _)| *n == name) {
                return Ok(Term::var(v));
            }
        }
        match self.declared.get(&name) {
            Some(&n) if n != args.len() => {
                return Err(self.error_at(at, format!("`{name}` expects {n} argument(s), found {}", args.len())))
            }
            Some(_) => {}
            None => {
                if !name.starts_with(|c: char| c.is_ascii_lowercase()) {
                    return Err(self.error_at(at, format!("unbound variable `{name}`")));
                }
                self.declare(&name, args.len());
            }
        }
        Ok(Term::App(name, args))
    }

    fn resolve(&self, raw: Raw, want: Option<Polarity>) -> Result<Formula, ParseError> {
        use Polarity::{Negative, Positive};
        let f = match raw {
            Raw::Atom(pred, args, sign, at) => {
                let declared = self.polarities.get(&pred).copied();
                if let (Some(s), Some(d)) = (sign, declared) {
                    if s != d {
                        return Err(self.error_at(at, format!("predicate `{pred}` used with the wrong polarity sign")));
                    }
                }
                Formula::atom(pred, args, sign.or(declared).unwrap_or(Negative))
            }
            Raw::Lolli(p, n) => Formula::lolli(self.resolve(*p, Some(Positive))?, self.resolve(*n, Some(Negative))?),
            Raw::Tensor(p, q) => Formula::tensor(self.resolve(*p, Some(Positive))?, self.resolve(*q, Some(Positive))?),
            Raw::Forall(v, n) => Formula::forall(v, self.resolve(*n, Some(Negative))?),
            Raw::Exists(v, p) => Formula::exists(v, self.resolve(*p, Some(Positive))?),
            Raw::Bang(n) => Formula::bang(self.resolve(*n, Some(Negative))?),
            Raw::Up(p) => Formula::up(self.resolve(*p, Some(Positive))?),
            Raw::Down(n) => Formula::down(self.resolve(*n, Some(Negative))?),
        };
        Ok(match want {
            Some(pol) if self.autoshift && f.polarity() != pol => match pol {
                Positive => Formula::down(f),
                Negative => Formula::up(f),
            },
            _ => f,
        })
    }

    fn sequent(&mut self) -> Result<Sequent, ParseError> {
        let start = self.here();
        let first = self.context()?;
        let (gamma, delta) = if *self.peek() == Tok::Semi {
            self.bump();
            (first, self.context()?)
        } else {
            (Vec::new(), first)
        };
        self.expect(Tok::Turnstile)?;
        let goal = self.formula()?;
        if *self.peek() != Tok::Eof {
            return Err(self.error(format!("unexpected {} after the goal", describe(self.peek()))));
        }
        let gamma = gamma.into_iter().map(|f| self.resolve(f, Some(Polarity::Negative))).collect::<Result<_, _>>()?;
        let delta = delta.into_iter().map(|f| self.resolve(f, Some(Polarity::Positive))).collect::<Result<_, _>>()?;
        let goal = self.resolve(goal, Some(Polarity::Negative))?;
        let s = Sequent::new(gamma, delta, goal);
        s.check_polarised().map_err(|m| self.error_at(start, format!("polarity error: {m}")))?;
        Ok(s)
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "fa" | "ex" | "v")
}

/// Parse a whole input file: optional `%` headers followed by one sequent.
pub fn parse_problem(src: &str, options: ParseOptions) -> Result<Problem, ParseError> {
    let mut p = Parser::new(src, options)?;
    p.headers()?;
    let sequent = p.sequent()?;
    Ok(Problem { sequent, signature: p.signature, polarities: p.polarities, warnings: p.warnings })
}

pub fn parse_sequent(src: &str, options: ParseOptions) -> Result<Sequent, ParseError> {
    parse_problem(src, options).map(|p| p.sequent)
}

/// Parse a single formula. With auto-shift off, its polarity is whatever the
/// text denotes; with auto-shift on, only inner operands are adjusted.
pub fn parse_formula(src: &str, options: ParseOptions) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src, options)?;
    p.headers()?;
    let raw = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(format!("unexpected {} after the formula", describe(p.peek()))));
    }
    let f = p.resolve(raw, None)?;
    f.check_polarised().map_err(|m| p.error_at((1, 1), format!("polarity error: {m}")))?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq_formula, Namer};

    const AUTO: ParseOptions = ParseOptions { autoshift: true };
    const STRICT: ParseOptions = ParseOptions { autoshift: false };

    #[test]
    fn forall_over_lolli() {
        let f = parse_formula("%pos A\nfa x. (A(x) -o B(x))", STRICT).unwrap();
        match f {
            Formula::Forall(_, body) => assert!(matches!(*body, Formula::Lolli(..))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn autoshift_inserts_downs() {
        let f = parse_formula("A * fa u. B(u)", AUTO).unwrap();
        let Formula::Tensor(l, r) = f else { panic!() };
        assert!(matches!(*l, Formula::Down(ref a) if matches!(**a, Formula::Atom(_))));
        assert!(matches!(*r, Formula::Down(ref a) if matches!(**a, Formula::Forall(..))));
    }

    #[test]
    fn empty_contexts() {
        let s = parse_sequent("|- ex z. v B(z)", AUTO).unwrap();
        assert!(s.gamma.is_empty() && s.delta.is_empty());
        assert!(matches!(s.goal, Formula::Up(_)));
    }

    #[test]
    fn strict_mode_names_connective() {
        let e = parse_sequent("|- A * B", STRICT).unwrap_err();
        assert!(e.message.contains('*') || e.message.contains("tensor"), "{e}");
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_sequent("A |-\n  (B", AUTO).unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn sign_suffix_sets_polarity() {
        let s = parse_sequent("|- ^a+", STRICT).unwrap();
        let Formula::Up(a) = &s.goal else { panic!() };
        assert_eq!(a.polarity(), Polarity::Positive);
    }

    #[test]
    fn shadowing_warns() {
        let p = parse_problem("|- fa x. fa x. A(x)", AUTO).unwrap();
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn print_then_parse_round_trips() {
        let src = "%pos B\nfa x. (v A(x) -o B(x) * v (fa y. A(y)) -o ^!C)";
        let f = parse_formula(src, STRICT).unwrap();
        let text = Namer::default().formula(&f);
        let g = parse_formula(&format!("%pos B\n{text}"), STRICT).unwrap();
        assert!(alpha_eq_formula(&f, &g), "{text}");
    }
}
