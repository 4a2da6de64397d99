//! Surface syntax: parsing into [`Expr`] and rewriting into positive normal form.

use std::fmt;

use thiserror::Error;

use super::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}

/// Unrestricted LTL syntax tree as written by the user or produced by the
/// random generator, before negations are pushed to the atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    True,
    False,
    Ap(String),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Equiv(Box<Expr>, Box<Expr>),
    Next(Box<Expr>),
    Eventually(Box<Expr>),
    Always(Box<Expr>),
    Until(Box<Expr>, Box<Expr>),
    Release(Box<Expr>, Box<Expr>),
    WeakUntil(Box<Expr>, Box<Expr>),
    StrongRelease(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn tree_size(&self) -> usize {
        use Expr::*;
        match self {
            True | False | Ap(_) => 1,
            Not(e) | Next(e) | Eventually(e) | Always(e) => 1 + e.tree_size(),
            And(l, r)
            | Or(l, r)
            | Implies(l, r)
            | Equiv(l, r)
            | Until(l, r)
            | Release(l, r)
            | WeakUntil(l, r)
            | StrongRelease(l, r) => 1 + l.tree_size() + r.tree_size(),
        }
    }

    /// Rewrites into positive normal form; W and M are eliminated,
    /// `φ W ψ ≡ ψ R (ψ | φ)` and `φ M ψ ≡ ψ U (φ & ψ)`.
    pub fn to_pnf(&self) -> Formula {
        self.pnf(false)
    }

    fn pnf(&self, neg: bool) -> Formula {
        use Expr::*;
        match (self, neg) {
            (True, false) | (False, true) => Formula::tt(),
            (True, true) | (False, false) => Formula::ff(),
            (Ap(a), false) => Formula::ap(a.clone()),
            (Ap(a), true) => Formula::neg_ap(a.clone()),
            (Not(e), _) => e.pnf(!neg),
            (And(l, r), false) | (Or(l, r), true) => Formula::and2(l.pnf(neg), r.pnf(neg)),
            (Or(l, r), false) | (And(l, r), true) => Formula::or2(l.pnf(neg), r.pnf(neg)),
            (Implies(l, r), false) => Formula::or2(l.pnf(true), r.pnf(false)),
            (Implies(l, r), true) => Formula::and2(l.pnf(false), r.pnf(true)),
            (Equiv(l, r), false) => {
                Formula::or2(Formula::and2(l.pnf(false), r.pnf(false)), Formula::and2(l.pnf(true), r.pnf(true)))
            }
            (Equiv(l, r), true) => {
                Formula::or2(Formula::and2(l.pnf(false), r.pnf(true)), Formula::and2(l.pnf(true), r.pnf(false)))
            }
            (Next(e), _) => Formula::next(e.pnf(neg)),
            (Eventually(e), false) | (Always(e), true) => Formula::eventually(e.pnf(neg)),
            (Always(e), false) | (Eventually(e), true) => Formula::always(e.pnf(neg)),
            (Until(l, r), false) | (Release(l, r), true) => Formula::until(l.pnf(neg), r.pnf(neg)),
            (Release(l, r), false) | (Until(l, r), true) => Formula::release(l.pnf(neg), r.pnf(neg)),
            (WeakUntil(l, r), false) => Formula::release(r.pnf(false), Formula::or2(r.pnf(false), l.pnf(false))),
            (WeakUntil(l, r), true) => Formula::until(r.pnf(true), Formula::and2(r.pnf(true), l.pnf(true))),
            (StrongRelease(l, r), false) => Formula::until(r.pnf(false), Formula::and2(l.pnf(false), r.pnf(false))),
            (StrongRelease(l, r), true) => Formula::release(r.pnf(true), Formula::or2(l.pnf(true), r.pnf(true))),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Expr::*;
        let bin = |f: &mut fmt::Formatter<'_>, l: &Expr, op: &str, r: &Expr| write!(f, "({l} {op} {r})");
        match self {
            True => write!(f, "true"),
            False => write!(f, "false"),
            Ap(a) => write!(f, "{a}"),
            Not(e) => write!(f, "!{e}"),
            Next(e) => write!(f, "X {e}"),
            Eventually(e) => write!(f, "F {e}"),
            Always(e) => write!(f, "G {e}"),
            And(l, r) => bin(f, l, "&", r),
            Or(l, r) => bin(f, l, "|", r),
            Implies(l, r) => bin(f, l, "->", r),
            Equiv(l, r) => bin(f, l, "<->", r),
            Until(l, r) => bin(f, l, "U", r),
            Release(l, r) => bin(f, l, "R", r),
            WeakUntil(l, r) => bin(f, l, "W", r),
            StrongRelease(l, r) => bin(f, l, "M", r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Equiv,
    LParen,
    RParen,
    /// One of X F G (unary) or U R W M (binary).
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'!' | b'~' => Tok::Not,
            b'&' => {
                if bytes.get(i + 1) == Some(&b'&') {
                    i += 1;
                }
                Tok::And
            }
            b'|' => {
                if bytes.get(i + 1) == Some(&b'|') {
                    i += 1;
                }
                Tok::Or
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if text[i..].starts_with("<->") => {
                i += 2;
                Tok::Equiv
            }
            b'0' => Tok::False,
            b'1' => Tok::True,
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                let word = &text[start..=i];
                match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "X" | "F" | "G" | "U" | "R" | "W" | "M" => Tok::Op(word.chars().next().unwrap()),
                    _ => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError::new(i, format!("unexpected character {ch:?}")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn equiv(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Equiv) {
            let rhs = self.implies()?;
            lhs = Expr::Equiv(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(Expr::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.binary_temporal()?;
        while self.eat(&Tok::And) {
            let rhs = self.binary_temporal()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn binary_temporal(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.unary()?;
        let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.peek() {
            Some(Tok::Op('U')) => Expr::Until,
            Some(Tok::Op('R')) => Expr::Release,
            Some(Tok::Op('W')) => Expr::WeakUntil,
            Some(Tok::Op('M')) => Expr::StrongRelease,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let rhs = self.binary_temporal()?;
        Ok(ctor(Box::new(lhs), Box::new(rhs)))
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(ParseError::new(at, "unexpected end of input"));
        };
        self.pos += 1;
        Ok(match tok {
            Tok::Not => Expr::Not(Box::new(self.unary()?)),
            Tok::Op('X') => Expr::Next(Box::new(self.unary()?)),
            Tok::Op('F') => Expr::Eventually(Box::new(self.unary()?)),
            Tok::Op('G') => Expr::Always(Box::new(self.unary()?)),
            Tok::True => Expr::True,
            Tok::False => Expr::False,
            Tok::Ident(name) => Expr::Ap(name),
            Tok::LParen => {
                let inner = self.equiv()?;
                if !self.eat(&Tok::RParen) {
                    return Err(ParseError::new(self.offset(), "expected ')'"));
                }
                inner
            }
            other => return Err(ParseError::new(at, format!("unexpected token {other:?}"))),
        })
    }
}

/// Parses the surface syntax without normalizing.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    let e = p.equiv()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::new(p.offset(), "trailing input"));
    }
    Ok(e)
}

/// Parses a formula and returns its positive normal form.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_expr(text).map(|e| e.to_pnf())
}
