//! Edge labels: condensing letter sets into sums of cubes, and reading HOA
//! label expressions back.

use std::collections::BTreeSet;

use crate::ltl::Letter;

/// A conjunction of literals: `care` selects the propositions that occur,
/// `value` their polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub care: u32,
    pub value: u32,
}

impl Cube {
    fn covers(self, l: Letter) -> bool {
        l.0 & self.care == self.value
    }

    fn render(self, ap_count: usize, lit: &impl Fn(usize, bool) -> String) -> Vec<String> {
        (0..ap_count).filter(|i| self.care >> i & 1 == 1).map(|i| lit(i, self.value >> i & 1 == 1)).collect()
    }
}

/// Merges minterms that differ in one proposition until nothing merges, then
/// keeps a greedy cover of the letters, largest cubes first.
pub fn condense(letters: &BTreeSet<Letter>, ap_count: usize) -> Vec<Cube> {
    let full = if ap_count == 32 { u32::MAX } else { (1u32 << ap_count) - 1 };
    let mut cur: BTreeSet<Cube> = letters.iter().map(|l| Cube { care: full, value: l.0 }).collect();
    let mut primes = BTreeSet::new();
    while !cur.is_empty() {
        let mut merged = BTreeSet::new();
        let mut used = BTreeSet::new();
        let cubes: Vec<Cube> = cur.iter().copied().collect();
        for (i, a) in cubes.iter().enumerate() {
            for b in &cubes[i + 1..] {
                let diff = a.value ^ b.value;
                if a.care == b.care && diff.count_ones() == 1 {
                    merged.insert(Cube { care: a.care & !diff, value: a.value & !diff });
                    used.insert(*a);
                    used.insert(*b);
                }
            }
        }
        primes.extend(cur.difference(&used).copied());
        cur = merged;
    }
    let mut primes: Vec<Cube> = primes.into_iter().collect();
    primes.sort_by_key(|c| (c.care.count_ones(), *c));
    let mut covered = BTreeSet::new();
    let mut out = Vec::new();
    for c in primes {
        let mine: Vec<Letter> = letters.iter().copied().filter(|&l| c.covers(l)).collect();
        if mine.iter().any(|l| !covered.contains(l)) {
            covered.extend(mine);
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Renders a sum of cubes; `lit(i, positive)` names one literal.
pub fn render(cubes: &[Cube], ap_count: usize, lit: &impl Fn(usize, bool) -> String) -> String {
    match cubes {
        [] => "f".into(),
        [c] if c.care == 0 => "t".into(),
        [c] => c.render(ap_count, lit).join(" & "),
        _ => cubes
            .iter()
            .map(|c| {
                let lits = c.render(ap_count, lit);
                if lits.len() > 1 {
                    format!("({})", lits.join(" & "))
                } else {
                    lits.join("")
                }
            })
            .collect::<Vec<_>>()
            .join(" | "),
    }
}

pub fn hoa_literal(i: usize, positive: bool) -> String {
    if positive {
        i.to_string()
    } else {
        format!("!{i}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelExpr {
    Const(bool),
    Ap(usize),
    Not(Box<LabelExpr>),
    And(Vec<LabelExpr>),
    Or(Vec<LabelExpr>),
}

impl LabelExpr {
    pub fn eval(&self, l: Letter) -> bool {
        match self {
            LabelExpr::Const(b) => *b,
            LabelExpr::Ap(i) => l.contains(*i),
            LabelExpr::Not(e) => !e.eval(l),
            LabelExpr::And(v) => v.iter().all(|e| e.eval(l)),
            LabelExpr::Or(v) => v.iter().any(|e| e.eval(l)),
        }
    }

    pub fn max_ap(&self) -> Option<usize> {
        match self {
            LabelExpr::Const(_) => None,
            LabelExpr::Ap(i) => Some(*i),
            LabelExpr::Not(e) => e.max_ap(),
            LabelExpr::And(v) | LabelExpr::Or(v) => v.iter().filter_map(|e| e.max_ap()).max(),
        }
    }
}

/// Tokens shared by label and acceptance expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(u32),
    Word(String),
    Sym(char),
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut n = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                n.push(d);
                chars.next();
            }
            out.push(Tok::Int(n.parse().map_err(|e| format!("{e}"))?));
        } else if c.is_ascii_alphabetic() {
            let mut w = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                w.push(d);
                chars.next();
            }
            out.push(Tok::Word(w));
        } else if "!&|()".contains(c) {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

/// A cursor over tokens with the `|`/`&` precedence skeleton; atoms are
/// parsed by the caller.
pub(crate) struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self, String> {
        Ok(Cursor { toks: tokenize(text)?, pos: 0 })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected {c:?}"))
        }
    }

    pub(crate) fn done(&self) -> Result<(), String> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(format!("trailing input at {t:?}")),
        }
    }

    pub(crate) fn junctions<T>(
        &mut self,
        atom: &mut impl FnMut(&mut Self) -> Result<T, String>,
        and: impl Fn(Vec<T>) -> T + Copy,
        or: impl Fn(Vec<T>) -> T + Copy,
    ) -> Result<T, String> {
        let mut ors = Vec::new();
        loop {
            let mut ands = vec![atom(self)?];
            while self.eat('&') {
                ands.push(atom(self)?);
            }
            ors.push(if ands.len() == 1 { ands.pop().unwrap() } else { and(ands) });
            if !self.eat('|') {
                break;
            }
        }
        Ok(if ors.len() == 1 { ors.pop().unwrap() } else { or(ors) })
    }
}

pub fn parse_label(text: &str) -> Result<LabelExpr, String> {
    fn atom(c: &mut Cursor) -> Result<LabelExpr, String> {
        match c.next() {
            Some(Tok::Sym('!')) => Ok(LabelExpr::Not(Box::new(atom(c)?))),
            Some(Tok::Sym('(')) => {
                let e = c.junctions(&mut atom, LabelExpr::And, LabelExpr::Or)?;
                c.expect(')')?;
                Ok(e)
            }
            Some(Tok::Int(i)) => Ok(LabelExpr::Ap(i as usize)),
            Some(Tok::Word(w)) if w == "t" => Ok(LabelExpr::Const(true)),
            Some(Tok::Word(w)) if w == "f" => Ok(LabelExpr::Const(false)),
            t => Err(format!("unexpected {t:?} in label")),
        }
    }
    let mut c = Cursor::new(text)?;
    let e = c.junctions(&mut atom, LabelExpr::And, LabelExpr::Or)?;
    c.done()?;
    Ok(e)
}
