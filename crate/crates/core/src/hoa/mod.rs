//! HOA v1 output (and input of our own output) plus a Graphviz rendering.
//!
//! HOA has no edge without destination, so branches that end are sent to an
//! extra accepting sink state, announced by the `accept-sink` header. If an
//! unmarked loop does not satisfy the acceptance formula, the sink loop gets
//! a fresh mark `k` and `Inf(k)` is added as a disjunct.

mod dot;
mod label;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use itertools::Itertools;
use thiserror::Error;

use crate::ltl::{self, Formula, Letter};
use crate::slaa::{Acc, MarkId, MarkOrigin, MarkSet, Slaa, StateId, Transition};

pub use dot::emit_dot;
pub use label::{condense, parse_label, render, Cube, LabelExpr};

use label::{hoa_literal, Cursor, Tok};

/// The automaton with every empty destination redirected to an accepting
/// sink, and the sink's id. Without empty destinations it is returned as is.
pub fn with_accepting_sink(a: &Slaa) -> (Slaa, Option<StateId>) {
    if a.transitions.iter().all(|t| !t.dest.is_empty()) {
        return (a.clone(), None);
    }
    let sink = a.states.len();
    let mut out = a.clone();
    out.states.push(Formula::tt());
    out.transitions = a
        .transitions
        .iter()
        .map(|t| Transition { dest: if t.dest.is_empty() { [sink].into() } else { t.dest.clone() }, ..t.clone() })
        .collect();
    let mut marks = MarkSet::new();
    if !a.acceptance.eval(&BTreeSet::new()) {
        let k = MarkId(a.marks.len() as u32);
        out.marks.push(MarkOrigin::Anonymous);
        out.acceptance = Acc::or([a.acceptance.clone(), Acc::inf(k)]);
        marks.insert(k);
    }
    for l in Letter::all(a.aps.len()) {
        out.transitions.insert(Transition { source: sink, letter: l, marks: marks.clone(), dest: [sink].into() });
    }
    (out, Some(sink))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Transitions of one state as `(dest, marks) -> letters`.
pub(crate) fn edges(a: &Slaa, s: StateId) -> BTreeMap<(&BTreeSet<StateId>, &MarkSet), BTreeSet<Letter>> {
    let mut out: BTreeMap<_, BTreeSet<Letter>> = BTreeMap::new();
    for t in a.transitions_from(s) {
        out.entry((&t.dest, &t.marks)).or_default().insert(t.letter);
    }
    out
}

pub fn emit_hoa(a: &Slaa) -> String {
    let (a, sink) = with_accepting_sink(a);
    let n = a.aps.len();
    let mut o = String::new();
    writeln!(o, "HOA: v1").unwrap();
    writeln!(o, "name: {}", quote(&a.states[a.initial].to_string())).unwrap();
    writeln!(o, "States: {}", a.states.len()).unwrap();
    writeln!(o, "Start: {}", a.initial).unwrap();
    let aps: String = a.aps.iter().map(|p| format!(" {}", quote(p))).collect();
    writeln!(o, "AP: {n}{aps}").unwrap();
    writeln!(o, "Acceptance: {} {}", a.marks.len(), a.acceptance).unwrap();
    let mut props = vec!["trans-labels", "explicit-labels", "trans-acc"];
    if a.transitions.iter().any(|t| t.dest.len() > 1) {
        props.push("univ-branch");
    }
    writeln!(o, "properties: {}", props.join(" ")).unwrap();
    if let Some(s) = sink {
        writeln!(o, "accept-sink: {s}").unwrap();
    }
    writeln!(o, "--BODY--").unwrap();
    for (s, f) in a.states.iter().enumerate() {
        writeln!(o, "State: {s} {}", quote(&f.to_string())).unwrap();
        for ((dest, marks), letters) in edges(&a, s) {
            let label = render(&condense(&letters, n), n, &hoa_literal);
            write!(o, "[{label}] {}", dest.iter().join("&")).unwrap();
            if !marks.is_empty() {
                write!(o, " {{{}}}", marks.iter().join(" ")).unwrap();
            }
            o.push('\n');
        }
    }
    writeln!(o, "--END--").unwrap();
    o
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct HoaError {
    pub line: usize,
    pub message: String,
}

pub fn parse_acceptance(text: &str) -> Result<Acc, String> {
    fn atom(c: &mut Cursor) -> Result<Acc, String> {
        match c.next() {
            Some(Tok::Sym('(')) => {
                let e = c.junctions(&mut atom, Acc::and, Acc::or)?;
                c.expect(')')?;
                Ok(e)
            }
            Some(Tok::Word(w)) if w == "t" => Ok(Acc::True),
            Some(Tok::Word(w)) if w == "f" => Ok(Acc::False),
            Some(Tok::Word(w)) if w == "Fin" || w == "Inf" => {
                c.expect('(')?;
                let Some(Tok::Int(m)) = c.next() else { return Err(format!("expected a mark after {w}")) };
                c.expect(')')?;
                Ok(if w == "Fin" { Acc::fin(MarkId(m)) } else { Acc::inf(MarkId(m)) })
            }
            t => Err(format!("unexpected {t:?} in acceptance")),
        }
    }
    let mut c = Cursor::new(text)?;
    let e = c.junctions(&mut atom, Acc::and, Acc::or)?;
    c.done()?;
    Ok(e)
}

/// Splits off leading quoted strings, unescaping them.
fn quoted(mut s: &str) -> Result<(Vec<String>, &str), String> {
    let mut out = Vec::new();
    loop {
        s = s.trim_start();
        let Some(rest) = s.strip_prefix('"') else { return Ok((out, s)) };
        let mut cur = String::new();
        let mut chars = rest.char_indices();
        let end = loop {
            match chars.next() {
                Some((_, '\\')) => cur.extend(chars.next().map(|(_, c)| c)),
                Some((i, '"')) => break i,
                Some((_, c)) => cur.push(c),
                None => return Err("unterminated string".into()),
            }
        };
        out.push(cur);
        s = &rest[end + 1..];
    }
}

fn int<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("expected a number, found {s:?}"))
}

/// Reads HOA as written by [`emit_hoa`], undoing the accepting sink.
pub fn parse_hoa(text: &str) -> Result<Slaa, HoaError> {
    let mut states = 0usize;
    let mut initial = 0;
    let mut aps = Vec::new();
    let mut mark_count = 0usize;
    let mut acceptance = Acc::True;
    let mut sink: Option<StateId> = None;
    let mut names: BTreeMap<StateId, String> = BTreeMap::new();
    let mut transitions = BTreeSet::new();
    let mut current: Option<StateId> = None;
    let mut body = false;
    let mut seen_version = false;

    for (idx, raw) in text.lines().enumerate() {
        let err = |message: String| HoaError { line: idx + 1, message };
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !body {
            if line == "--BODY--" {
                body = true;
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| err(format!("malformed header {line:?}")))?;
            match key {
                "HOA" => {
                    if value.trim() != "v1" {
                        return Err(err(format!("unsupported version {}", value.trim())));
                    }
                    seen_version = true;
                }
                "States" => states = int(value).map_err(err)?,
                "Start" => initial = int(value).map_err(err)?,
                "AP" => {
                    let value = value.trim_start();
                    let (count, rest) = value.split_once(' ').unwrap_or((value, ""));
                    let count: usize = int(count).map_err(err)?;
                    let (names, tail) = quoted(rest).map_err(err)?;
                    if names.len() != count || !tail.is_empty() {
                        return Err(err(format!("AP line declares {count} propositions")));
                    }
                    if count > ltl::MAX_APS {
                        return Err(err(format!("at most {} propositions are supported", ltl::MAX_APS)));
                    }
                    aps = names;
                }
                "Acceptance" => {
                    let value = value.trim_start();
                    let (count, rest) = value.split_once(' ').unwrap_or((value, "t"));
                    mark_count = int(count).map_err(err)?;
                    acceptance = parse_acceptance(rest).map_err(err)?;
                }
                "accept-sink" => sink = Some(int(value).map_err(err)?),
                _ => {}
            }
            continue;
        }
        if line == "--END--" {
            break;
        }
        if let Some(rest) = line.strip_prefix("State:") {
            let rest = rest.trim_start();
            let (id, tail) = rest.split_once(' ').unwrap_or((rest, ""));
            let id: StateId = int(id).map_err(err)?;
            if let Some(name) = quoted(tail).map_err(err)?.0.into_iter().next() {
                names.insert(id, name);
            }
            current = Some(id);
            continue;
        }
        let source = current.ok_or_else(|| err("edge before any State:".into()))?;
        let rest = line.strip_prefix('[').ok_or_else(|| err("edges need an explicit label".into()))?;
        let (label, rest) = rest.split_once(']').ok_or_else(|| err("unterminated label".into()))?;
        let label = parse_label(label).map_err(err)?;
        if label.max_ap().is_some_and(|i| i >= aps.len()) {
            return Err(err("label refers to an undeclared proposition".into()));
        }
        let (dest_text, marks_text) = match rest.split_once('{') {
            Some((d, m)) => (d, Some(m.strip_suffix('}').ok_or_else(|| err("unterminated mark set".into()))?)),
            None => (rest, None),
        };
        let dest: BTreeSet<StateId> = dest_text.split('&').map(int).collect::<Result<_, _>>().map_err(err)?;
        let marks: MarkSet = marks_text
            .map(|m| m.split_whitespace().map(|x| int(x).map(MarkId)).collect::<Result<_, _>>())
            .transpose()
            .map_err(err)?
            .unwrap_or_default();
        for letter in Letter::all(aps.len()).filter(|&l| label.eval(l)) {
            transitions.insert(Transition { source, letter, marks: marks.clone(), dest: dest.clone() });
        }
    }
    let eof = |message: &str| HoaError { line: text.lines().count(), message: message.into() };
    if !seen_version {
        return Err(eof("missing HOA: v1 header"));
    }
    if !body {
        return Err(eof("missing --BODY--"));
    }

    let mut marks = vec![MarkOrigin::Anonymous; mark_count];
    if let Some(k) = sink {
        if k + 1 != states {
            return Err(eof("the accepting sink must be the last state"));
        }
        let sink_marks: MarkSet = transitions.iter().filter(|t| t.source == k).flat_map(|t| t.marks.clone()).collect();
        for m in &sink_marks {
            acceptance = acceptance.substitute(&|t| (t == crate::slaa::Term::Inf(*m)).then_some(false));
        }
        marks.truncate(mark_count - sink_marks.len());
        transitions = transitions
            .into_iter()
            .filter(|t| t.source != k)
            .map(|t| Transition { dest: if t.dest == [k].into() { BTreeSet::new() } else { t.dest }, ..t })
            .collect();
        states -= 1;
    }
    let states = (0..states)
        .map(|s| names.get(&s).and_then(|n| ltl::parse(n).ok()).unwrap_or_else(|| Formula::ap(format!("s{s}"))))
        .collect();
    let a = Slaa { aps, states, marks, transitions, initial, acceptance };
    a.validate().map_err(|v| eof(&v.to_string()))?;
    Ok(a)
}
