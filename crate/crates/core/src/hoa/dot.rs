use std::fmt::Write;

use itertools::Itertools;

use super::edges;
use super::label::{condense, render};
use crate::slaa::Slaa;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz text. Universal edges fork through a point node; ending branches
/// go to the `accept-end` point.
pub fn emit_dot(a: &Slaa) -> String {
    let n = a.aps.len();
    let lit = |i: usize, pos: bool| if pos { a.aps[i].clone() } else { format!("!{}", a.aps[i]) };
    let mut o = String::new();
    writeln!(o, "digraph slaa {{").unwrap();
    writeln!(o, "  rankdir=LR;").unwrap();
    writeln!(o, "  node [shape=box, style=rounded];").unwrap();
    writeln!(o, "  init [shape=none, label=\"\"];").unwrap();
    writeln!(o, "  init -> s{};", a.initial).unwrap();
    for (s, f) in a.states.iter().enumerate() {
        writeln!(o, "  s{s} [label=\"{}\"];", escape(&f.to_string())).unwrap();
    }
    let mut forks = 0;
    let mut ends = false;
    for s in 0..a.states.len() {
        for ((dest, marks), letters) in edges(a, s) {
            let mut label = render(&condense(&letters, n), n, &lit);
            if !marks.is_empty() {
                write!(label, " {{{}}}", marks.iter().join(",")).unwrap();
            }
            let label = escape(&label);
            match dest.len() {
                0 => {
                    ends = true;
                    writeln!(o, "  s{s} -> \"accept-end\" [label=\"{label}\"];").unwrap();
                }
                1 => writeln!(o, "  s{s} -> s{} [label=\"{label}\"];", dest.first().unwrap()).unwrap(),
                _ => {
                    let fork = format!("f{forks}");
                    forks += 1;
                    writeln!(o, "  {fork} [shape=point];").unwrap();
                    writeln!(o, "  s{s} -> {fork} [label=\"{label}\", arrowhead=none];").unwrap();
                    for d in dest {
                        writeln!(o, "  {fork} -> s{d};").unwrap();
                    }
                }
            }
        }
    }
    if ends {
        writeln!(o, "  \"accept-end\" [shape=point, xlabel=\"accept-end\"];").unwrap();
    }
    writeln!(o, "}}").unwrap();
    o
}
