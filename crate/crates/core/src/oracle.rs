//! Membership of lasso words in an SLAA.
//!
//! A state's acceptance at a wrapped position only depends on the suffix of
//! the word, so it is decided state by state, lower states first. For a
//! fixed state the branches that keep looping form a graph over positions
//! whose edges are the usable self-loops; a branch is accepting if it
//! leaves the state through a usable non-loop transition or settles on a
//! cycle of this graph that satisfies some minimal model of the acceptance
//! formula.

use std::collections::BTreeSet;

use crate::ltl::{eval_lasso, Formula, LassoWord, WordError};
use crate::slaa::{minimal_models, MarkId, MarkSet, MinimalModel, Slaa, StateId};

/// Self-loops of one state that are usable at each position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopGraph {
    pub state: StateId,
    /// `edges[i]` holds the mark sets of the usable loops from `i` to `succ(i)`.
    pub edges: Vec<Vec<MarkSet>>,
    /// Whether some usable non-loop transition leaves the state at `i`.
    pub exits: Vec<bool>,
}

fn usable(a: &Slaa, w: &LassoWord, s: StateId, accepted: &dyn Fn(StateId, usize) -> bool) -> LoopGraph {
    let n = w.len();
    let mut edges = vec![Vec::new(); n];
    let mut exits = vec![false; n];
    for t in a.transitions_from(s) {
        for (i, edge) in edges.iter_mut().enumerate() {
            if w.letter(i) != t.letter {
                continue;
            }
            let j = w.succ(i);
            if !t.dest.iter().filter(|&&d| d != s).all(|&d| accepted(d, j)) {
                continue;
            }
            if t.is_loop() {
                edge.push(t.marks.clone());
            } else {
                exits[i] = true;
            }
        }
    }
    LoopGraph { state: s, edges, exits }
}

impl LoopGraph {
    /// Whether a branch can loop forever on the period cycle while
    /// satisfying `model`: after dropping loops with a `Fin` mark of the
    /// model, every period position still has a loop and together they
    /// carry every `Inf` mark.
    fn cycle_satisfies(&self, w: &LassoWord, model: &MinimalModel) -> bool {
        let mut seen: BTreeSet<MarkId> = BTreeSet::new();
        for i in w.prefix.len()..w.len() {
            let ok: Vec<&MarkSet> = self.edges[i].iter().filter(|m| m.is_disjoint(&model.fin_marks)).collect();
            if ok.is_empty() {
                return false;
            }
            seen.extend(ok.into_iter().flatten().copied());
        }
        model.inf_marks.is_subset(&seen)
    }

    /// Acceptance at every position.
    fn accepting(&self, w: &LassoWord, models: &[MinimalModel]) -> Vec<bool> {
        let n = w.len();
        let cycle_ok = models.iter().any(|o| self.cycle_satisfies(w, o));
        (0..n)
            .map(|start| {
                let mut i = start;
                for _ in 0..=n {
                    if self.exits[i] || (cycle_ok && i >= w.prefix.len()) {
                        return true;
                    }
                    if self.edges[i].is_empty() {
                        return false;
                    }
                    i = w.succ(i);
                }
                false
            })
            .collect()
    }
}

/// States ordered so that every state comes after all its non-self successors.
pub fn bottom_up_order(a: &Slaa) -> Vec<StateId> {
    let n = a.states.len();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    fn visit(a: &Slaa, s: StateId, done: &mut [bool], order: &mut Vec<StateId>) {
        done[s] = true;
        let succ: BTreeSet<StateId> =
            a.transitions_from(s).flat_map(|t| t.dest.iter().copied()).filter(|&d| d != s).collect();
        for d in succ {
            if !done[d] {
                visit(a, d, done, order);
            }
        }
        order.push(s);
    }
    for s in 0..n {
        if !done[s] {
            visit(a, s, &mut done, &mut order);
        }
    }
    order
}

/// Membership queries against one automaton, sharing the minimal models of
/// its acceptance formula.
pub struct Decider<'a> {
    automaton: &'a Slaa,
    models: Vec<MinimalModel>,
    order: Vec<StateId>,
}

impl<'a> Decider<'a> {
    pub fn new(automaton: &'a Slaa) -> Self {
        Decider { automaton, models: minimal_models(&automaton.acceptance), order: bottom_up_order(automaton) }
    }

    /// Whether the automaton accepts the word. The word's alphabet must
    /// contain every proposition of the automaton; other propositions are
    /// ignored.
    pub fn accepts(&self, w: &LassoWord) -> Result<bool, WordError> {
        let a = self.automaton;
        let w = w.restrict(&a.aps)?;
        let mut table: Vec<Option<Vec<bool>>> = vec![None; a.states.len()];
        for &s in &self.order {
            let lookup = |d: StateId, j: usize| table[d].as_ref().expect("successors are decided first")[j];
            let graph = usable(a, &w, s, &lookup);
            table[s] = Some(graph.accepting(&w, &self.models));
        }
        Ok(table[a.initial].as_ref().unwrap()[0])
    }
}

pub fn membership(a: &Slaa, w: &LassoWord) -> Result<bool, WordError> {
    Decider::new(a).accepts(w)
}

/// The same decision without any table: every successor query recomputes
/// the successor's acceptance from scratch. Exponential; for testing.
pub fn membership_naive(a: &Slaa, w: &LassoWord) -> Result<bool, WordError> {
    let w = w.restrict(&a.aps)?;
    let models = minimal_models(&a.acceptance);
    fn accept(a: &Slaa, w: &LassoWord, models: &[MinimalModel], s: StateId, i: usize) -> bool {
        let graph = usable(a, w, s, &|d, j| accept(a, w, models, d, j));
        graph.accepting(w, models)[i]
    }
    Ok(accept(a, &w, &models, a.initial, 0))
}

/// The loop graph of one state, with lower states decided first.
pub fn loop_graph(a: &Slaa, w: &LassoWord, s: StateId) -> Result<LoopGraph, WordError> {
    let w = w.restrict(&a.aps)?;
    let models = minimal_models(&a.acceptance);
    let mut table: Vec<Option<Vec<bool>>> = vec![None; a.states.len()];
    for q in bottom_up_order(a) {
        let lookup = |d: StateId, j: usize| table[d].as_ref().unwrap()[j];
        let graph = usable(a, &w, q, &lookup);
        if q == s {
            return Ok(graph);
        }
        table[q] = Some(graph.accepting(&w, &models));
    }
    unreachable!("state {s} out of range")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub word: LassoWord,
    pub formula_says: bool,
    pub automaton_says: bool,
}

/// Words on which the formula and the automaton disagree.
pub fn cross_check(f: &Formula, a: &Slaa, words: &[LassoWord]) -> Result<Vec<Disagreement>, WordError> {
    let decider = Decider::new(a);
    let mut out = Vec::new();
    for w in words {
        let formula_says = eval_lasso(f, w)?;
        let automaton_says = decider.accepts(w)?;
        if formula_says != automaton_says {
            out.push(Disagreement { word: w.clone(), formula_says, automaton_says });
        }
    }
    Ok(out)
}
