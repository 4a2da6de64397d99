//! Self-loop alternating automata: alternating automata over `2^AP` whose
//! only cycles are self-loops, with transition-based Emerson-Lei acceptance.

mod acceptance;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::ltl::{Clause, Formula, Letter};

pub use acceptance::{eval_acc, minimal_models, Acc, MinimalModel, Term};

/// Dense index of an acceptance mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkId(pub u32);

impl fmt::Display for MarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type MarkSet = BTreeSet<MarkId>;
pub type StateId = usize;

/// Which family of marks a mark belongs to, and for which subformula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkOrigin {
    /// The single co-Büchi mark shared by all until/eventually loops.
    Shared,
    /// Loop mark of one until subformula.
    UntilLoop(Formula),
    /// Mark on the `tt`-loop of one merged eventually subformula.
    EventuallyLoop(Formula),
    /// Clause mark of one disjunct `K` of a merged eventually subformula.
    Clause(Formula, Clause),
    /// Clause mark shared across eventually subformulae by its index.
    ReusedClause(usize),
    /// Escape mark of a subformula merged into an always state.
    Escape(Formula),
    /// Mark of an automaton read from a file.
    Anonymous,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub source: StateId,
    pub letter: Letter,
    pub marks: MarkSet,
    pub dest: BTreeSet<StateId>,
}

impl Transition {
    pub fn is_loop(&self) -> bool {
        self.dest.contains(&self.source)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slaa {
    /// Ordered atomic propositions; letters are bitmasks over this list.
    pub aps: Vec<String>,
    /// State labels; a state's id is its index.
    pub states: Vec<Formula>,
    /// Declared marks; a mark's id is its index.
    pub marks: Vec<MarkOrigin>,
    pub transitions: BTreeSet<Transition>,
    pub initial: StateId,
    pub acceptance: Acc,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("initial state {0} is not declared")]
    MissingInitial(StateId),
    #[error("transition from state {from} refers to undeclared state {state}")]
    DanglingState { from: StateId, state: StateId },
    #[error("transition from state {from} carries undeclared mark {mark}")]
    UndeclaredMark { from: StateId, mark: MarkId },
    #[error("acceptance formula mentions undeclared mark {0}")]
    UndeclaredAcceptanceMark(MarkId),
    #[error("letter {letter:?} of a transition from state {from} is outside the alphabet")]
    LetterOutOfRange { from: StateId, letter: Letter },
    #[error("states {0:?} form a cycle that is not a self-loop")]
    Cycle(Vec<StateId>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub states: usize,
    pub reachable_states: usize,
    pub marks: usize,
    pub is_deterministic: bool,
    pub is_nonalternating: bool,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states={} marks={} det={} nonalt={}",
            self.reachable_states, self.marks, self.is_deterministic, self.is_nonalternating
        )
    }
}

impl Slaa {
    pub fn transitions_from(&self, s: StateId) -> impl Iterator<Item = &Transition> {
        let lo = Transition { source: s, letter: Letter(0), marks: MarkSet::new(), dest: BTreeSet::new() };
        self.transitions.range(lo..).take_while(move |t| t.source == s)
    }

    /// Transitions grouped by `(source, letter)`.
    pub fn by_source_letter(&self) -> BTreeMap<(StateId, Letter), Vec<&Transition>> {
        let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for t in &self.transitions {
            out.entry((t.source, t.letter)).or_default().push(t);
        }
        out
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.states.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for t in self.transitions_from(s) {
                for &d in &t.dest {
                    if !seen[d] {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        order
    }

    /// Marks occurring on transitions.
    pub fn used_marks(&self) -> MarkSet {
        self.transitions.iter().flat_map(|t| t.marks.iter().copied()).collect()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        validate(self)
    }

    pub fn stats(&self) -> Stats {
        stats(self)
    }

    pub fn state_index(&self, f: &Formula) -> Option<StateId> {
        self.states.iter().position(|s| s == f)
    }
}

/// Checks every structural invariant and reports the first violation.
pub fn validate(a: &Slaa) -> Result<(), Violation> {
    let n = a.states.len();
    if a.initial >= n {
        return Err(Violation::MissingInitial(a.initial));
    }
    let letters = 1u64 << a.aps.len();
    for t in &a.transitions {
        if t.source >= n {
            return Err(Violation::DanglingState { from: t.source, state: t.source });
        }
        if let Some(&d) = t.dest.iter().find(|&&d| d >= n) {
            return Err(Violation::DanglingState { from: t.source, state: d });
        }
        if let Some(&m) = t.marks.iter().find(|m| m.0 as usize >= a.marks.len()) {
            return Err(Violation::UndeclaredMark { from: t.source, mark: m });
        }
        if u64::from(t.letter.0) >= letters {
            return Err(Violation::LetterOutOfRange { from: t.source, letter: t.letter });
        }
    }
    if let Some(m) = a.acceptance.marks().into_iter().find(|m| m.0 as usize >= a.marks.len()) {
        return Err(Violation::UndeclaredAcceptanceMark(m));
    }
    find_cycle(a).map_or(Ok(()), |c| Err(Violation::Cycle(c)))
}

/// A cycle of the successor relation without self-loops, if any.
fn find_cycle(a: &Slaa) -> Option<Vec<StateId>> {
    let n = a.states.len();
    let mut succ: Vec<BTreeSet<StateId>> = vec![BTreeSet::new(); n];
    for t in &a.transitions {
        succ[t.source].extend(t.dest.iter().filter(|&&d| d != t.source));
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut color = vec![0u8; n];
    let mut path = Vec::new();
    fn dfs(s: StateId, succ: &[BTreeSet<StateId>], color: &mut [u8], path: &mut Vec<StateId>) -> Option<Vec<StateId>> {
        color[s] = 1;
        path.push(s);
        for &d in &succ[s] {
            if color[d] == 1 {
                let start = path.iter().position(|&x| x == d).unwrap();
                return Some(path[start..].to_vec());
            }
            if color[d] == 0 {
                if let Some(c) = dfs(d, succ, color, path) {
                    return Some(c);
                }
            }
        }
        path.pop();
        color[s] = 2;
        None
    }
    (0..n).find_map(|s| if color[s] == 0 { dfs(s, &succ, &mut color, &mut path) } else { None })
}

pub fn stats(a: &Slaa) -> Stats {
    let reachable: BTreeSet<StateId> = a.reachable().into_iter().collect();
    let live = |t: &&Transition| reachable.contains(&t.source);
    let is_nonalternating = a.transitions.iter().filter(live).all(|t| t.dest.len() <= 1);
    let mut per_letter: BTreeMap<(StateId, Letter), usize> = BTreeMap::new();
    for t in a.transitions.iter().filter(live) {
        *per_letter.entry((t.source, t.letter)).or_default() += 1;
    }
    Stats {
        states: a.states.len(),
        reachable_states: reachable.len(),
        marks: a.marks.len(),
        is_deterministic: is_nonalternating && per_letter.values().all(|&c| c <= 1),
        is_nonalternating,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(source: StateId, letter: u32, marks: &[u32], dest: &[StateId]) -> Transition {
        Transition {
            source,
            letter: Letter(letter),
            marks: marks.iter().map(|&m| MarkId(m)).collect(),
            dest: dest.iter().copied().collect(),
        }
    }

    fn two_states(transitions: Vec<Transition>) -> Slaa {
        Slaa {
            aps: vec!["a".into()],
            states: vec![Formula::ap("s"), Formula::ap("t")],
            marks: vec![MarkOrigin::Shared],
            transitions: transitions.into_iter().collect(),
            initial: 0,
            acceptance: Acc::fin(MarkId(0)),
        }
    }

    #[test]
    fn self_loops_are_fine() {
        let a = two_states(vec![tr(0, 0, &[0], &[0, 1]), tr(1, 1, &[], &[1]), tr(1, 0, &[], &[])]);
        assert_eq!(validate(&a), Ok(()));
    }

    #[test]
    fn two_cycle_is_reported() {
        let a = two_states(vec![tr(0, 0, &[], &[1]), tr(1, 0, &[], &[0])]);
        assert_eq!(validate(&a), Err(Violation::Cycle(vec![0, 1])));
    }

    #[test]
    fn undeclared_mark_and_dangling_state() {
        let a = two_states(vec![tr(0, 0, &[3], &[0])]);
        assert!(matches!(validate(&a), Err(Violation::UndeclaredMark { mark: MarkId(3), .. })));
        let a = two_states(vec![tr(0, 0, &[], &[5])]);
        assert!(matches!(validate(&a), Err(Violation::DanglingState { state: 5, .. })));
        let a = two_states(vec![tr(0, 2, &[], &[])]);
        assert!(matches!(validate(&a), Err(Violation::LetterOutOfRange { .. })));
    }

    #[test]
    fn stats_classify_branching() {
        let a = two_states(vec![tr(0, 0, &[], &[0, 1]), tr(1, 0, &[], &[1])]);
        let s = stats(&a);
        assert_eq!(s.reachable_states, 2);
        assert!(!s.is_nonalternating && !s.is_deterministic);

        let a = two_states(vec![tr(0, 0, &[], &[0]), tr(0, 0, &[0], &[]), tr(1, 1, &[], &[0, 1])]);
        let s = stats(&a);
        assert_eq!(s.reachable_states, 1);
        assert!(s.is_nonalternating && !s.is_deterministic);

        let a = two_states(vec![tr(0, 0, &[], &[0]), tr(0, 1, &[0], &[])]);
        assert!(stats(&a).is_deterministic);
    }
}
