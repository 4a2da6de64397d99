//! SLAA to LTL. Every state gets a formula describing the words its
//! sub-automaton accepts, built bottom-up along the self-loop order:
//! `φ(s) = φ1(s) ∨ (φ2(s) ∧ φ3(s))` where `φ1` covers runs that eventually
//! leave `s`, `φ2` runs whose branch stays in `s` forever and `φ3` the
//! acceptance of that branch.

use crate::ltl::{Formula, Letter, Node};
use crate::oracle::bottom_up_order;
use crate::slaa::{minimal_models, MinimalModel, Slaa, StateId, Transition};

/// The minterm of `letter` over the whole proposition list.
pub fn letter_formula(letter: Letter, aps: &[String]) -> Formula {
    Formula::and(aps.iter().enumerate().map(|(i, a)| {
        if letter.contains(i) {
            Formula::ap(a.clone())
        } else {
            Formula::neg_ap(a.clone())
        }
    }))
}

fn next(f: Formula) -> Formula {
    match f.node() {
        Node::True | Node::False => f,
        _ => Formula::next(f),
    }
}

fn until(l: Formula, r: Formula) -> Formula {
    match (l.node(), r.node()) {
        (_, Node::True | Node::False) | (Node::False, _) => r,
        (Node::True, _) => eventually(r),
        _ => Formula::until(l, r),
    }
}

fn always(f: Formula) -> Formula {
    match f.node() {
        Node::True | Node::False => f,
        _ => Formula::always(f),
    }
}

fn eventually(f: Formula) -> Formula {
    match f.node() {
        Node::True | Node::False => f,
        _ => Formula::eventually(f),
    }
}

struct Builder<'a> {
    a: &'a Slaa,
    letters: Vec<Formula>,
    models: Vec<MinimalModel>,
    phi: Vec<Option<Formula>>,
}

impl Builder<'_> {
    fn conf(&self, states: impl Iterator<Item = StateId>) -> Formula {
        Formula::and(states.map(|d| self.phi[d].clone().expect("successors are built first")))
    }

    /// `φ_α ∧ X φ(C ∖ {s})`
    fn step(&self, t: &Transition) -> Formula {
        let rest = self.conf(t.dest.iter().copied().filter(|&d| d != t.source));
        Formula::and2(self.letters[t.letter.0 as usize].clone(), next(rest))
    }

    fn any_step<'t>(&self, ts: impl Iterator<Item = &'t Transition>) -> Formula {
        Formula::or(ts.map(|t| self.step(t)))
    }

    fn state(&self, s: StateId) -> Formula {
        let loops: Vec<&Transition> = self.a.transitions_from(s).filter(|t| t.is_loop()).collect();
        let stay = self.any_step(loops.iter().copied());
        let leave = self.any_step(self.a.transitions_from(s).filter(|t| !t.is_loop()));
        let phi1 = until(stay.clone(), leave);
        let phi2 = always(stay);
        let phi3 = Formula::or(self.models.iter().map(|o| {
            let good: Vec<&Transition> = loops.iter().copied().filter(|t| t.marks.is_disjoint(&o.fin_marks)).collect();
            let settle = eventually(always(self.any_step(good.iter().copied())));
            let recur = o
                .inf_marks
                .iter()
                .map(|m| always(eventually(self.any_step(good.iter().copied().filter(|t| t.marks.contains(m))))));
            Formula::and(std::iter::once(settle).chain(recur))
        }));
        Formula::or2(phi1, Formula::and2(phi2, phi3))
    }
}

/// An LTL formula over the automaton's propositions with the same language.
pub fn slaa_to_ltl(a: &Slaa) -> Formula {
    let mut b = Builder {
        a,
        letters: Letter::all(a.aps.len()).map(|l| letter_formula(l, &a.aps)).collect(),
        models: minimal_models(&a.acceptance),
        phi: vec![None; a.states.len()],
    };
    for s in bottom_up_order(a) {
        b.phi[s] = Some(b.state(s));
    }
    b.phi[a.initial].take().unwrap()
}
