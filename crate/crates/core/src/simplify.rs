//! Acceptance-aware transition dominance, unreachable-state removal and
//! pruning of marks that lie on no self-loop.

use std::collections::{BTreeMap, BTreeSet};

use crate::slaa::{minimal_models, MarkId, MinimalModel, Slaa, Term, Transition};

/// Whether `t1` dominates `t2` (same source and letter assumed).
pub fn dominates(t1: &Transition, t2: &Transition, models: &[MinimalModel]) -> bool {
    t1.dest.is_subset(&t2.dest)
        && models.iter().all(|o| {
            let fin_ok = !o.fin_marks.is_disjoint(&t2.marks) || o.fin_marks.is_disjoint(&t1.marks);
            let inf_ok = !o.inf_marks.is_disjoint(&t1.marks) || o.inf_marks.is_disjoint(&t2.marks);
            fin_ok && inf_ok
        })
}

fn tie_key(t: &Transition) -> (&BTreeSet<usize>, &BTreeSet<MarkId>) {
    (&t.dest, &t.marks)
}

/// Drops every transition of one `(source, letter)` group that another
/// transition dominates; of two equivalent ones the canonically smaller stays.
pub fn prune_dominated_group(group: Vec<Transition>, models: &[MinimalModel]) -> Vec<Transition> {
    let keep: Vec<bool> = group
        .iter()
        .enumerate()
        .map(|(j, t2)| {
            !group.iter().enumerate().any(|(i, t1)| {
                i != j
                    && t1 != t2
                    && dominates(t1, t2, models)
                    && (!dominates(t2, t1, models) || tie_key(t1) < tie_key(t2))
            })
        })
        .collect();
    let mut out: Vec<Transition> = group.into_iter().zip(keep).filter_map(|(t, k)| k.then_some(t)).collect();
    out.sort();
    out.dedup();
    out
}

pub fn prune_dominated(a: &Slaa) -> Slaa {
    let models = minimal_models(&a.acceptance);
    let mut transitions = BTreeSet::new();
    for (_, group) in a.by_source_letter() {
        transitions.extend(prune_dominated_group(group.into_iter().cloned().collect(), &models));
    }
    Slaa { transitions, ..a.clone() }
}

/// Keeps the states reachable from the initial state, renumbered by distance
/// from the initial state and then by label, so the initial state becomes 0.
pub fn remove_unreachable(a: &Slaa) -> Slaa {
    let mut depth: BTreeMap<usize, usize> = BTreeMap::from([(a.initial, 0)]);
    for s in a.reachable() {
        let d = depth[&s];
        for t in a.transitions_from(s) {
            for &q in &t.dest {
                depth.entry(q).or_insert(d + 1);
            }
        }
    }
    let mut order: Vec<usize> = depth.keys().copied().collect();
    order.sort_by(|&x, &y| (depth[&x], &a.states[x], x).cmp(&(depth[&y], &a.states[y], y)));
    let renumber: BTreeMap<usize, usize> = order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let transitions = a
        .transitions
        .iter()
        .filter_map(|t| {
            let source = *renumber.get(&t.source)?;
            let dest = t.dest.iter().map(|d| renumber[d]).collect();
            Some(Transition { source, letter: t.letter, marks: t.marks.clone(), dest })
        })
        .collect();
    Slaa {
        aps: a.aps.clone(),
        states: order.iter().map(|&s| a.states[s].clone()).collect(),
        marks: a.marks.clone(),
        transitions,
        initial: 0,
        acceptance: a.acceptance.clone(),
    }
}

/// Removes marks that occur on no self-loop: they are erased from all
/// transitions, `Fin` of them becomes true and `Inf` false, and the
/// remaining marks are renumbered densely in their previous order.
pub fn prune_unused_marks(a: &Slaa) -> Slaa {
    let on_loops: BTreeSet<MarkId> =
        a.transitions.iter().filter(|t| t.is_loop()).flat_map(|t| t.marks.iter().copied()).collect();
    let acceptance = a.acceptance.substitute(&|t| match t {
        Term::Fin(m) if !on_loops.contains(&m) => Some(true),
        Term::Inf(m) if !on_loops.contains(&m) => Some(false),
        _ => None,
    });
    // marks that survive in the transitions but no longer matter for Φ are
    // dropped as well
    let live: BTreeSet<MarkId> = acceptance.marks();
    let kept: Vec<MarkId> = (0..a.marks.len() as u32).map(MarkId).filter(|m| live.contains(m)).collect();
    let renumber: BTreeMap<MarkId, MarkId> =
        kept.iter().enumerate().map(|(new, &old)| (old, MarkId(new as u32))).collect();
    let transitions = a
        .transitions
        .iter()
        .map(|t| Transition { marks: t.marks.iter().filter_map(|m| renumber.get(m).copied()).collect(), ..t.clone() })
        .collect();
    Slaa {
        aps: a.aps.clone(),
        states: a.states.clone(),
        marks: kept.iter().map(|m| a.marks[m.0 as usize].clone()).collect(),
        transitions,
        initial: a.initial,
        acceptance: acceptance.remap(&|m| renumber[&m]),
    }
}

/// Dominance pruning and unreachable-state removal until nothing changes,
/// then mark pruning. Dominance is judged against the acceptance formula as
/// given, before any mark is folded away.
pub fn simplify(a: &Slaa) -> Slaa {
    let mut cur = a.clone();
    loop {
        let next = remove_unreachable(&prune_dominated(&cur));
        if next == cur {
            return prune_unused_marks(&cur);
        }
        cur = next;
    }
}
