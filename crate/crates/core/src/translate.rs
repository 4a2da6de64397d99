//! LTL to SLAA translations: basic, F-merging and F,G-merging.
//!
//! Transitions are computed per explicit letter. Successor sets are built
//! with symbolic marks ([`MarkOrigin`]) and configurations of formulae; dense
//! ids are assigned once the whole automaton is known.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::ltl::{collect_f_and_u, dnf_decompose, Clause, DnfDecomposition, Formula, Letter, Node};
use crate::simplify::{self, prune_dominated_group};
use crate::slaa::{minimal_models, Acc, MarkId, MarkOrigin, MarkSet, Slaa, Transition};

pub type Marks = BTreeSet<MarkOrigin>;
pub type Config = BTreeSet<Formula>;
/// Pairs `(M, C)` of marks and destination configuration.
pub type SuccessorSet = BTreeSet<(Marks, Config)>;

/// `{(M ∪ M', C ∪ C') | (M,C) ∈ p, (M',C') ∈ q}`
pub fn product(p: &SuccessorSet, q: &SuccessorSet) -> SuccessorSet {
    let mut out = SuccessorSet::new();
    for (m1, c1) in p {
        for (m2, c2) in q {
            out.insert((m1.union(m2).cloned().collect(), c1.union(c2).cloned().collect()));
        }
    }
    out
}

pub fn marks_erase(p: &SuccessorSet) -> SuccessorSet {
    p.iter().map(|(_, c)| (Marks::new(), c.clone())).collect()
}

fn single(marks: Marks, config: Config) -> SuccessorSet {
    SuccessorSet::from([(marks, config)])
}

fn unit() -> SuccessorSet {
    single(Marks::new(), Config::new())
}

/// Entries of `Δ(ψ_K)` whose configuration contains all of `K`, with `K` removed.
pub fn delta_l(k: &Clause, delta_k: &SuccessorSet) -> SuccessorSet {
    delta_k
        .iter()
        .filter(|(_, c)| k.is_subset(c))
        .map(|(m, c)| (m.clone(), c.difference(k).cloned().collect()))
        .collect()
}

/// The remaining entries of `Δ(ψ_K)`, unchanged.
pub fn delta_nl(k: &Clause, delta_k: &SuccessorSet) -> SuccessorSet {
    delta_k.iter().filter(|(_, c)| !k.is_subset(c)).cloned().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Mode {
    Basic,
    F,
    #[default]
    Fg,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Basic, Mode::F, Mode::Fg];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Basic => "basic",
            Mode::F => "f",
            Mode::Fg => "fg",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(Mode::Basic),
            "f" => Ok(Mode::F),
            "fg" => Ok(Mode::Fg),
            _ => Err(format!("unknown mode {s:?} (expected basic, f or fg)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub mode: Mode,
    /// Share clause marks across eventually subformulae (F mode only).
    pub reuse_marks: bool,
    /// Dominance pruning during construction plus the final simplification.
    pub simplify: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { mode: Mode::Fg, reuse_marks: false, simplify: true }
    }
}

impl Options {
    pub fn new(mode: Mode) -> Self {
        Options { mode, ..Options::default() }
    }
}

/// Successor computation for the subformulae of one root formula.
pub struct Translator {
    mode: Mode,
    reuse_marks: bool,
    aps: Vec<String>,
    ap_index: HashMap<String, usize>,
    eventually: BTreeSet<Formula>,
    until: BTreeSet<Formula>,
    dnf: HashMap<Formula, DnfDecomposition>,
    /// 1-based reuse index of each clause, per eventually formula.
    clause_index: HashMap<(Formula, Clause), usize>,
    /// Eventually formulae occurring inside the argument of another one;
    /// their clause marks are never shared.
    nested: BTreeSet<Formula>,
    reuse_count: usize,
    memo: HashMap<(Formula, Letter), SuccessorSet>,
}

impl Translator {
    pub fn new(root: &Formula, mode: Mode, reuse_marks: bool) -> Self {
        let aps = root.atomic_propositions();
        let ap_index = aps.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let (eventually, until) = collect_f_and_u(root);
        let mut dnf = HashMap::new();
        let mut clause_index = HashMap::new();
        let mut nested = BTreeSet::new();
        for f in &eventually {
            let Node::Eventually(psi) = f.node() else { unreachable!() };
            nested.extend(psi.subformulae().into_iter().filter(|g| matches!(g.node(), Node::Eventually(_))));
            dnf.insert(f.clone(), dnf_decompose(psi));
        }
        let mut reuse_count = 0;
        for f in eventually.difference(&nested) {
            let d: &DnfDecomposition = &dnf[f];
            for (i, k) in d.iter().enumerate() {
                clause_index.insert((f.clone(), k.clone()), i + 1);
            }
            reuse_count = reuse_count.max(d.len());
        }
        Translator {
            mode,
            reuse_marks: reuse_marks && mode == Mode::F,
            aps,
            ap_index,
            eventually,
            until,
            dnf,
            clause_index,
            nested,
            reuse_count,
            memo: HashMap::new(),
        }
    }

    pub fn aps(&self) -> &[String] {
        &self.aps
    }

    fn until_mark(&self, u: &Formula) -> MarkOrigin {
        match self.mode {
            Mode::Fg => MarkOrigin::UntilLoop(u.clone()),
            _ => MarkOrigin::Shared,
        }
    }

    fn eventually_mark(&self, f: &Formula) -> MarkOrigin {
        match self.mode {
            Mode::Fg => MarkOrigin::EventuallyLoop(f.clone()),
            _ => MarkOrigin::Shared,
        }
    }

    fn holds(&self, ap: &str, letter: Letter) -> bool {
        self.ap_index.get(ap).is_some_and(|&i| letter.contains(i))
    }

    /// `Δ(state, letter)` under the translator's mode.
    pub fn delta(&mut self, state: &Formula, letter: Letter) -> SuccessorSet {
        let key = (state.clone(), letter);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = self.compute(state, letter);
        self.memo.insert(key, out.clone());
        out
    }

    fn compute(&mut self, state: &Formula, letter: Letter) -> SuccessorSet {
        match state.node() {
            Node::True => unit(),
            Node::False => SuccessorSet::new(),
            Node::Ap(a) => {
                if self.holds(a, letter) {
                    unit()
                } else {
                    SuccessorSet::new()
                }
            }
            Node::NegAp(a) => {
                if self.holds(a, letter) {
                    SuccessorSet::new()
                } else {
                    unit()
                }
            }
            Node::And(ops) => {
                let mut acc = unit();
                for op in ops {
                    acc = product(&acc, &self.delta(op, letter));
                }
                marks_erase(&acc)
            }
            Node::Or(ops) => {
                let mut acc = SuccessorSet::new();
                for op in ops {
                    acc.extend(self.delta(op, letter));
                }
                marks_erase(&acc)
            }
            Node::Next(psi) => single(Marks::new(), Config::from([psi.clone()])),
            Node::Until(l, r) => {
                let mut out = marks_erase(&self.delta(r, letter));
                let stay = single(Marks::from([self.until_mark(state)]), Config::from([state.clone()]));
                out.extend(product(&stay, &marks_erase(&self.delta(l, letter))));
                out
            }
            Node::Release(l, r) => {
                let dr = self.delta(r, letter);
                let mut out = marks_erase(&product(&self.delta(l, letter), &dr));
                out.extend(marks_erase(&product(&single(Marks::new(), Config::from([state.clone()])), &dr)));
                out
            }
            Node::Eventually(psi) => match self.mode {
                Mode::Basic => {
                    let mut out = marks_erase(&self.delta(psi, letter));
                    out.insert((Marks::from([MarkOrigin::Shared]), Config::from([state.clone()])));
                    out
                }
                Mode::F | Mode::Fg => self.delta_merged_f(state, letter),
            },
            Node::Always(psi) => {
                let conjuncts = psi.conjuncts();
                if self.mode == Mode::Fg && conjuncts.iter().all(|c| c.is_temporal() || c.is_state_formula()) {
                    let mut acc = single(Marks::new(), Config::from([state.clone()]));
                    for c in &conjuncts {
                        acc = product(&acc, &self.delta_prime(c, letter));
                    }
                    acc
                } else {
                    let stay = single(Marks::new(), Config::from([state.clone()]));
                    marks_erase(&product(&stay, &self.delta(psi, letter)))
                }
            }
        }
    }

    /// `Δ(ψ_K)`: the mark-preserving product of the clause members' successors.
    pub fn delta_clause(&mut self, k: &Clause, letter: Letter) -> SuccessorSet {
        let mut acc = unit();
        for member in k {
            acc = product(&acc, &self.delta(member, letter));
        }
        acc
    }

    fn shares_marks(&self, f: &Formula) -> bool {
        self.reuse_marks && !self.nested.contains(f)
    }

    fn clause_marks(&self, f: &Formula, k: &Clause) -> Marks {
        if self.shares_marks(f) {
            let own = self.clause_index[&(f.clone(), k.clone())];
            (1..=self.reuse_count).filter(|&i| i != own).map(MarkOrigin::ReusedClause).collect()
        } else {
            self.dnf[f]
                .iter()
                .filter(|other| *other != k)
                .map(|other| MarkOrigin::Clause(f.clone(), other.clone()))
                .collect()
        }
    }

    fn delta_merged_f(&mut self, f: &Formula, letter: Letter) -> SuccessorSet {
        let here = Config::from([f.clone()]);
        let mut out = single(Marks::from([self.eventually_mark(f)]), here.clone());
        let clauses: Vec<Clause> = self.dnf[f].iter().cloned().collect();
        for k in &clauses {
            let dk = self.delta_clause(k, letter);
            out.extend(marks_erase(&delta_nl(k, &dk)));
            let stay = single(self.clause_marks(f, k), here.clone());
            out.extend(product(&stay, &delta_l(k, &dk)));
        }
        out
    }

    /// Successors of a conjunct merged into an always state: the conjunct
    /// itself is dropped from destinations, and for until/eventually
    /// conjuncts every non-looping entry is replaced by the escape mark.
    fn delta_prime(&mut self, psi: &Formula, letter: Letter) -> SuccessorSet {
        let d = self.delta(psi, letter);
        let watched = self.until.contains(psi) || self.eventually.contains(psi);
        d.into_iter()
            .map(
                |(m, mut c)| {
                    if c.remove(psi) || !watched {
                        (m, c)
                    } else {
                        (Marks::from([MarkOrigin::Escape(psi.clone())]), c)
                    }
                },
            )
            .collect()
    }

    /// Declared marks in canonical order.
    pub fn mark_universe(&self) -> Vec<MarkOrigin> {
        let mut out = BTreeSet::new();
        match self.mode {
            Mode::Basic => {
                out.insert(MarkOrigin::Shared);
            }
            Mode::F => {
                out.insert(MarkOrigin::Shared);
                if self.reuse_marks {
                    out.extend((1..=self.reuse_count).map(MarkOrigin::ReusedClause));
                }
                for (f, d) in self.dnf.iter().filter(|(f, _)| !self.shares_marks(f)) {
                    out.extend(d.iter().map(|k| MarkOrigin::Clause(f.clone(), k.clone())));
                }
            }
            Mode::Fg => {
                for u in &self.until {
                    out.insert(MarkOrigin::UntilLoop(u.clone()));
                    out.insert(MarkOrigin::Escape(u.clone()));
                }
                for (f, d) in &self.dnf {
                    out.insert(MarkOrigin::EventuallyLoop(f.clone()));
                    out.insert(MarkOrigin::Escape(f.clone()));
                    out.extend(d.iter().map(|k| MarkOrigin::Clause(f.clone(), k.clone())));
                }
            }
        }
        out.into_iter().collect()
    }

    /// The acceptance formula over the ids given by `id`.
    pub fn acceptance(&self, id: &impl Fn(&MarkOrigin) -> MarkId) -> Acc {
        let fin = |o: MarkOrigin| Acc::fin(id(&o));
        let inf = |o: MarkOrigin| Acc::inf(id(&o));
        let clause_fins =
            |f: &Formula| Acc::or(self.dnf[f].iter().map(|k| fin(MarkOrigin::Clause(f.clone(), k.clone()))));
        match self.mode {
            Mode::Basic => fin(MarkOrigin::Shared),
            Mode::F => {
                let shared = if self.reuse_marks && self.reuse_count > 0 {
                    Acc::or((1..=self.reuse_count).map(|i| fin(MarkOrigin::ReusedClause(i))))
                } else {
                    Acc::True
                };
                let own = self.eventually.iter().filter(|f| !self.shares_marks(f)).map(clause_fins);
                Acc::and([fin(MarkOrigin::Shared), shared].into_iter().chain(own))
            }
            Mode::Fg => {
                let us = self
                    .until
                    .iter()
                    .map(|u| Acc::or([fin(MarkOrigin::UntilLoop(u.clone())), inf(MarkOrigin::Escape(u.clone()))]));
                let fs = self.eventually.iter().map(|f| {
                    Acc::or([
                        Acc::and([fin(MarkOrigin::EventuallyLoop(f.clone())), clause_fins(f)]),
                        inf(MarkOrigin::Escape(f.clone())),
                    ])
                });
                Acc::and(us.chain(fs))
            }
        }
    }
}

/// Translates a PNF formula into an SLAA.
pub fn translate(root: &Formula, opts: &Options) -> Slaa {
    let mut tr = Translator::new(root, opts.mode, opts.reuse_marks);
    let marks = tr.mark_universe();
    let ids: BTreeMap<MarkOrigin, MarkId> =
        marks.iter().enumerate().map(|(i, o)| (o.clone(), MarkId(i as u32))).collect();
    let acceptance = tr.acceptance(&|o| ids[o]);
    let models = minimal_models(&acceptance);

    let mut states: Vec<Formula> = root.subformulae().into_iter().collect();
    let mut index: HashMap<Formula, usize> = states.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let mut transitions = BTreeSet::new();
    let letters: Vec<Letter> = Letter::all(tr.aps().len()).collect();
    let mut next = 0;
    while next < states.len() {
        let source = next;
        let state = states[source].clone();
        next += 1;
        for &letter in &letters {
            let mut group = Vec::new();
            for (m, c) in tr.delta(&state, letter) {
                let dest = c
                    .into_iter()
                    .map(|f| {
                        *index.entry(f.clone()).or_insert_with(|| {
                            states.push(f);
                            states.len() - 1
                        })
                    })
                    .collect();
                let marks: MarkSet = m.iter().map(|o| ids[o]).collect();
                group.push(Transition { source, letter, marks, dest });
            }
            if opts.simplify {
                group = prune_dominated_group(group, &models);
            }
            transitions.extend(group);
        }
    }
    let raw = Slaa { aps: tr.aps().to_vec(), states, marks, transitions, initial: index[root], acceptance };
    let reachable = simplify::remove_unreachable(&raw);
    if opts.simplify {
        simplify::simplify(&reachable)
    } else {
        reachable
    }
}

pub fn translate_basic(root: &Formula) -> Slaa {
    translate(root, &Options::new(Mode::Basic))
}

pub fn translate_f(root: &Formula, reuse_marks: bool) -> Slaa {
    translate(root, &Options { mode: Mode::F, reuse_marks, simplify: true })
}

pub fn translate_fg(root: &Formula) -> Slaa {
    translate(root, &Options::new(Mode::Fg))
}

/// `Δ(state, letter)` of the basic translation, with letters over `aps`.
pub fn delta_basic(root: &Formula, state: &Formula, letter: Letter) -> SuccessorSet {
    Translator::new(root, Mode::Basic, false).delta(state, letter)
}
