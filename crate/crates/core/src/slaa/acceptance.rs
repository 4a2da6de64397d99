//! Emerson-Lei acceptance formulae: positive boolean combinations of
//! `Fin(m)` and `Inf(m)` terms over acceptance marks.

use std::collections::BTreeSet;
use std::fmt;

use super::MarkId;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Acc {
    True,
    False,
    Fin(MarkId),
    Inf(MarkId),
    And(Vec<Acc>),
    Or(Vec<Acc>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Fin(MarkId),
    Inf(MarkId),
}

/// A subset-minimal set of terms whose truth satisfies the formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MinimalModel {
    pub fin_marks: BTreeSet<MarkId>,
    pub inf_marks: BTreeSet<MarkId>,
}

impl MinimalModel {
    pub fn terms(&self) -> BTreeSet<Term> {
        let fin = self.fin_marks.iter().map(|&m| Term::Fin(m));
        fin.chain(self.inf_marks.iter().map(|&m| Term::Inf(m))).collect()
    }

    fn from_terms(terms: &BTreeSet<Term>) -> Self {
        let mut out = MinimalModel::default();
        for t in terms {
            match *t {
                Term::Fin(m) => out.fin_marks.insert(m),
                Term::Inf(m) => out.inf_marks.insert(m),
            };
        }
        out
    }

    /// Whether a branch recurring exactly on `recurring` satisfies every term.
    pub fn satisfied_by(&self, recurring: &BTreeSet<MarkId>) -> bool {
        self.inf_marks.is_subset(recurring) && self.fin_marks.is_disjoint(recurring)
    }
}

impl Acc {
    pub fn fin(m: MarkId) -> Acc {
        Acc::Fin(m)
    }

    pub fn inf(m: MarkId) -> Acc {
        Acc::Inf(m)
    }

    pub fn and(ops: impl IntoIterator<Item = Acc>) -> Acc {
        Acc::junction(ops, true)
    }

    pub fn or(ops: impl IntoIterator<Item = Acc>) -> Acc {
        Acc::junction(ops, false)
    }

    fn junction(ops: impl IntoIterator<Item = Acc>, conj: bool) -> Acc {
        let mut flat = Vec::new();
        for op in ops {
            match (op, conj) {
                (Acc::True, true) | (Acc::False, false) => {}
                (Acc::False, true) => return Acc::False,
                (Acc::True, false) => return Acc::True,
                (Acc::And(v), true) | (Acc::Or(v), false) => flat.extend(v),
                (op, _) => flat.push(op),
            }
        }
        flat.sort();
        flat.dedup();
        match flat.len() {
            0 if conj => Acc::True,
            0 => Acc::False,
            1 => flat.pop().unwrap(),
            _ if conj => Acc::And(flat),
            _ => Acc::Or(flat),
        }
    }

    /// `Inf m` holds iff `m` recurs, `Fin m` iff it does not.
    pub fn eval(&self, recurring: &BTreeSet<MarkId>) -> bool {
        match self {
            Acc::True => true,
            Acc::False => false,
            Acc::Fin(m) => !recurring.contains(m),
            Acc::Inf(m) => recurring.contains(m),
            Acc::And(v) => v.iter().all(|x| x.eval(recurring)),
            Acc::Or(v) => v.iter().any(|x| x.eval(recurring)),
        }
    }

    /// Evaluates with each term's truth given explicitly.
    pub fn eval_terms(&self, truth: &impl Fn(Term) -> bool) -> bool {
        match self {
            Acc::True => true,
            Acc::False => false,
            Acc::Fin(m) => truth(Term::Fin(*m)),
            Acc::Inf(m) => truth(Term::Inf(*m)),
            Acc::And(v) => v.iter().all(|x| x.eval_terms(truth)),
            Acc::Or(v) => v.iter().any(|x| x.eval_terms(truth)),
        }
    }

    pub fn terms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms(&self, out: &mut BTreeSet<Term>) {
        match self {
            Acc::True | Acc::False => {}
            Acc::Fin(m) => {
                out.insert(Term::Fin(*m));
            }
            Acc::Inf(m) => {
                out.insert(Term::Inf(*m));
            }
            Acc::And(v) | Acc::Or(v) => v.iter().for_each(|x| x.collect_terms(out)),
        }
    }

    pub fn marks(&self) -> BTreeSet<MarkId> {
        self.terms()
            .into_iter()
            .map(|t| match t {
                Term::Fin(m) | Term::Inf(m) => m,
            })
            .collect()
    }

    pub fn has_inf(&self) -> bool {
        self.terms().iter().any(|t| matches!(t, Term::Inf(_)))
    }

    /// Replaces terms by constants where `subst` says so and refolds.
    pub fn substitute(&self, subst: &impl Fn(Term) -> Option<bool>) -> Acc {
        let konst = |b| if b { Acc::True } else { Acc::False };
        match self {
            Acc::True | Acc::False => self.clone(),
            Acc::Fin(m) => subst(Term::Fin(*m)).map_or(self.clone(), konst),
            Acc::Inf(m) => subst(Term::Inf(*m)).map_or(self.clone(), konst),
            Acc::And(v) => Acc::and(v.iter().map(|x| x.substitute(subst))),
            Acc::Or(v) => Acc::or(v.iter().map(|x| x.substitute(subst))),
        }
    }

    /// Renames marks; the map must be defined on every mark of the formula.
    pub fn remap(&self, map: &impl Fn(MarkId) -> MarkId) -> Acc {
        match self {
            Acc::True | Acc::False => self.clone(),
            Acc::Fin(m) => Acc::Fin(map(*m)),
            Acc::Inf(m) => Acc::Inf(map(*m)),
            Acc::And(v) => Acc::and(v.iter().map(|x| x.remap(map))),
            Acc::Or(v) => Acc::or(v.iter().map(|x| x.remap(map))),
        }
    }

    /// The formula with mark numbers erased, e.g. `Fin & (Fin | Inf)`.
    /// Operands are listed atoms first, then subformulae by their shape.
    pub fn shape(&self) -> String {
        match self {
            Acc::And(v) | Acc::Or(v) => {
                let mut parts: Vec<(bool, String)> = v
                    .iter()
                    .map(|x| match x {
                        Acc::And(_) | Acc::Or(_) => (true, format!("({})", x.shape())),
                        _ => (false, x.shape()),
                    })
                    .collect();
                parts.sort();
                let sep = if matches!(self, Acc::And(_)) { " & " } else { " | " };
                parts.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(sep)
            }
            _ => self.render(&|_| String::new()),
        }
    }

    fn render(&self, mark: &impl Fn(MarkId) -> String) -> String {
        let join = |v: &[Acc], sep: &str| {
            v.iter()
                .map(|x| match x {
                    Acc::And(_) | Acc::Or(_) => format!("({})", x.render(mark)),
                    _ => x.render(mark),
                })
                .collect::<Vec<_>>()
                .join(sep)
        };
        match self {
            Acc::True => "t".into(),
            Acc::False => "f".into(),
            Acc::Fin(m) => format!("Fin{}", mark(*m)),
            Acc::Inf(m) => format!("Inf{}", mark(*m)),
            Acc::And(v) => join(v, " & "),
            Acc::Or(v) => join(v, " | "),
        }
    }
}

/// HOA syntax: `Fin(0) & (Fin(1) | Inf(2))`, `t`, `f`.
impl fmt::Display for Acc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|m| format!("({})", m.0)))
    }
}

fn minimize(sets: Vec<BTreeSet<Term>>) -> Vec<BTreeSet<Term>> {
    let mut sets = sets;
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    let mut out: Vec<BTreeSet<Term>> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| m.is_subset(&s)) {
            out.push(s);
        }
    }
    out
}

fn implicants(phi: &Acc) -> Vec<BTreeSet<Term>> {
    match phi {
        Acc::True => vec![BTreeSet::new()],
        Acc::False => vec![],
        Acc::Fin(m) => vec![BTreeSet::from([Term::Fin(*m)])],
        Acc::Inf(m) => vec![BTreeSet::from([Term::Inf(*m)])],
        Acc::Or(v) => minimize(v.iter().flat_map(implicants).collect()),
        Acc::And(v) => {
            let mut acc = vec![BTreeSet::new()];
            for x in v {
                let rhs = implicants(x);
                let prod = acc.iter().flat_map(|l| rhs.iter().map(move |r| l.union(r).copied().collect())).collect();
                acc = minimize(prod);
            }
            acc
        }
    }
}

/// All minimal models, in canonical order. Computed as the subset-minimal
/// implicants of the formula's disjunctive normal form, which for a positive
/// formula are exactly its minimal models.
pub fn minimal_models(phi: &Acc) -> Vec<MinimalModel> {
    let mut models: Vec<MinimalModel> = implicants(phi).iter().map(MinimalModel::from_terms).collect();
    models.sort();
    models
}

pub fn eval_acc(phi: &Acc, recurring: &BTreeSet<MarkId>) -> bool {
    phi.eval(recurring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(i: u32) -> MarkId {
        MarkId(i)
    }

    fn example() -> Acc {
        // Fin1 & (Fin2 | Inf3)
        Acc::and([Acc::fin(m(1)), Acc::or([Acc::fin(m(2)), Acc::inf(m(3))])])
    }

    fn model(fin: &[u32], inf: &[u32]) -> MinimalModel {
        MinimalModel { fin_marks: fin.iter().map(|&i| m(i)).collect(), inf_marks: inf.iter().map(|&i| m(i)).collect() }
    }

    /// Enumerates every term subset and keeps the subset-minimal models.
    fn brute_force_models(phi: &Acc) -> Vec<MinimalModel> {
        let terms: Vec<Term> = phi.terms().into_iter().collect();
        let sat =
            |mask: u32| phi.eval_terms(&|t| terms.iter().position(|&x| x == t).is_some_and(|i| mask >> i & 1 == 1));
        let mut out = Vec::new();
        for mask in 0..1u32 << terms.len() {
            if sat(mask) && (0..terms.len()).all(|i| mask >> i & 1 == 0 || !sat(mask & !(1 << i))) {
                let set = (0..terms.len()).filter(|i| mask >> i & 1 == 1).map(|i| terms[i]).collect();
                out.push(MinimalModel::from_terms(&set));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn worked_example_has_two_models() {
        assert_eq!(minimal_models(&example()), vec![model(&[1], &[3]), model(&[1, 2], &[])]);
        assert_eq!(minimal_models(&example()), brute_force_models(&example()));
    }

    #[test]
    fn constants_and_idempotence() {
        assert_eq!(minimal_models(&Acc::True), vec![MinimalModel::default()]);
        assert!(minimal_models(&Acc::False).is_empty());
        let dup = Acc::Or(vec![Acc::fin(m(0)), Acc::fin(m(0))]);
        assert_eq!(minimal_models(&dup), vec![model(&[0], &[])]);
    }

    #[test]
    fn eval_examples() {
        assert!(!eval_acc(&Acc::fin(m(0)), &BTreeSet::from([m(0)])));
        assert!(eval_acc(&example(), &BTreeSet::from([m(3)])));
        assert!(!eval_acc(&example(), &BTreeSet::from([m(1), m(3)])));
        assert!(eval_acc(&Acc::True, &BTreeSet::from([m(7)])));
    }

    #[test]
    fn folding_and_display() {
        assert_eq!(Acc::and([Acc::True, Acc::fin(m(0))]), Acc::fin(m(0)));
        assert_eq!(Acc::or([Acc::False, Acc::False]), Acc::False);
        assert_eq!(example().to_string(), "Fin(1) & (Fin(2) | Inf(3))");
        assert_eq!(example().shape(), "Fin & (Fin | Inf)");
        let pruned = example().substitute(&|t| (t == Term::Inf(m(3))).then_some(false));
        assert_eq!(pruned.to_string(), "Fin(1) & Fin(2)");
    }
}
