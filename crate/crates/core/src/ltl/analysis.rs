use std::collections::BTreeSet;

use super::formula::{Formula, Node};

/// A conjunction of temporal formulae.
pub type Clause = BTreeSet<Formula>;

/// Disjunctive decomposition of a formula into clauses of temporal formulae.
/// Both the clauses and the clause set are ordered canonically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DnfDecomposition {
    pub clauses: BTreeSet<Clause>,
}

impl DnfDecomposition {
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    /// `⋁_K ⋀_{ψ∈K} ψ` as a formula.
    pub fn to_formula(&self) -> Formula {
        Formula::or(self.clauses.iter().map(|k| Formula::and(k.iter().cloned())))
    }
}

/// Temporal formulae become singleton clauses, disjunctions take the union of
/// the operands' clause sets and conjunctions the pairwise clause unions.
pub fn dnf_decompose(f: &Formula) -> DnfDecomposition {
    let clauses = match f.node() {
        Node::Or(ops) => ops.iter().flat_map(|op| dnf_decompose(op).clauses).collect(),
        Node::And(ops) => {
            let mut acc: BTreeSet<Clause> = BTreeSet::from([Clause::new()]);
            for op in ops {
                let rhs = dnf_decompose(op).clauses;
                acc = acc.iter().flat_map(|l| rhs.iter().map(move |r| l.union(r).cloned().collect())).collect();
            }
            acc
        }
        _ => BTreeSet::from([Clause::from([f.clone()])]),
    };
    DnfDecomposition { clauses }
}

/// Subformulae of the form `F ψ` and of the form `ψ₁ U ψ₂`.
pub fn collect_f_and_u(f: &Formula) -> (BTreeSet<Formula>, BTreeSet<Formula>) {
    let mut fs = BTreeSet::new();
    let mut us = BTreeSet::new();
    for g in f.subformulae() {
        match g.node() {
            Node::Eventually(_) => {
                fs.insert(g);
            }
            Node::Until(..) => {
                us.insert(g);
            }
            _ => {}
        }
    }
    (fs, us)
}

/// True iff some subformula `F ψ` has a temporal operator inside `ψ`, or some
/// subformula `G ψ` has a conjunct of `ψ` whose root is a temporal operator.
/// Bare atoms do not count as temporal here.
pub fn is_mergeable(f: &Formula) -> bool {
    f.subformulae().iter().any(|g| match g.node() {
        Node::Eventually(psi) => psi.contains_temporal_operator(),
        Node::Always(psi) => psi.conjuncts().iter().any(Formula::is_temporal_operator),
        _ => false,
    })
}
