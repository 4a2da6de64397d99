//! LTL formulae in positive normal form.
//!
//! A [`Formula`] is an immutable, reference-counted syntax tree. Conjunctions
//! and disjunctions are n-ary, flattened, sorted and deduplicated, so two
//! formulae that differ only in the association or order of `&`/`|` operands
//! are the same value. Formulae double as automaton states, which is why
//! structural equality and the canonical total order matter.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// One node of a PNF formula. The variant order is the node-kind rank used by
/// the canonical ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    True,
    False,
    Ap(String),
    NegAp(String),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Next(Formula),
    Until(Formula, Formula),
    Release(Formula, Formula),
    Eventually(Formula),
    Always(Formula),
}

#[derive(Debug, Clone)]
pub struct Formula(Arc<Node>);

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Formula {}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Formula {
    fn new(node: Node) -> Self {
        Formula(Arc::new(node))
    }

    pub fn tt() -> Self {
        Self::new(Node::True)
    }

    pub fn ff() -> Self {
        Self::new(Node::False)
    }

    pub fn ap(name: impl Into<String>) -> Self {
        Self::new(Node::Ap(name.into()))
    }

    pub fn neg_ap(name: impl Into<String>) -> Self {
        Self::new(Node::NegAp(name.into()))
    }

    pub fn next(sub: Formula) -> Self {
        Self::new(Node::Next(sub))
    }

    pub fn until(lhs: Formula, rhs: Formula) -> Self {
        Self::new(Node::Until(lhs, rhs))
    }

    pub fn release(lhs: Formula, rhs: Formula) -> Self {
        Self::new(Node::Release(lhs, rhs))
    }

    pub fn eventually(sub: Formula) -> Self {
        Self::new(Node::Eventually(sub))
    }

    pub fn always(sub: Formula) -> Self {
        Self::new(Node::Always(sub))
    }

    /// Conjunction with flattening, idempotence and boolean-constant folding.
    pub fn and(operands: impl IntoIterator<Item = Formula>) -> Self {
        Self::junction(operands, true)
    }

    /// Disjunction with flattening, idempotence and boolean-constant folding.
    pub fn or(operands: impl IntoIterator<Item = Formula>) -> Self {
        Self::junction(operands, false)
    }

    pub fn and2(lhs: Formula, rhs: Formula) -> Self {
        Self::and([lhs, rhs])
    }

    pub fn or2(lhs: Formula, rhs: Formula) -> Self {
        Self::or([lhs, rhs])
    }

    fn junction(operands: impl IntoIterator<Item = Formula>, conj: bool) -> Self {
        let mut flat = Vec::new();
        for op in operands {
            match (op.node(), conj) {
                (Node::True, true) | (Node::False, false) => {}
                (Node::False, true) => return Self::ff(),
                (Node::True, false) => return Self::tt(),
                (Node::And(ops), true) | (Node::Or(ops), false) => flat.extend(ops.iter().cloned()),
                _ => flat.push(op),
            }
        }
        flat.sort();
        flat.dedup();
        match flat.len() {
            0 if conj => Self::tt(),
            0 => Self::ff(),
            1 => flat.pop().unwrap(),
            _ if conj => Self::new(Node::And(flat)),
            _ => Self::new(Node::Or(flat)),
        }
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Address of the shared node; stable while any clone is alive.
    pub fn ptr(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    /// Direct children in left-to-right order.
    pub fn children(&self) -> Vec<&Formula> {
        match self.node() {
            Node::True | Node::False | Node::Ap(_) | Node::NegAp(_) => vec![],
            Node::And(ops) | Node::Or(ops) => ops.iter().collect(),
            Node::Next(f) | Node::Eventually(f) | Node::Always(f) => vec![f],
            Node::Until(l, r) | Node::Release(l, r) => vec![l, r],
        }
    }

    /// True iff the root is neither a conjunction nor a disjunction.
    pub fn is_temporal(&self) -> bool {
        !matches!(self.node(), Node::And(_) | Node::Or(_))
    }

    /// True iff the root is one of X, U, R, F, G.
    pub fn is_temporal_operator(&self) -> bool {
        matches!(
            self.node(),
            Node::Next(_) | Node::Until(..) | Node::Release(..) | Node::Eventually(_) | Node::Always(_)
        )
    }

    /// True iff no X/U/R/F/G node occurs anywhere.
    pub fn is_state_formula(&self) -> bool {
        !self.is_temporal_operator() && self.children().into_iter().all(Formula::is_state_formula)
    }

    pub fn contains_temporal_operator(&self) -> bool {
        !self.is_state_formula()
    }

    /// Number of nodes of the equivalent binary tree: an n-ary junction counts
    /// as n-1 binary nodes.
    pub fn tree_size(&self) -> usize {
        let own = match self.node() {
            Node::And(ops) | Node::Or(ops) => ops.len() - 1,
            _ => 1,
        };
        own + self.children().into_iter().map(Formula::tree_size).sum::<usize>()
    }

    /// All syntactically distinct subformulae, including `self`.
    pub fn subformulae(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if out.insert(f.clone()) {
                stack.extend(f.children().into_iter().cloned());
            }
        }
        out
    }

    /// Atomic propositions occurring in the formula, sorted.
    pub fn atomic_propositions(&self) -> Vec<String> {
        let mut aps = BTreeSet::new();
        for f in self.subformulae() {
            if let Node::Ap(a) | Node::NegAp(a) = f.node() {
                aps.insert(a.clone());
            }
        }
        aps.into_iter().collect()
    }

    /// Operands of a conjunction, or the formula itself.
    pub fn conjuncts(&self) -> Vec<Formula> {
        match self.node() {
            Node::And(ops) => ops.clone(),
            _ => vec![self.clone()],
        }
    }
}

fn fmt_binary(f: &mut fmt::Formatter<'_>, lhs: &Formula, op: &str, rhs: &Formula) -> fmt::Result {
    write!(f, "({lhs} {op} {rhs})")
}

/// Prints the surface syntax accepted by [`crate::ltl::parse`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::True => write!(f, "true"),
            Node::False => write!(f, "false"),
            Node::Ap(a) => write!(f, "{a}"),
            Node::NegAp(a) => write!(f, "!{a}"),
            Node::And(ops) | Node::Or(ops) => {
                let sep = if matches!(self.node(), Node::And(_)) { " & " } else { " | " };
                write!(f, "(")?;
                for (i, op) in ops.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    write!(f, "{op}")?;
                }
                write!(f, ")")
            }
            Node::Next(g) => write!(f, "X {g}"),
            Node::Eventually(g) => write!(f, "F {g}"),
            Node::Always(g) => write!(f, "G {g}"),
            Node::Until(l, r) => fmt_binary(f, l, "U", r),
            Node::Release(l, r) => fmt_binary(f, l, "R", r),
        }
    }
}
