//! Seeded random formula generation in the style of `randltl`: every node
//! draws an operator proportionally to its priority, and binary operators
//! split the remaining tree-size budget uniformly between their children.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::formula::Formula;
use super::parse::Expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Ap,
    True,
    False,
    Not,
    Next,
    Eventually,
    Always,
    And,
    Or,
    Implies,
    Equiv,
    Until,
    Release,
    WeakUntil,
    StrongRelease,
}

impl Op {
    pub const ALL: [Op; 15] = [
        Op::Ap,
        Op::True,
        Op::False,
        Op::Not,
        Op::Next,
        Op::Eventually,
        Op::Always,
        Op::And,
        Op::Or,
        Op::Implies,
        Op::Equiv,
        Op::Until,
        Op::Release,
        Op::WeakUntil,
        Op::StrongRelease,
    ];

    fn arity(self) -> usize {
        match self {
            Op::Ap | Op::True | Op::False => 0,
            Op::Not | Op::Next | Op::Eventually | Op::Always => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("all operator priorities are zero")]
    AllZero,
    #[error("no leaf (ap/true/false) has a nonzero priority")]
    NoLeaves,
    #[error("ap_count and tree_size must be at least 1")]
    EmptyBudget,
}

/// Operator weights. Atomic propositions share the `Ap` weight and are then
/// chosen uniformly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Priorities(pub BTreeMap<Op, u32>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Rand1,
    Rand2,
    Rand4,
    RandFg,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Rand1, Preset::Rand2, Preset::Rand4, Preset::RandFg];

    pub fn priorities(self) -> Priorities {
        let mut p = Priorities::uniform();
        match self {
            Preset::Rand1 => {}
            Preset::Rand2 => p.set_fg(2),
            Preset::Rand4 => p.set_fg(4),
            Preset::RandFg => {
                p.set_fg(2);
                for op in [Op::Next, Op::Until, Op::Release, Op::WeakUntil, Op::StrongRelease] {
                    p.0.insert(op, 0);
                }
            }
        }
        p
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rand1" => Ok(Preset::Rand1),
            "rand2" => Ok(Preset::Rand2),
            "rand4" => Ok(Preset::Rand4),
            "randfg" => Ok(Preset::RandFg),
            _ => Err(format!("unknown preset {s:?} (expected rand1, rand2, rand4 or randfg)")),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Rand1 => "rand1",
            Preset::Rand2 => "rand2",
            Preset::Rand4 => "rand4",
            Preset::RandFg => "randfg",
        })
    }
}

impl Priorities {
    /// Every operator at priority 1, except atomic propositions at 3.
    pub fn uniform() -> Self {
        let mut m: BTreeMap<Op, u32> = Op::ALL.iter().map(|&op| (op, 1)).collect();
        m.insert(Op::Ap, 3);
        Priorities(m)
    }

    fn set_fg(&mut self, w: u32) {
        self.0.insert(Op::Eventually, w);
        self.0.insert(Op::Always, w);
    }

    fn weight(&self, op: Op) -> u32 {
        self.0.get(&op).copied().unwrap_or(0)
    }

    fn validate(&self) -> Result<(), GenError> {
        if Op::ALL.iter().all(|&op| self.weight(op) == 0) {
            return Err(GenError::AllZero);
        }
        if [Op::Ap, Op::True, Op::False].iter().all(|&op| self.weight(op) == 0) {
            return Err(GenError::NoLeaves);
        }
        Ok(())
    }
}

/// A stream of random formulae drawn from one seeded generator.
pub struct FormulaGenerator {
    rng: ChaCha8Rng,
    aps: Vec<String>,
    tree_size: usize,
    priorities: Priorities,
}

impl FormulaGenerator {
    pub fn new(seed: u64, ap_count: usize, tree_size: usize, priorities: Priorities) -> Result<Self, GenError> {
        if ap_count == 0 || tree_size == 0 {
            return Err(GenError::EmptyBudget);
        }
        priorities.validate()?;
        Ok(FormulaGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            aps: (0..ap_count).map(|i| format!("p{i}")).collect(),
            tree_size,
            priorities,
        })
    }

    fn pick(&mut self, allowed: impl Fn(usize) -> bool) -> Option<Op> {
        let candidates: Vec<(Op, u32)> = Op::ALL
            .iter()
            .filter(|op| allowed(op.arity()))
            .map(|&op| (op, self.priorities.weight(op)))
            .filter(|(_, w)| *w > 0)
            .collect();
        let total: u32 = candidates.iter().map(|(_, w)| w).sum();
        if total == 0 {
            return None;
        }
        let mut x = self.rng.gen_range(0..total);
        for (op, w) in candidates {
            if x < w {
                return Some(op);
            }
            x -= w;
        }
        unreachable!()
    }

    fn expr(&mut self, size: usize) -> Expr {
        let op = match size {
            1 => None,
            2 => self.pick(|a| a == 1),
            _ => self.pick(|a| a >= 1),
        }
        .unwrap_or_else(|| self.pick(|a| a == 0).expect("validated leaves"));
        let b = Box::new;
        match op {
            Op::Ap => {
                let i = self.rng.gen_range(0..self.aps.len());
                Expr::Ap(self.aps[i].clone())
            }
            Op::True => Expr::True,
            Op::False => Expr::False,
            Op::Not => Expr::Not(b(self.expr(size - 1))),
            Op::Next => Expr::Next(b(self.expr(size - 1))),
            Op::Eventually => Expr::Eventually(b(self.expr(size - 1))),
            Op::Always => Expr::Always(b(self.expr(size - 1))),
            binary => {
                let left = self.rng.gen_range(1..=size - 2);
                let l = b(self.expr(left));
                let r = b(self.expr(size - 1 - left));
                match binary {
                    Op::And => Expr::And(l, r),
                    Op::Or => Expr::Or(l, r),
                    Op::Implies => Expr::Implies(l, r),
                    Op::Equiv => Expr::Equiv(l, r),
                    Op::Until => Expr::Until(l, r),
                    Op::Release => Expr::Release(l, r),
                    Op::WeakUntil => Expr::WeakUntil(l, r),
                    Op::StrongRelease => Expr::StrongRelease(l, r),
                    _ => unreachable!(),
                }
            }
        }
    }

    /// Next raw expression; its tree size is at most the budget.
    pub fn next_expr(&mut self) -> Expr {
        self.expr(self.tree_size)
    }

    /// Next formula, rewritten into positive normal form.
    pub fn next_formula(&mut self) -> Formula {
        self.next_expr().to_pnf()
    }

    pub fn aps(&self) -> &[String] {
        &self.aps
    }
}

/// One formula from a fresh generator seeded with `seed`.
pub fn random_formula(
    seed: u64,
    ap_count: usize,
    tree_size: usize,
    priorities: &Priorities,
) -> Result<Formula, GenError> {
    Ok(FormulaGenerator::new(seed, ap_count, tree_size, priorities.clone())?.next_formula())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let p = Preset::Rand1.priorities();
        for seed in 0..20 {
            assert_eq!(random_formula(seed, 5, 15, &p).unwrap(), random_formula(seed, 5, 15, &p).unwrap());
        }
    }

    #[test]
    fn raw_size_within_budget() {
        for preset in Preset::ALL {
            let mut g = FormulaGenerator::new(1, 5, 15, preset.priorities()).unwrap();
            for _ in 0..300 {
                assert!(g.next_expr().tree_size() <= 15);
            }
        }
    }

    #[test]
    fn randfg_has_only_f_and_g() {
        let mut g = FormulaGenerator::new(9, 5, 15, Preset::RandFg.priorities()).unwrap();
        for _ in 0..300 {
            let f = g.next_formula();
            for s in f.subformulae() {
                assert!(!matches!(
                    s.node(),
                    crate::ltl::Node::Next(_) | crate::ltl::Node::Until(..) | crate::ltl::Node::Release(..)
                ));
            }
        }
    }

    #[test]
    fn zero_priorities_rejected() {
        let zero = Priorities(Op::ALL.iter().map(|&op| (op, 0)).collect());
        assert_eq!(random_formula(0, 2, 5, &zero).unwrap_err(), GenError::AllZero);
        let mut no_leaves = Priorities::uniform();
        for op in [Op::Ap, Op::True, Op::False] {
            no_leaves.0.insert(op, 0);
        }
        assert_eq!(random_formula(0, 2, 5, &no_leaves).unwrap_err(), GenError::NoLeaves);
        assert_eq!(random_formula(0, 0, 5, &Priorities::uniform()).unwrap_err(), GenError::EmptyBudget);
    }

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.to_string().parse::<Preset>().unwrap(), p);
        }
    }
}
