//! Ground-truth satisfaction of LTL formulae on lasso words.
//!
//! Every subformula is evaluated on all `|prefix| + |period|` wrapped
//! positions; position `i ≥ |prefix|` stands for every absolute position with
//! the same offset into the period. Until-like operators are least fixpoints
//! and release-like operators greatest fixpoints of their one-step unfolding,
//! iterated over the wrapped positions until stable.

use std::collections::HashMap;

use super::formula::{Formula, Node};
use super::parse::Expr;
use super::word::{LassoWord, WordError};

type Vals = Vec<bool>;

/// Iterates `v[i] = step(i, v[succ(i)])` from `init` until stable.
fn fixpoint(w: &LassoWord, init: bool, step: impl Fn(usize, bool) -> bool) -> Vals {
    let n = w.len();
    let mut v = vec![init; n];
    loop {
        let mut changed = false;
        for i in (0..n).rev() {
            let new = step(i, v[w.succ(i)]);
            if new != v[i] {
                v[i] = new;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

fn shift(w: &LassoWord, v: &Vals) -> Vals {
    (0..w.len()).map(|i| v[w.succ(i)]).collect()
}

fn atom(w: &LassoWord, idx: usize, positive: bool) -> Vals {
    (0..w.len()).map(|i| w.letter(i).contains(idx) == positive).collect()
}

fn until(w: &LassoWord, l: &Vals, r: &Vals) -> Vals {
    fixpoint(w, false, |i, next| r[i] || (l[i] && next))
}

fn release(w: &LassoWord, l: &Vals, r: &Vals) -> Vals {
    fixpoint(w, true, |i, next| r[i] && (l[i] || next))
}

struct PnfEval<'a> {
    word: &'a LassoWord,
    ap_index: HashMap<String, usize>,
    memo: HashMap<*const Node, Vals>,
    // keeps memo keys alive
    pinned: Vec<Formula>,
}

impl PnfEval<'_> {
    fn eval(&mut self, f: &Formula) -> Vals {
        if let Some(v) = self.memo.get(&f.ptr()) {
            return v.clone();
        }
        let w = self.word;
        let n = w.len();
        let v = match f.node() {
            Node::True => vec![true; n],
            Node::False => vec![false; n],
            Node::Ap(a) => atom(w, self.ap_index[a], true),
            Node::NegAp(a) => atom(w, self.ap_index[a], false),
            Node::And(ops) => {
                let mut acc = vec![true; n];
                for op in ops {
                    let o = self.eval(op);
                    acc.iter_mut().zip(o).for_each(|(x, y)| *x &= y);
                }
                acc
            }
            Node::Or(ops) => {
                let mut acc = vec![false; n];
                for op in ops {
                    let o = self.eval(op);
                    acc.iter_mut().zip(o).for_each(|(x, y)| *x |= y);
                }
                acc
            }
            Node::Next(g) => {
                let g = self.eval(g);
                shift(w, &g)
            }
            Node::Until(l, r) => {
                let (l, r) = (self.eval(l), self.eval(r));
                until(w, &l, &r)
            }
            Node::Release(l, r) => {
                let (l, r) = (self.eval(l), self.eval(r));
                release(w, &l, &r)
            }
            Node::Eventually(g) => {
                let g = self.eval(g);
                until(w, &vec![true; n], &g)
            }
            Node::Always(g) => {
                let g = self.eval(g);
                release(w, &vec![false; n], &g)
            }
        };
        self.memo.insert(f.ptr(), v.clone());
        self.pinned.push(f.clone());
        v
    }
}

/// Decides `prefix · period^ω ⊨ f`.
pub fn eval_lasso(f: &Formula, w: &LassoWord) -> Result<bool, WordError> {
    let aps = f.atomic_propositions();
    let idx = w.ap_map(&aps)?;
    let mut ev =
        PnfEval { word: w, ap_index: aps.into_iter().zip(idx).collect(), memo: HashMap::new(), pinned: Vec::new() };
    Ok(ev.eval(f)[0])
}

/// Evaluates a formula at every wrapped position of `w`.
pub fn eval_positions(f: &Formula, w: &LassoWord) -> Result<Vec<bool>, WordError> {
    let aps = f.atomic_propositions();
    let idx = w.ap_map(&aps)?;
    let mut ev =
        PnfEval { word: w, ap_index: aps.into_iter().zip(idx).collect(), memo: HashMap::new(), pinned: Vec::new() };
    Ok(ev.eval(f))
}

fn eval_expr_vals(e: &Expr, w: &LassoWord) -> Result<Vals, WordError> {
    use Expr::*;
    let n = w.len();
    let zip = |a: Vals, b: Vals, op: fn(bool, bool) -> bool| -> Vals {
        a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
    };
    Ok(match e {
        True => vec![true; n],
        False => vec![false; n],
        Ap(a) => {
            let i = w.ap_map(std::slice::from_ref(a))?[0];
            atom(w, i, true)
        }
        Not(g) => eval_expr_vals(g, w)?.into_iter().map(|x| !x).collect(),
        And(l, r) => zip(eval_expr_vals(l, w)?, eval_expr_vals(r, w)?, |x, y| x && y),
        Or(l, r) => zip(eval_expr_vals(l, w)?, eval_expr_vals(r, w)?, |x, y| x || y),
        Implies(l, r) => zip(eval_expr_vals(l, w)?, eval_expr_vals(r, w)?, |x, y| !x || y),
        Equiv(l, r) => zip(eval_expr_vals(l, w)?, eval_expr_vals(r, w)?, |x, y| x == y),
        Next(g) => shift(w, &eval_expr_vals(g, w)?),
        Eventually(g) => until(w, &vec![true; n], &eval_expr_vals(g, w)?),
        Always(g) => release(w, &vec![false; n], &eval_expr_vals(g, w)?),
        Until(l, r) => until(w, &eval_expr_vals(l, w)?, &eval_expr_vals(r, w)?),
        Release(l, r) => release(w, &eval_expr_vals(l, w)?, &eval_expr_vals(r, w)?),
        WeakUntil(l, r) => {
            let (l, r) = (eval_expr_vals(l, w)?, eval_expr_vals(r, w)?);
            fixpoint(w, true, |i, next| r[i] || (l[i] && next))
        }
        StrongRelease(l, r) => {
            let (l, r) = (eval_expr_vals(l, w)?, eval_expr_vals(r, w)?);
            fixpoint(w, false, |i, next| r[i] && (l[i] || next))
        }
    })
}

/// Decides satisfaction of an unnormalized expression directly, without
/// rewriting it into positive normal form.
pub fn eval_expr(e: &Expr, w: &LassoWord) -> Result<bool, WordError> {
    Ok(eval_expr_vals(e, w)?[0])
}
