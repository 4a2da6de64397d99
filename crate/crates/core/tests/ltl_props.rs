mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use slaa::ltl::{
    dnf_decompose, eval_expr, eval_lasso, is_mergeable, parse, Formula, FormulaGenerator, LassoWord, Node,
};
use slaa::slaa::{eval_acc, minimal_models, Acc, MarkId, Term};

use common::{formula, preset, words};

/// Satisfaction at absolute position `i`, walking the unrolled word.
fn reference(f: &Formula, w: &LassoWord, i: usize) -> bool {
    let (n, p) = (w.prefix.len(), w.period.len());
    let i = if i >= n + p { n + (i - n) % p } else { i };
    let horizon = i..=i + n + p;
    match f.node() {
        Node::True => true,
        Node::False => false,
        Node::Ap(a) => w.letter_at(i).contains(w.aps.iter().position(|x| x == a).unwrap()),
        Node::NegAp(a) => !w.letter_at(i).contains(w.aps.iter().position(|x| x == a).unwrap()),
        Node::And(v) => v.iter().all(|g| reference(g, w, i)),
        Node::Or(v) => v.iter().any(|g| reference(g, w, i)),
        Node::Next(g) => reference(g, w, i + 1),
        Node::Eventually(g) => horizon.into_iter().any(|j| reference(g, w, j)),
        Node::Always(g) => horizon.into_iter().all(|j| reference(g, w, j)),
        Node::Until(l, r) => horizon.into_iter().any(|j| reference(r, w, j) && (i..j).all(|k| reference(l, w, k))),
        Node::Release(l, r) => horizon.into_iter().all(|j| reference(r, w, j) || (i..j).any(|k| reference(l, w, k))),
    }
}

fn acc_strategy() -> impl Strategy<Value = Acc> {
    let leaf = prop_oneof![
        Just(Acc::True),
        Just(Acc::False),
        (0u32..4).prop_map(|m| Acc::fin(MarkId(m))),
        (0u32..4).prop_map(|m| Acc::inf(MarkId(m))),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(Acc::and),
            prop::collection::vec(inner, 1..4).prop_map(Acc::or),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse(seed: u64, aps in 1usize..5, p in 0usize..4) {
        let (f, _) = formula(seed, aps, 15, preset(p));
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn normal_form_preserves_satisfaction(seed: u64, aps in 1usize..4, p in 0usize..4) {
        let mut g = FormulaGenerator::new(seed, aps, 12, preset(p).priorities()).unwrap();
        let e = g.next_expr();
        let f = e.to_pnf();
        for w in words(seed, g.aps(), 5) {
            prop_assert_eq!(eval_expr(&e, &w).unwrap(), eval_lasso(&f, &w).unwrap(), "{} on {}", f, w);
        }
    }

    #[test]
    fn evaluator_matches_unrolled_reference(seed: u64, aps in 1usize..4, p in 0usize..4) {
        let (f, names) = formula(seed, aps, 10, preset(p));
        for w in words(seed ^ 1, &names, 5) {
            prop_assert_eq!(eval_lasso(&f, &w).unwrap(), reference(&f, &w, 0), "{} on {}", f, w);
        }
    }

    #[test]
    fn dnf_is_equivalent(seed: u64, aps in 1usize..4, p in 0usize..4) {
        let (f, names) = formula(seed, aps, 15, preset(p));
        let d = dnf_decompose(&f).to_formula();
        for w in words(seed, &names, 10) {
            prop_assert_eq!(eval_lasso(&f, &w).unwrap(), eval_lasso(&d, &w).unwrap(), "{} on {}", f, w);
        }
    }

    #[test]
    fn mergeability_is_inherited(seed: u64, aps in 1usize..4, p in 0usize..4) {
        let (f, _) = formula(seed, aps, 15, preset(p));
        if f.subformulae().iter().any(is_mergeable) {
            prop_assert!(is_mergeable(&f));
        }
    }

    #[test]
    fn minimal_models_characterize_acceptance(phi in acc_strategy(), recurring in prop::collection::btree_set(0u32..4, 0..5)) {
        let recurring: BTreeSet<MarkId> = recurring.into_iter().map(MarkId).collect();
        let models = minimal_models(&phi);
        prop_assert_eq!(eval_acc(&phi, &recurring), models.iter().any(|o| o.satisfied_by(&recurring)));
        for o in &models {
            let terms = o.terms();
            prop_assert!(phi.eval_terms(&|t| terms.contains(&t)));
            for t in &terms {
                let fewer: BTreeSet<Term> = terms.iter().copied().filter(|x| x != t).collect();
                prop_assert!(!phi.eval_terms(&|x| fewer.contains(&x)));
            }
        }
    }
}
