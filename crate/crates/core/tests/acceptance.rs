//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;
use slaa::backtranslate::slaa_to_ltl;
use slaa::ltl::{eval_lasso, is_mergeable, parse, Formula, FormulaGenerator, LassoWord, Preset};
use slaa::oracle::Decider;
use slaa::simplify::{dominates, prune_dominated, prune_unused_marks, remove_unreachable};
use slaa::slaa::{minimal_models, Acc, MarkId, MinimalModel, Slaa, Term, Transition};
use slaa::translate::{translate, translate_basic, translate_f, translate_fg, Mode, Options};

use common::{configs, raw, words};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn shape(a: &Slaa) -> String {
    a.acceptance.shape()
}

fn describe(a: &Slaa) -> String {
    format!("{} acc={}", a.stats(), shape(a))
}

fn golden_eventually_disjunction() -> Outcome {
    let t = Instant::now();
    let f = parse("F(G a | G F b)").unwrap();
    let (b, m, g) = (translate_basic(&f), translate_f(&f, false), translate_fg(&f));
    let ok = b.stats().reachable_states == 4
        && b.marks.len() == 1
        && shape(&b) == "Fin"
        && m.stats().reachable_states == 2
        && m.marks.len() == 3
        && shape(&m) == "Fin & (Fin | Fin)"
        && g.stats().reachable_states == 1
        && g.marks.len() == 5
        && shape(&g) == "Fin & (Fin | Fin) & (Fin | Inf)";
    let secs = t.elapsed().as_secs_f64();
    outcome(
        ok && secs < 1.0,
        format!("basic [{}], f [{}], fg [{}], {secs:.3}s", describe(&b), describe(&m), describe(&g)),
    )
}

fn golden_infinitely_often_and_merge() -> Outcome {
    let t = Instant::now();
    let gfa = parse("G F a").unwrap();
    let (b, g) = (translate_basic(&gfa), translate_fg(&gfa));
    let merge = translate_f(&parse("F((a R b) & G c)").unwrap(), false);
    let arb = parse("a R b").unwrap();
    let arb_reachable = merge.reachable().iter().any(|&s| merge.states[s] == arb);
    let ok = b.stats().reachable_states == 2
        && g.stats().reachable_states == 1
        && shape(&g) == "Fin | Inf"
        && merge.stats().reachable_states == 2
        && !arb_reachable;
    let secs = t.elapsed().as_secs_f64();
    outcome(
        ok && secs < 1.0,
        format!(
            "GFa basic states={} fg [{}]; F((aRb)&Gc) f states={} aRb reachable={arb_reachable}, {secs:.3}s",
            b.stats().reachable_states,
            describe(&g),
            merge.stats().reachable_states
        ),
    )
}

struct Case {
    formula: Formula,
    words: Vec<LassoWord>,
}

fn sample(preset: Preset, n: usize, seed: u64) -> Vec<Case> {
    let mut g = FormulaGenerator::new(seed, 5, 15, preset.priorities()).unwrap();
    (0..n)
        .map(|i| {
            let formula = g.next_formula();
            Case { formula, words: words(seed.wrapping_mul(1000).wrapping_add(i as u64), g.aps(), 20) }
        })
        .collect()
}

#[derive(Default)]
struct Tally {
    checks: usize,
    disagreements: Vec<String>,
    bound_violations: Vec<String>,
    stage_disagreements: Vec<String>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.disagreements.extend(other.disagreements);
        self.bound_violations.extend(other.bound_violations);
        self.stage_disagreements.extend(other.stage_disagreements);
        self
    }
}

fn check_case(c: &Case) -> Tally {
    let mut t = Tally::default();
    let expected: Vec<bool> = c.words.iter().map(|w| eval_lasso(&c.formula, w).unwrap()).collect();
    let subformulae = c.formula.subformulae().len();
    for opts in configs() {
        let a = translate(&c.formula, &opts);
        let d = Decider::new(&a);
        for (w, &e) in c.words.iter().zip(&expected) {
            t.checks += 1;
            if d.accepts(w).unwrap() != e {
                t.disagreements.push(format!("{} mode={} simplify={} word={w}", c.formula, opts.mode, opts.simplify));
            }
        }
        if a.stats().reachable_states > subformulae {
            t.bound_violations.push(format!("{} mode={}: {} states", c.formula, opts.mode, a.stats().reachable_states));
        }
    }
    let basic = raw(&c.formula, Mode::Basic);
    if basic.marks.len() != 1 || basic.acceptance != Acc::fin(MarkId(0)) {
        t.bound_violations.push(format!("{}: basic has {} marks", c.formula, basic.marks.len()));
    }
    for mode in Mode::ALL {
        let a = raw(&c.formula, mode);
        let stages = [
            ("dominance", prune_dominated(&a)),
            ("unreachable", remove_unreachable(&a)),
            ("marks", prune_unused_marks(&a)),
        ];
        for (name, s) in &stages {
            let d = Decider::new(s);
            for (w, &e) in c.words.iter().zip(&expected) {
                if d.accepts(w).unwrap() != e {
                    t.stage_disagreements.push(format!("{} mode={mode} stage={name} word={w}", c.formula));
                }
            }
        }
    }
    t
}

fn first(v: &[String]) -> String {
    v.first().map_or(String::new(), |s| format!("; first: {s}"))
}

fn oracle_equivalence(cases: &[Case]) -> (Outcome, Tally) {
    let t = Instant::now();
    let tally = cases.par_iter().map(check_case).reduce(Tally::default, Tally::merge);
    let secs = t.elapsed().as_secs_f64();
    let ok = tally.disagreements.is_empty() && secs < 300.0;
    let detail = format!(
        "{} formulae, {} membership checks, {} disagreements, {secs:.1}s{}",
        cases.len(),
        tally.checks,
        tally.disagreements.len(),
        first(&tally.disagreements)
    );
    (outcome(ok, detail), tally)
}

fn round_trip() -> Outcome {
    let t = Instant::now();
    let cases: Vec<Case> = [(Preset::Rand1, 1), (Preset::Rand4, 2), (Preset::RandFg, 3)]
        .into_iter()
        .flat_map(|(p, seed)| sample(p, 67, 100 + seed))
        .take(200)
        .collect();
    let bad: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|c| {
            Mode::ALL.into_iter().flat_map(move |mode| {
                let back = slaa_to_ltl(&translate(&c.formula, &Options::new(mode)));
                c.words
                    .iter()
                    .filter(move |w| eval_lasso(&back, w).unwrap() != eval_lasso(&c.formula, w).unwrap())
                    .map(move |w| format!("{} mode={mode} word={w}", c.formula))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let secs = t.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 300.0,
        format!(
            "{} formulae x 3 modes x 20 words, {} disagreements, {secs:.1}s{}",
            cases.len(),
            bad.len(),
            first(&bad)
        ),
    )
}

fn size_bounds(tally: &Tally, n: usize) -> Outcome {
    outcome(
        tally.bound_violations.is_empty(),
        format!(
            "{n} formulae x 6 configurations, {} violations{}",
            tally.bound_violations.len(),
            first(&tally.bound_violations)
        ),
    )
}

struct Row {
    states: [usize; 3],
    det: [bool; 3],
    nonalt: [bool; 3],
}

fn mergeable_randfg(n: usize) -> (Vec<Formula>, usize) {
    let mut g = FormulaGenerator::new(2024, 5, 15, Preset::RandFg.priorities()).unwrap();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < n && attempts < 1_000_000 {
        attempts += 1;
        let f = g.next_formula();
        if is_mergeable(&f) {
            out.push(f);
        }
    }
    (out, attempts)
}

fn rows(formulae: &[Formula]) -> Vec<Row> {
    formulae
        .par_iter()
        .map(|f| {
            let stats = Mode::ALL.map(|m| translate(f, &Options::new(m)).stats());
            Row {
                states: stats.map(|s| s.reachable_states),
                det: stats.map(|s| s.is_deterministic),
                nonalt: stats.map(|s| s.is_nonalternating),
            }
        })
        .collect()
}

fn statistical_reduction(rows: &[Row], secs: f64) -> Outcome {
    let total = |i: usize| rows.iter().map(|r| r.states[i]).sum::<usize>();
    let (basic, f, fg) = (total(0), total(1), total(2));
    let ordered = rows.iter().filter(|r| r.states[2] <= r.states[1] && r.states[1] <= r.states[0]).count();
    let ratio = fg as f64 / basic as f64;
    let share = ordered as f64 / rows.len() as f64;
    outcome(
        rows.len() == 1000 && ratio <= 0.7 && share >= 0.95 && secs < 600.0,
        format!(
            "{} formulae; states basic={basic} f={f} fg={fg} (fg/basic={:.1}%); fg<=f<=basic in {:.1}% of rows, {secs:.1}s",
            rows.len(),
            100.0 * ratio,
            100.0 * share
        ),
    )
}

fn branching_trend(rows: &[Row]) -> Outcome {
    let count = |pick: fn(&Row) -> [bool; 3], i: usize| rows.iter().filter(|r| pick(r)[i]).count();
    let nonalt = [0, 1, 2].map(|i| count(|r| r.nonalt, i));
    let det = [0, 1, 2].map(|i| count(|r| r.det, i));
    outcome(
        nonalt[2] > nonalt[0] && det[2] > det[0],
        format!(
            "nonalternating basic={} f={} fg={}; deterministic basic={} f={} fg={}",
            nonalt[0], nonalt[1], nonalt[2], det[0], det[1], det[2]
        ),
    )
}

fn simplification_soundness(tally: &Tally) -> Outcome {
    outcome(
        tally.disagreements.is_empty() && tally.stage_disagreements.is_empty(),
        format!(
            "{} disagreements with simplification toggled, {} after single stages{}",
            tally.disagreements.len(),
            tally.stage_disagreements.len(),
            first(&tally.stage_disagreements)
        ),
    )
}

fn worked_example() -> Outcome {
    let m = MarkId;
    let phi = Acc::and([Acc::fin(m(1)), Acc::or([Acc::fin(m(2)), Acc::inf(m(3))])]);
    let models = minimal_models(&phi);
    let tr = |marks: &[u32], dest: &[usize]| Transition {
        source: 0,
        letter: Default::default(),
        marks: marks.iter().map(|&i| m(i)).collect(),
        dest: dest.iter().copied().collect(),
    };
    let dominated = dominates(&tr(&[1, 2], &[1]), &tr(&[1], &[1, 2]), &models);
    let expected = [
        MinimalModel { fin_marks: BTreeSet::from([m(1), m(2)]), inf_marks: BTreeSet::new() },
        MinimalModel { fin_marks: BTreeSet::from([m(1)]), inf_marks: BTreeSet::from([m(3)]) },
    ];
    let same = models.iter().collect::<BTreeSet<_>>() == expected.iter().collect::<BTreeSet<_>>();
    let shown: Vec<String> = models
        .iter()
        .map(|o| {
            let terms: Vec<String> = o
                .terms()
                .iter()
                .map(|t| match t {
                    Term::Fin(m) => format!("Fin({m})"),
                    Term::Inf(m) => format!("Inf({m})"),
                })
                .collect();
            format!("{{{}}}", terms.join(", "))
        })
        .collect();
    outcome(dominated && same && models.len() == 2, format!("dominates={dominated}, models {}", shown.join(" ")))
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, Outcome)> =
        vec![(1, golden_eventually_disjunction()), (2, golden_infinitely_often_and_merge())];

    let cases: Vec<Case> = [(Preset::Rand1, 11), (Preset::Rand4, 12), (Preset::RandFg, 13)]
        .into_iter()
        .flat_map(|(p, seed)| sample(p, 500, seed))
        .collect();
    let (equivalence, tally) = oracle_equivalence(&cases);
    results.push((3, equivalence));
    results.push((4, round_trip()));
    results.push((5, size_bounds(&tally, cases.len())));

    let t = Instant::now();
    let (formulae, attempts) = mergeable_randfg(1000);
    let rows = rows(&formulae);
    let secs = t.elapsed().as_secs_f64();
    let mut reduction = statistical_reduction(&rows, secs);
    reduction.detail.push_str(&format!(", {attempts} draws"));
    results.push((6, reduction));
    results.push((7, branching_trend(&rows)));
    results.push((8, simplification_soundness(&tally)));
    results.push((9, worked_example()));

    let mut failed = 0;
    for (n, o) in &results {
        println!("criterion {n}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {}/{} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
