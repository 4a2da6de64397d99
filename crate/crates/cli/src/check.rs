use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use slaa::backtranslate::slaa_to_ltl;
use slaa::ltl::{eval_lasso, Formula, FormulaGenerator, LassoWord, Preset};
use slaa::oracle::Decider;
use slaa::translate::{translate, Mode, Options};

use crate::{paint, parse_formula, parse_preset, usage, Failure};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Number of random formulae
    #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
    random: Option<usize>,
    /// Check this formula instead of random ones
    #[arg(short = 'f', long = "formula")]
    formula: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "randfg", value_parser = parse_preset)]
    preset: Preset,
    /// Lasso words sampled per formula
    #[arg(long, default_value_t = 20)]
    words: usize,
    /// Number of atomic propositions of random formulae
    #[arg(long, default_value_t = 5)]
    aps: usize,
    /// Tree size of random formulae
    #[arg(long, default_value_t = 15)]
    size: usize,
    /// Also check the automata translated back into LTL
    #[arg(long)]
    roundtrip: bool,
}

struct Counterexample {
    formula: Formula,
    word: LassoWord,
    stage: String,
}

fn words_for(seed: u64, index: usize, aps: &[String], n: usize) -> Vec<LassoWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index as u64));
    (0..n).map(|_| LassoWord::random(&mut rng, aps)).collect()
}

fn check_one(f: &Formula, words: &[LassoWord], roundtrip: bool) -> Option<Counterexample> {
    let expected: Vec<bool> = words.iter().map(|w| eval_lasso(f, w).unwrap()).collect();
    let found = |stage: String, says: &dyn Fn(&LassoWord) -> bool| {
        words.iter().zip(&expected).find(|(w, &e)| says(w) != e).map(|(w, _)| Counterexample {
            formula: f.clone(),
            word: w.clone(),
            stage: stage.clone(),
        })
    };
    for mode in Mode::ALL {
        let a = translate(f, &Options::new(mode));
        let d = Decider::new(&a);
        if let Some(c) = found(mode.to_string(), &|w| d.accepts(w).unwrap()) {
            return Some(c);
        }
        if roundtrip {
            let back = slaa_to_ltl(&a);
            if let Some(c) = found(format!("roundtrip-{mode}"), &|w| eval_lasso(&back, w).unwrap()) {
                return Some(c);
            }
        }
    }
    None
}

pub fn run(args: Args) -> Result<(), Failure> {
    let (formulae, aps): (Vec<Formula>, Vec<String>) = match (&args.formula, args.random) {
        (Some(text), _) => {
            let f = parse_formula(text)?;
            let aps = f.atomic_propositions();
            (vec![f], aps)
        }
        (None, Some(n)) => {
            let mut g =
                FormulaGenerator::new(args.seed, args.aps, args.size, args.preset.priorities()).map_err(usage)?;
            ((0..n).map(|_| g.next_formula()).collect(), g.aps().to_vec())
        }
        (None, None) => unreachable!("clap requires --random or --formula"),
    };
    let failures: Vec<Option<Counterexample>> = formulae
        .par_iter()
        .enumerate()
        .map(|(i, f)| check_one(f, &words_for(args.seed, i, &aps, args.words), args.roundtrip))
        .collect();
    let passed = failures.iter().filter(|c| c.is_none()).count();
    let total = formulae.len();
    match failures.into_iter().flatten().next() {
        None => {
            println!("{} {passed}/{total}", paint("PASS", true));
            Ok(())
        }
        Some(c) => {
            println!("{} {passed}/{total}", paint("FAIL", false));
            println!("counterexample: formula={} word={} stage={}", c.formula, c.word, c.stage);
            Err(Failure::CheckFailed)
        }
    }
}
