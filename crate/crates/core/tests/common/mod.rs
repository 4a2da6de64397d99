#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slaa::ltl::{Formula, FormulaGenerator, LassoWord, Preset};
use slaa::slaa::Slaa;
use slaa::translate::{translate, Mode, Options};

pub fn formula(seed: u64, aps: usize, size: usize, preset: Preset) -> (Formula, Vec<String>) {
    let mut g = FormulaGenerator::new(seed, aps, size, preset.priorities()).unwrap();
    (g.next_formula(), g.aps().to_vec())
}

pub fn words(seed: u64, aps: &[String], n: usize) -> Vec<LassoWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| LassoWord::random(&mut rng, aps)).collect()
}

pub fn configs() -> impl Iterator<Item = Options> {
    Mode::ALL
        .into_iter()
        .flat_map(|mode| [true, false].into_iter().map(move |simplify| Options { mode, reuse_marks: false, simplify }))
}

pub fn raw(f: &Formula, mode: Mode) -> Slaa {
    translate(f, &Options { mode, reuse_marks: false, simplify: false })
}

pub fn preset(i: usize) -> Preset {
    Preset::ALL[i % Preset::ALL.len()]
}
