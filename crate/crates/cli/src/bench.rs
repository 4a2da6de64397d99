use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::Context;
use rayon::prelude::*;
use slaa::ltl::{is_mergeable, Formula, FormulaGenerator, Preset};
use slaa::slaa::Stats;
use slaa::translate::{translate, Mode, Options};

use crate::{parse_preset, usage, Failure};

pub const CSV_VERSION: &str = "# ltl2slaa bench v1";
const MAX_DRAWS: usize = 1_000_000;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Number of formulae
    #[arg(long)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "randfg", value_parser = parse_preset)]
    preset: Preset,
    /// Keep only formulae that some merging rule applies to
    #[arg(long)]
    mergeable_only: bool,
    #[arg(long, default_value_t = 5)]
    aps: usize,
    #[arg(long, default_value_t = 15)]
    size: usize,
    /// Write the CSV here; the summary then goes to standard output
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn generate(args: &Args) -> Result<(Vec<Formula>, usize), Failure> {
    let mut g = FormulaGenerator::new(args.seed, args.aps, args.size, args.preset.priorities()).map_err(usage)?;
    let mut out = Vec::with_capacity(args.random);
    let mut draws = 0;
    while out.len() < args.random && (!args.mergeable_only || draws < MAX_DRAWS) {
        draws += 1;
        let f = g.next_formula();
        if !args.mergeable_only || is_mergeable(&f) {
            out.push(f);
        }
    }
    Ok((out, draws))
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
struct Totals {
    states: usize,
    marks: usize,
    deterministic: usize,
    nonalternating: usize,
}

impl Totals {
    fn add(&mut self, s: &Stats) {
        self.states += s.reachable_states;
        self.marks += s.marks;
        self.deterministic += usize::from(s.is_deterministic);
        self.nonalternating += usize::from(s.is_nonalternating);
    }
}

fn write_csv(w: impl Write, rows: &[(Formula, [Stats; 3])]) -> Result<(), Failure> {
    let mut w = w;
    writeln!(w, "{CSV_VERSION}")?;
    let mut csv = csv::Writer::from_writer(w);
    let mut header = vec!["formula".to_string()];
    for m in Mode::ALL {
        for col in ["states", "marks", "deterministic", "nonalternating"] {
            header.push(format!("{m}_{col}"));
        }
    }
    csv.write_record(&header)?;
    for (f, stats) in rows {
        let mut record = vec![f.to_string()];
        for s in stats {
            record.extend([
                s.reachable_states.to_string(),
                s.marks.to_string(),
                s.is_deterministic.to_string(),
                s.is_nonalternating.to_string(),
            ]);
        }
        csv.write_record(&record)?;
    }
    csv.flush()?;
    Ok(())
}

fn summary(preset: Preset, n: usize, totals: &[Totals; 3]) -> String {
    let [b, f, g] = totals;
    let mut s = String::new();
    s.push_str(&format!("{:<8} {:>6}  {:>15}  {:>15}  {:>15}\n", "", "", "basic", "F-merging", "FG-merging"));
    s.push_str(&format!(
        "{:<8} {:>6}  {:>7} {:>7}  {:>7} {:>7}  {:>7} {:>7}\n",
        "preset", "count", "states", "marks", "states", "marks", "states", "marks"
    ));
    s.push_str(&format!(
        "{:<8} {:>6}  {:>7} {:>7}  {:>7} {:>7}  {:>7} {:>7}\n\n",
        preset.to_string(),
        n,
        b.states,
        b.marks,
        f.states,
        f.marks,
        g.states,
        g.marks
    ));
    s.push_str(&format!("{:<8} {:>26}  {:>26}\n", "", "nonalternating", "deterministic"));
    s.push_str(&format!(
        "{:<8} {:>6} {:>9} {:>9}  {:>6} {:>9} {:>9}\n",
        "preset", "basic", "F", "FG", "basic", "F", "FG"
    ));
    s.push_str(&format!(
        "{:<8} {:>6} {:>9} {:>9}  {:>6} {:>9} {:>9}\n",
        preset.to_string(),
        b.nonalternating,
        f.nonalternating,
        g.nonalternating,
        b.deterministic,
        f.deterministic,
        g.deterministic
    ));
    s
}

pub fn run(args: Args) -> Result<(), Failure> {
    let (formulae, draws) = generate(&args)?;
    if formulae.len() < args.random {
        eprintln!("warning: only {} of {} mergeable formulae found in {draws} draws", formulae.len(), args.random);
    }
    let rows: Vec<(Formula, [Stats; 3])> = formulae
        .into_par_iter()
        .map(|f| {
            let stats = Mode::ALL.map(|m| translate(&f, &Options::new(m)).stats());
            (f, stats)
        })
        .collect();
    let mut totals = [Totals::default(); 3];
    for (_, stats) in &rows {
        for (t, s) in totals.iter_mut().zip(stats) {
            t.add(s);
        }
    }
    let text = summary(args.preset, rows.len(), &totals);
    match &args.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display())).map_err(Failure::Usage)?;
            write_csv(io::BufWriter::new(file), &rows)?;
            print!("{text}");
        }
        None => {
            write_csv(io::stdout().lock(), &rows)?;
            eprint!("{text}");
        }
    }
    Ok(())
}
