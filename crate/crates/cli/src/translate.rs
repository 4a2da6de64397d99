use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use anyhow::Context;
use clap::ValueEnum;
use slaa::backtranslate::slaa_to_ltl;
use slaa::hoa::{emit_dot, emit_hoa};
use slaa::translate::{translate, Mode, Options};

use crate::{parse_formula, usage, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Hoa,
    Dot,
    Stats,
    /// The automaton translated back into LTL
    Ltl,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Formula to translate
    #[arg(short = 'f', long = "formula", conflicts_with = "file", required_unless_present = "file")]
    formula: Option<String>,
    /// File with one formula per line; `-` reads standard input
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value = "fg", value_parser = |s: &str| s.parse::<Mode>())]
    mode: Mode,
    /// Skip dominance pruning, unreachable-state removal and mark pruning
    #[arg(long)]
    no_simplify: bool,
    /// Share clause marks across eventually subformulae (f mode only)
    #[arg(long)]
    reuse_marks: bool,
    #[arg(long, value_enum, default_value = "hoa")]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(short, long)]
    out: Option<PathBuf>,
}

/// Formula texts with their line numbers; blank lines and `#` comments are skipped.
fn read_formulae(args: &Args) -> Result<Vec<(usize, String)>, Failure> {
    if let Some(f) = &args.formula {
        return Ok(vec![(1, f.clone())]);
    }
    let path = args.file.as_ref().expect("clap requires a formula or a file");
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input").map_err(Failure::Usage)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Usage)?
    };
    Ok(text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

pub fn run(args: Args) -> Result<(), Failure> {
    if args.reuse_marks && args.mode != Mode::F {
        return Err(usage("--reuse-marks only applies to --mode f"));
    }
    let opts = Options { mode: args.mode, reuse_marks: args.reuse_marks, simplify: !args.no_simplify };
    let mut out = String::new();
    for (line, text) in read_formulae(&args)? {
        let f = parse_formula(&text).map_err(|e| match e {
            Failure::Parse(e) if args.file.is_some() => Failure::Parse(e.context(format!("line {line}"))),
            e => e,
        })?;
        let a = translate(&f, &opts);
        match args.format {
            Format::Hoa => out.push_str(&emit_hoa(&a)),
            Format::Dot => out.push_str(&emit_dot(&a)),
            Format::Stats => out.push_str(&format!("{}\n", a.stats())),
            Format::Ltl => out.push_str(&format!("{}\n", slaa_to_ltl(&a))),
        }
    }
    match &args.out {
        Some(path) => {
            fs::write(path, out).with_context(|| format!("writing {}", path.display())).map_err(Failure::Usage)
        }
        None => Ok(io::stdout().write_all(out.as_bytes())?),
    }
}
