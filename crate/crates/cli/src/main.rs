mod bench;
mod check;
mod translate;

use std::io::{self, IsTerminal, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use slaa::ltl::{self, Formula, Preset};

/// LTL to self-loop alternating automata with Emerson-Lei acceptance.
#[derive(Parser, Debug)]
#[command(name = "ltl2slaa", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Translate formulae into automata
    Translate(translate::Args),
    /// Cross-check the translations on random formulae and lasso words
    Check(check::Args),
    /// Compare the translations on random formulae and write CSV statistics
    Bench(bench::Args),
}

/// Why a command stopped; each maps to its own exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Parse(anyhow::Error),
    CheckFailed,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::CheckFailed => 3,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.into())
    }
}

pub fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(anyhow::anyhow!("{msg}"))
}

/// Parses one formula, rejecting alphabets too large to enumerate.
pub fn parse_formula(text: &str) -> Result<Formula, Failure> {
    let f = ltl::parse(text).map_err(|e| Failure::Parse(anyhow::anyhow!("{text:?}: {e}")))?;
    let aps = f.atomic_propositions().len();
    if aps > ltl::MAX_APS {
        return Err(Failure::Parse(anyhow::anyhow!(
            "{text:?} uses {aps} propositions, at most {} are supported",
            ltl::MAX_APS
        )));
    }
    Ok(f)
}

pub fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse()
}

/// `text` in green or red when printing to a terminal that allows colour.
pub fn paint(text: &str, good: bool) -> String {
    let colour = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && io::stdout().is_terminal();
    if colour {
        format!("\x1b[{}m{text}\x1b[0m", if good { 32 } else { 31 })
    } else {
        text.to_string()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Translate(args) => translate::run(args),
        Command::Check(args) => check::run(args),
        Command::Bench(args) => bench::run(args),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(e) | Failure::Parse(e) => eprintln!("error: {e:#}"),
                Failure::CheckFailed => {}
            }
            ExitCode::from(f.code())
        }
    }
}
