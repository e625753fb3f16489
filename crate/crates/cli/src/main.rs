mod bench;
mod error;
mod learn;
mod prompt;
mod target;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use genlstar::learner::CounterexampleMode;

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "genlstar", version, about = "Generalized L* learners for automata, weighted automata and algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dfa,
    Wfa,
    Rfsa,
    Sorted,
    Omega,
    Semigroup,
    Wilke,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Mode {
    Prefix,
    Suffix,
}

impl From<Mode> for CounterexampleMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Prefix => CounterexampleMode::Prefix,
            Mode::Suffix => CounterexampleMode::Suffix,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Presentation {
    Full,
    AppendOnly,
}

#[derive(clap::Args, Clone)]
pub struct Output {
    /// Write the report as JSON to this file.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write a DOT graph of the result to this file.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Do not print the report on stdout.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a target and report the result.
    Learn {
        kind: Kind,
        /// A JSON automaton file or `builtin:NAME`. Omitted with --interactive.
        target: Option<String>,
        #[arg(long, value_enum, default_value = "prefix")]
        mode: Mode,
        /// Membership query budget.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Answer queries on stdin instead of using a target.
        #[arg(long)]
        interactive: bool,
        /// Alphabet for --interactive, one character per letter.
        #[arg(long, default_value = "ab")]
        alphabet: String,
        /// Semigroup presentation: `full` has append and prepend letters.
        #[arg(long, value_enum, default_value = "full")]
        presentation: Presentation,
        #[command(flatten)]
        output: Output,
    },
    /// Minimize an automaton file.
    Minimize {
        file: PathBuf,
        /// Write the minimized automaton here instead of stdout.
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Learn each DFA target of a suite and tabulate query counts.
    Bench {
        /// `mod-k`, `random`, or a comma-separated list of builtin names.
        #[arg(default_value = "mod-k")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of targets in the `random` suite.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value = "prefix")]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
    },
    /// Check that a target loads and is well formed.
    Validate {
        target: String,
        /// Seed for the random lasso checks of ω targets.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the builtin targets.
    List,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Learn {
            kind,
            target,
            mode,
            budget,
            interactive,
            alphabet,
            presentation,
            output,
        } => {
            let opts = learn::Options {
                mode: mode.into(),
                budget,
                append_only: matches!(presentation, Presentation::AppendOnly),
            };
            let report = if interactive {
                if target.is_some() {
                    return Err(CliError::Usage("--interactive takes no target".into()));
                }
                learn::learn_interactive(kind, &alphabet, &opts)?
            } else {
                let source = target.ok_or_else(|| CliError::Usage("a target is required".into()))?;
                learn::learn_target(kind, &source, &opts)?
            };
            report.emit(&output)
        }
        Command::Minimize { file, output, dot } => learn::minimize(&file, output.as_deref(), dot.as_deref()),
        Command::Bench {
            suite,
            seed,
            count,
            mode,
            budget,
            json,
            quiet,
        } => {
            let rows = bench::run_suite(&suite, seed, count, mode.into(), budget)?;
            bench::emit(&suite, seed, &rows, json.as_deref(), quiet)
        }
        Command::Validate { target, seed } => {
            let summary = target::validate(&target, seed)?;
            print(&serde_json::to_string_pretty(&summary).expect("json values serialize"));
            Ok(())
        }
        Command::List => {
            for entry in genlstar::teacher::builtin::builtin_targets() {
                print(&format!(
                    "{:<16} {:<10} {}",
                    entry.name,
                    format!("{:?}", entry.kind).to_lowercase(),
                    entry.description
                ));
            }
            Ok(())
        }
    }
}

/// Prints a line on stdout, ignoring a closed pipe.
pub fn print(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
