use std::fs;
use std::path::Path;
use std::thread;

use genlstar::automata::MooreMachine;
use genlstar::domain::BoolDomain;
use genlstar::learner::{learn, CounterexampleMode, LearnerConfig};
use genlstar::teacher::builtin::random_dfa;
use genlstar::teacher::dfa_teacher;
use genlstar::Alphabet;
use serde_json::json;

use crate::error::CliError;
use crate::target::load;

pub struct Row {
    pub target: String,
    pub states: usize,
    pub membership_queries: usize,
    pub equivalence_queries: usize,
    pub rounds: usize,
}

/// Expands a suite name into named DFA targets.
fn suite_targets(suite: &str, seed: u64, count: usize) -> Result<Vec<(String, MooreMachine)>, CliError> {
    match suite.trim() {
        "" => Ok(Vec::new()),
        "mod-k" => (2..=8)
            .map(|k| {
                let name = format!("mod-{k}");
                Ok((name.clone(), load(&format!("builtin:{name}"))?.into_moore()?))
            })
            .collect(),
        "random" => {
            let ab = Alphabet::from_chars("ab")?;
            Ok((0..count as u64)
                .map(|i| (format!("random-{}", seed + i), random_dfa(seed + i, 8, &ab)))
                .collect())
        }
        list => list
            .split(',')
            .map(|name| {
                let name = name.trim();
                Ok((name.to_string(), load(&format!("builtin:{name}"))?.into_moore()?))
            })
            .collect(),
    }
}

/// Learns every target of the suite, one thread per target.
pub fn run_suite(suite: &str, seed: u64, count: usize, mode: CounterexampleMode, budget: usize) -> Result<Vec<Row>, CliError> {
    let targets = suite_targets(suite, seed, count)?;
    let cfg = LearnerConfig::new(mode).with_budget(budget);
    let results: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = targets
            .iter()
            .map(|(name, m)| {
                let cfg = &cfg;
                scope.spawn(move || {
                    learn(BoolDomain::new(m.alphabet().clone()), &dfa_teacher(m.clone()), cfg).map(|r| Row {
                        target: name.clone(),
                        states: r.hypothesis.state_count(),
                        membership_queries: r.stats.membership_queries,
                        equivalence_queries: r.stats.equivalence_queries,
                        rounds: r.stats.rounds,
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    });
    Ok(results.into_iter().collect::<Result<Vec<_>, _>>()?)
}

pub fn emit(suite: &str, seed: u64, rows: &[Row], json_path: Option<&Path>, quiet: bool) -> Result<(), CliError> {
    if !quiet {
        let mut text = format!("# suite {suite:?}, seed {seed}\n");
        text += &format!("{:<16} {:>6} {:>8} {:>6} {:>6}", "target", "states", "mq", "eq", "rounds");
        for r in rows {
            text += &format!(
                "\n{:<16} {:>6} {:>8} {:>6} {:>6}",
                r.target, r.states, r.membership_queries, r.equivalence_queries, r.rounds
            );
        }
        crate::print(&text);
    }
    if let Some(path) = json_path {
        let rows: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "target": r.target,
                    "states": r.states,
                    "membership_queries": r.membership_queries,
                    "equivalence_queries": r.equivalence_queries,
                    "rounds": r.rounds,
                })
            })
            .collect();
        let doc = json!({"suite": suite, "seed": seed, "rows": rows});
        let text = serde_json::to_string_pretty(&doc).expect("json values serialize");
        fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))?;
    }
    Ok(())
}
