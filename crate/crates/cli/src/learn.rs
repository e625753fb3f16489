use std::fs;
use std::path::Path;
use std::time::Instant;

use genlstar::algebra::{extract_syntactic_semigroup, extract_wilke_algebra, SemigroupAlphabet};
use genlstar::automata::json::{moore_to_json, sorted_to_json, wfa_to_json};
use genlstar::automata::{minimize_moore, minimize_sorted, AutomatonFile, MooreMachine, SortedMachine};
use genlstar::domain::{BoolDomain, JslDomain, SortedDomain, WeightedDomain};
use genlstar::learner::{learn, CounterexampleMode, LearnStats, LearnerConfig};
use genlstar::teacher::{dfa_teacher, sorted_teacher, wfa_teacher, wilke_teacher, LinearizedTeacher};
use genlstar::{Alphabet, Error};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::prompt::PromptTeacher;
use crate::target::{load, read_automaton};
use crate::{Kind, Output};

pub struct Options {
    pub mode: CounterexampleMode,
    pub budget: usize,
    /// Semigroup kind only: drop the prepend letters from the presentation.
    pub append_only: bool,
}

impl Options {
    fn config(&self) -> LearnerConfig {
        LearnerConfig::new(self.mode).with_budget(self.budget)
    }
}

pub struct Report {
    json: Value,
    dot: Option<String>,
    equivalent: bool,
}

struct Outcome {
    learned: Value,
    extra: Option<(&'static str, Value)>,
    stats: LearnStats,
    equivalent: bool,
    minimal: bool,
    dot: Option<String>,
}

fn moore_minimal(m: &MooreMachine) -> bool {
    minimize_moore(m).state_count() == m.state_count()
}

fn sorted_minimal(m: &SortedMachine) -> bool {
    minimize_sorted(m).state_count() == m.state_count()
}

pub fn learn_target(kind: Kind, source: &str, opts: &Options) -> Result<Report, CliError> {
    let loaded = load(source)?;
    let cfg = opts.config();
    let start = Instant::now();
    let outcome = match kind {
        Kind::Dfa => {
            let target = loaded.into_moore()?;
            let r = learn(BoolDomain::new(target.alphabet().clone()), &dfa_teacher(target.clone()), &cfg)?;
            Outcome {
                learned: moore_to_json(&r.hypothesis),
                extra: None,
                equivalent: target.distinguish(&r.hypothesis)?.is_none(),
                minimal: moore_minimal(&r.hypothesis),
                dot: Some(r.hypothesis.to_dot()),
                stats: r.stats,
            }
        }
        Kind::Rfsa => {
            let target = loaded.into_moore()?;
            let r = learn(JslDomain::new(target.alphabet().clone()), &dfa_teacher(target.clone()), &cfg)?;
            let h = r.hypothesis;
            Outcome {
                learned: h.rfsa.to_json(),
                extra: Some(("machine", moore_to_json(&h.machine))),
                equivalent: genlstar::domain::rfsa_language_equiv(&h.rfsa, &target)?.is_none(),
                minimal: moore_minimal(&h.machine),
                dot: Some(h.rfsa.to_dot()),
                stats: r.stats,
            }
        }
        Kind::Wfa => {
            let target = loaded.into_wfa()?;
            let r = learn(WeightedDomain::new(target.alphabet().clone()), &wfa_teacher(target.clone()), &cfg)?;
            Outcome {
                learned: wfa_to_json(&r.hypothesis),
                extra: None,
                equivalent: target.distinguish(&r.hypothesis)?.is_none(),
                minimal: r.hypothesis.is_minimal(),
                dot: None,
                stats: r.stats,
            }
        }
        Kind::Sorted => {
            let target = loaded.into_sorted()?;
            let r = learn(SortedDomain::new(target.alphabet().clone()), &sorted_teacher(target.clone()), &cfg)?;
            Outcome {
                learned: sorted_to_json(&r.hypothesis),
                extra: None,
                equivalent: target.distinguish(&r.hypothesis)?.is_none(),
                minimal: sorted_minimal(&r.hypothesis),
                dot: Some(r.hypothesis.to_dot()),
                stats: r.stats,
            }
        }
        Kind::Omega | Kind::Wilke => {
            let target = loaded.into_omega()?;
            let alpha = target.alphabet().clone();
            let reference = target.reference().clone();
            let r = learn(SortedDomain::new(alpha.sorted().clone()), &wilke_teacher(target), &cfg)?;
            let machine = sorted_to_json(&r.hypothesis);
            let (learned, extra) = if kind == Kind::Wilke {
                let algebra = extract_wilke_algebra(&r.hypothesis, &alpha)?;
                if let Some(v) = algebra.axiom_violation(4) {
                    return Err(Error::Extraction(v).into());
                }
                (algebra.to_json(), Some(("machine", machine)))
            } else {
                (machine, None)
            };
            Outcome {
                learned,
                extra,
                equivalent: reference.distinguish(&r.hypothesis)?.is_none(),
                minimal: sorted_minimal(&r.hypothesis),
                dot: Some(r.hypothesis.to_dot()),
                stats: r.stats,
            }
        }
        Kind::Semigroup => {
            let language = loaded.into_moore()?;
            let base = language.alphabet().clone();
            let alpha = if opts.append_only {
                SemigroupAlphabet::append_only(base)
            } else {
                SemigroupAlphabet::new(base)
            };
            let t = LinearizedTeacher::new(alpha, language)?;
            let r = learn(SortedDomain::new(t.alphabet().sorted().clone()), &t, &cfg)?;
            let semigroup = extract_syntactic_semigroup(&r.hypothesis, t.alphabet())?;
            if !semigroup.is_associative() {
                return Err(Error::Extraction("extracted table is not associative".into()).into());
            }
            Outcome {
                learned: semigroup.to_json(),
                extra: Some(("machine", sorted_to_json(&r.hypothesis))),
                equivalent: t.reference().distinguish(&r.hypothesis)?.is_none(),
                minimal: sorted_minimal(&r.hypothesis),
                dot: Some(r.hypothesis.to_dot()),
                stats: r.stats,
            }
        }
    };
    finish(kind, source, opts, start, outcome)
}

pub fn learn_interactive(kind: Kind, alphabet: &str, opts: &Options) -> Result<Report, CliError> {
    let alphabet = Alphabet::from_chars(alphabet)?;
    let teacher = PromptTeacher::new(alphabet.clone());
    let cfg = opts.config();
    let start = Instant::now();
    let outcome = match kind {
        Kind::Dfa => {
            let r = learn(BoolDomain::new(alphabet), &teacher, &cfg)?;
            Outcome {
                learned: moore_to_json(&r.hypothesis),
                extra: None,
                equivalent: true,
                minimal: moore_minimal(&r.hypothesis),
                dot: Some(r.hypothesis.to_dot()),
                stats: r.stats,
            }
        }
        Kind::Rfsa => {
            let r = learn(JslDomain::new(alphabet), &teacher, &cfg)?;
            let h = r.hypothesis;
            Outcome {
                learned: h.rfsa.to_json(),
                extra: Some(("machine", moore_to_json(&h.machine))),
                equivalent: true,
                minimal: moore_minimal(&h.machine),
                dot: Some(h.rfsa.to_dot()),
                stats: r.stats,
            }
        }
        _ => return Err(CliError::Usage("--interactive supports the dfa and rfsa kinds".into())),
    };
    finish(kind, "interactive", opts, start, outcome)
}

fn finish(kind: Kind, source: &str, opts: &Options, start: Instant, o: Outcome) -> Result<Report, CliError> {
    let wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;
    let mut json = json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "target": source,
        "mode": format!("{:?}", opts.mode).to_lowercase(),
        "budget": opts.budget,
        "learned": o.learned,
        "stats": serde_json::to_value(&o.stats).expect("stats serialize"),
        "wall_time_ms": wall_time_ms,
        "verification": {"equivalent": o.equivalent, "minimal": o.minimal},
    });
    if let Some((key, value)) = o.extra {
        json[key] = value;
    }
    Ok(Report {
        json,
        dot: o.dot,
        equivalent: o.equivalent,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))
}

impl Report {
    pub fn emit(&self, out: &Output) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(&self.json).expect("json values serialize");
        if let Some(path) = &out.dot {
            let dot = self
                .dot
                .as_ref()
                .ok_or_else(|| CliError::Usage("DOT output is not available for weighted automata".into()))?;
            write(path, dot)?;
        }
        if let Some(path) = &out.json {
            write(path, &text)?;
        }
        if !out.quiet {
            crate::print(&text);
        }
        if !self.equivalent {
            return Err(Error::InternalConsistency("learned machine differs from the target".into()).into());
        }
        Ok(())
    }
}

pub fn minimize(file: &Path, output: Option<&Path>, dot: Option<&Path>) -> Result<(), CliError> {
    let (min, graph) = match read_automaton(file)? {
        AutomatonFile::Moore(m) => {
            let min = minimize_moore(&m);
            let graph = min.to_dot();
            (AutomatonFile::Moore(min), Some(graph))
        }
        AutomatonFile::Sorted(m) => {
            let min = minimize_sorted(&m);
            let graph = min.to_dot();
            (AutomatonFile::Sorted(min), Some(graph))
        }
        AutomatonFile::Wfa(m) if m.is_minimal() => (AutomatonFile::Wfa(m), None),
        AutomatonFile::Wfa(m) => {
            // Learning against the automaton itself yields a minimal one.
            let cfg = LearnerConfig::new(CounterexampleMode::Prefix);
            let r = learn(WeightedDomain::new(m.alphabet().clone()), &wfa_teacher(m), &cfg)?;
            (AutomatonFile::Wfa(r.hypothesis), None)
        }
    };
    if let Some(path) = dot {
        let graph = graph.ok_or_else(|| CliError::Usage("DOT output is not available for weighted automata".into()))?;
        write(path, &graph)?;
    }
    let text = min.to_json_string();
    match output {
        Some(path) => write(path, &text),
        None => {
            crate::print(&text);
            Ok(())
        }
    }
}
