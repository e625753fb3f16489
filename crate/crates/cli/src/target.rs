use std::fs;
use std::path::Path;

use genlstar::algebra::WilkeWeakAlphabet;
use genlstar::automata::{minimize_moore, minimize_sorted, parse_automaton, AutomatonFile, MooreMachine, SortedMachine, WeightedAutomaton};
use genlstar::teacher::builtin::{builtin, semigroup_teacher, Target};
use genlstar::teacher::LassoOracleTarget;
use genlstar::{Alphabet, Error};
use serde_json::{json, Value};

use crate::error::CliError;

/// A target named on the command line, before it is specialised to a kind.
pub enum Loaded {
    Builtin(Target),
    File(AutomatonFile),
}

pub fn read_automaton(path: &Path) -> Result<AutomatonFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    Ok(parse_automaton(&text)?)
}

pub fn load(source: &str) -> Result<Loaded, CliError> {
    match source.strip_prefix("builtin:") {
        Some(name) => Ok(Loaded::Builtin(builtin(name)?)),
        None => Ok(Loaded::File(read_automaton(Path::new(source))?)),
    }
}

fn mismatch(wanted: &str) -> CliError {
    CliError::Core(Error::InvalidTarget(format!("target is not {wanted}")))
}

impl Loaded {
    pub fn into_moore(self) -> Result<MooreMachine, CliError> {
        match self {
            Loaded::Builtin(Target::Dfa(m) | Target::Semigroup(m)) | Loaded::File(AutomatonFile::Moore(m)) => Ok(m),
            _ => Err(mismatch("a DFA")),
        }
    }

    pub fn into_wfa(self) -> Result<WeightedAutomaton, CliError> {
        match self {
            Loaded::Builtin(Target::Wfa(m)) | Loaded::File(AutomatonFile::Wfa(m)) => Ok(m),
            _ => Err(mismatch("a weighted automaton")),
        }
    }

    pub fn into_sorted(self) -> Result<SortedMachine, CliError> {
        match self {
            Loaded::File(AutomatonFile::Sorted(m)) => Ok(m),
            Loaded::Builtin(Target::Omega(o)) => Ok(o.reference().clone()),
            Loaded::Builtin(Target::Semigroup(m)) => Ok(semigroup_teacher(m)?.reference().clone()),
            _ => Err(mismatch("a sorted machine")),
        }
    }

    pub fn into_omega(self) -> Result<LassoOracleTarget, CliError> {
        match self {
            Loaded::Builtin(Target::Omega(o)) => Ok(o),
            Loaded::File(AutomatonFile::Sorted(m)) => omega_from_machine(m),
            _ => Err(mismatch("an ω-language")),
        }
    }
}

/// Reads a sorted machine over the Wilke presentation as an ω-language: a
/// lasso is accepted when its canonical sorted word is.
fn omega_from_machine(m: SortedMachine) -> Result<LassoOracleTarget, CliError> {
    let names: Vec<String> = m.alphabet().generators().iter().map(|g| g.name.clone()).collect();
    let alpha = WilkeWeakAlphabet::new(Alphabet::new(names)?);
    if alpha.sorted() != m.alphabet() {
        return Err(mismatch("a machine over the Wilke presentation"));
    }
    let (a, machine) = (alpha.clone(), m.clone());
    let predicate = move |l: &genlstar::algebra::Lasso| {
        a.lasso_word(l).and_then(|w| machine.accepts(&w)).unwrap_or(false)
    };
    Ok(LassoOracleTarget::new(alpha, None, predicate, m)?)
}

pub fn validate(source: &str, seed: u64) -> Result<Value, CliError> {
    let loaded = load(source)?;
    let summary = match loaded {
        Loaded::Builtin(Target::Dfa(m)) | Loaded::File(AutomatonFile::Moore(m)) => json!({
            "kind": "moore",
            "states": m.state_count(),
            "minimal": minimize_moore(&m).state_count() == m.state_count(),
        }),
        Loaded::Builtin(Target::Semigroup(m)) => {
            let reference = semigroup_teacher(m.clone())?.reference().clone();
            json!({
                "kind": "semigroup",
                "states": m.state_count(),
                "linearization_states": reference.state_count(),
            })
        }
        Loaded::Builtin(Target::Wfa(m)) | Loaded::File(AutomatonFile::Wfa(m)) => json!({
            "kind": "wfa",
            "dimension": m.dimension(),
            "minimal": m.is_minimal(),
        }),
        Loaded::Builtin(Target::Omega(o)) => {
            o.validate(seed)?;
            json!({
                "kind": "omega",
                "states": o.reference().state_count(),
                "seed": seed,
            })
        }
        Loaded::File(AutomatonFile::Sorted(m)) => json!({
            "kind": "sorted",
            "states": m.state_count(),
            "minimal": minimize_sorted(&m).state_count() == m.state_count(),
        }),
    };
    let mut summary = summary;
    summary["target"] = json!(source);
    summary["valid"] = json!(true);
    Ok(summary)
}
