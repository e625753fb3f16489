//! JSON interchange for Moore, weighted and sorted machines.
//!
//! ```text
//! {"kind":"moore","alphabet":["a","b"],"states":2,"initial":0,
//!  "output":{"0":false,"1":true},
//!  "transitions":{"0":{"a":1,"b":0},"1":{"a":1,"b":0}}}
//!
//! {"kind":"wfa","alphabet":["a","b"],"states":2,"initial":["1/1","0/1"],
//!  "output":["0/1","1/1"],
//!  "transitions":{"a":[["1/1","1/1"],["0/1","1/1"]],"b":[["1/1","0/1"],["0/1","1/1"]]}}
//!
//! {"kind":"sorted","sorts":["+","ω"],"alphabet":["→a","ω","←ωa"],
//!  "letters":{"+>+":["→a"],"+>ω":["ω"],"ω>ω":["←ωa"]},
//!  "inputs":{"+":["a"]},"states":{"+":1,"ω":1},"initial":{"a":0},
//!  "output":{"+":[false],"ω":[true]},
//!  "transitions":{"+":{"0":{"→a":0,"ω":0}},"ω":{"0":{"←ωa":0}}}}
//! ```
//!
//! State-indexed maps use decimal string keys. Sorted machines number states
//! per sort; a transition target is an index into the letter's target sort.
//! Rationals are `"p/q"` strings.

use serde_json::{json, Map, Value};

use crate::alphabet::Alphabet;
use crate::automata::moore::MooreMachine;
use crate::automata::sorted::{Generator, SortedAlphabet, SortedLetter, SortedMachine};
use crate::automata::weighted::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomatonFile {
    Moore(MooreMachine),
    Wfa(WeightedAutomaton),
    Sorted(SortedMachine),
}

impl AutomatonFile {
    pub fn kind(&self) -> &'static str {
        match self {
            AutomatonFile::Moore(_) => "moore",
            AutomatonFile::Wfa(_) => "wfa",
            AutomatonFile::Sorted(_) => "sorted",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AutomatonFile::Moore(m) => moore_to_json(m),
            AutomatonFile::Wfa(m) => wfa_to_json(m),
            AutomatonFile::Sorted(m) => sorted_to_json(m),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
    }
}

pub fn parse_automaton(text: &str) -> Result<AutomatonFile> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    automaton_from_json(&v)
}

pub fn automaton_from_json(v: &Value) -> Result<AutomatonFile> {
    match str_field(v, "kind")? {
        "moore" => Ok(AutomatonFile::Moore(moore_from_json(v)?)),
        "wfa" => Ok(AutomatonFile::Wfa(wfa_from_json(v)?)),
        "sorted" => Ok(AutomatonFile::Sorted(sorted_from_json(v)?)),
        other => Err(Error::Parse(format!("unknown automaton kind {other:?}"))),
    }
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn str_field<'v>(v: &'v Value, key: &str) -> Result<&'v str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| Error::Parse(format!("field {key:?} must be a string")))
}

fn as_index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("{what} must be a non-negative integer")))
}

fn as_object<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("{what} must be an object")))
}

fn as_array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    as_array(v, what)?
        .iter()
        .map(|x| {
            x.as_str()
                .map(String::from)
                .ok_or_else(|| Error::Parse(format!("{what} must contain strings")))
        })
        .collect()
}

fn state_entry<'v>(map: &'v Map<String, Value>, q: usize, what: &str) -> Result<&'v Value> {
    map.get(&q.to_string())
        .ok_or_else(|| Error::Parse(format!("{what} has no entry for state {q}")))
}

pub fn moore_to_json(m: &MooreMachine) -> Value {
    let mut output = Map::new();
    let mut transitions = Map::new();
    for q in 0..m.state_count() {
        output.insert(q.to_string(), Value::Bool(*m.output(q)));
        let row: Map<String, Value> = m
            .alphabet()
            .letters()
            .map(|a| (m.alphabet().name(a).to_string(), json!(m.successor(q, a))))
            .collect();
        transitions.insert(q.to_string(), Value::Object(row));
    }
    json!({
        "kind": "moore",
        "alphabet": m.alphabet().names(),
        "states": m.state_count(),
        "initial": m.initial(),
        "output": output,
        "transitions": transitions,
    })
}

pub fn moore_from_json(v: &Value) -> Result<MooreMachine> {
    let alphabet = Alphabet::new(string_list(field(v, "alphabet")?, "alphabet")?)?;
    let n = as_index(field(v, "states")?, "states")?;
    let initial = as_index(field(v, "initial")?, "initial")?;
    let output_map = as_object(field(v, "output")?, "output")?;
    let trans_map = as_object(field(v, "transitions")?, "transitions")?;
    let mut output = Vec::with_capacity(n);
    let mut transitions = Vec::with_capacity(n);
    for q in 0..n {
        output.push(
            state_entry(output_map, q, "output")?
                .as_bool()
                .ok_or_else(|| Error::Parse(format!("output of state {q} must be a boolean")))?,
        );
        let row = as_object(state_entry(trans_map, q, "transitions")?, "transition row")?;
        if row.len() != alphabet.len() {
            return Err(Error::InvalidMachine(format!(
                "state {q} must have exactly one transition per letter"
            )));
        }
        let mut targets = Vec::with_capacity(alphabet.len());
        for a in alphabet.letters() {
            let t = row.get(alphabet.name(a)).ok_or_else(|| {
                Error::InvalidMachine(format!(
                    "state {q} has no transition on {:?}",
                    alphabet.name(a)
                ))
            })?;
            targets.push(as_index(t, "transition target")?);
        }
        transitions.push(targets);
    }
    if output_map.len() != n || trans_map.len() != n {
        return Err(Error::InvalidMachine("state maps do not match the state count".into()));
    }
    MooreMachine::new(alphabet, initial, transitions, output)
}

fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

fn rationals_from_json(v: &Value, what: &str) -> Result<Vec<Rational>> {
    as_array(v, what)?
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
            _ => Err(Error::Parse(format!("{what} must contain \"p/q\" strings"))),
        })
        .collect()
}

pub fn wfa_to_json(m: &WeightedAutomaton) -> Value {
    let transitions: Map<String, Value> = m
        .alphabet()
        .letters()
        .map(|a| {
            let rows = m.matrix(a).iter().map(|r| rationals_to_json(r)).collect();
            (m.alphabet().name(a).to_string(), Value::Array(rows))
        })
        .collect();
    json!({
        "kind": "wfa",
        "alphabet": m.alphabet().names(),
        "states": m.dimension(),
        "initial": rationals_to_json(m.initial()),
        "output": rationals_to_json(m.final_weights()),
        "transitions": transitions,
    })
}

pub fn wfa_from_json(v: &Value) -> Result<WeightedAutomaton> {
    let alphabet = Alphabet::new(string_list(field(v, "alphabet")?, "alphabet")?)?;
    let d = as_index(field(v, "states")?, "states")?;
    let initial = rationals_from_json(field(v, "initial")?, "initial")?;
    let output = rationals_from_json(field(v, "output")?, "output")?;
    if initial.len() != d {
        return Err(Error::InvalidMachine(format!("initial vector must have length {d}")));
    }
    let trans = as_object(field(v, "transitions")?, "transitions")?;
    let mut matrices = Vec::new();
    for a in alphabet.letters() {
        let m = trans.get(alphabet.name(a)).ok_or_else(|| {
            Error::InvalidMachine(format!("no matrix for letter {:?}", alphabet.name(a)))
        })?;
        let rows = as_array(m, "matrix")?
            .iter()
            .map(|r| rationals_from_json(r, "matrix row"))
            .collect::<Result<Vec<_>>>()?;
        matrices.push(rows);
    }
    WeightedAutomaton::new(alphabet, initial, matrices, output)
}

fn pair_key(alpha: &SortedAlphabet, from: usize, to: usize) -> String {
    format!("{}>{}", alpha.sort_name(from), alpha.sort_name(to))
}

pub fn sorted_to_json(m: &SortedMachine) -> Value {
    let alpha = m.alphabet();
    let mut letters = Map::new();
    for from in 0..alpha.sort_count() {
        for to in 0..alpha.sort_count() {
            let names: Vec<&str> = alpha
                .letters()
                .iter()
                .filter(|l| l.from == from && l.to == to)
                .map(|l| l.name.as_str())
                .collect();
            if !names.is_empty() {
                letters.insert(pair_key(alpha, from, to), json!(names));
            }
        }
    }
    let mut inputs = Map::new();
    let mut states = Map::new();
    let mut output = Map::new();
    let mut transitions = Map::new();
    for s in 0..alpha.sort_count() {
        let names: Vec<&str> = alpha
            .generators()
            .iter()
            .filter(|g| g.sort == s)
            .map(|g| g.name.as_str())
            .collect();
        if !names.is_empty() {
            inputs.insert(alpha.sort_name(s).to_string(), json!(names));
        }
        let qs = m.states_of_sort(s);
        states.insert(alpha.sort_name(s).to_string(), json!(qs.len()));
        output.insert(
            alpha.sort_name(s).to_string(),
            json!(qs.iter().map(|&q| m.output(q)).collect::<Vec<_>>()),
        );
        let mut block = Map::new();
        for (local, &q) in qs.iter().enumerate() {
            let row: Map<String, Value> = alpha
                .letters_from(s)
                .map(|a| {
                    let t = m.successor(q, a).expect("typed transition");
                    (alpha.letter(a).name.clone(), json!(m.local_index(t)))
                })
                .collect();
            block.insert(local.to_string(), Value::Object(row));
        }
        transitions.insert(alpha.sort_name(s).to_string(), Value::Object(block));
    }
    let initial: Map<String, Value> = alpha
        .generators()
        .iter()
        .enumerate()
        .map(|(g, gen)| (gen.name.clone(), json!(m.local_index(m.initial(g)))))
        .collect();
    let all: Vec<&str> = alpha.letters().iter().map(|l| l.name.as_str()).collect();
    json!({
        "kind": "sorted",
        "sorts": alpha.sorts(),
        "alphabet": all,
        "letters": letters,
        "inputs": inputs,
        "states": states,
        "initial": initial,
        "output": output,
        "transitions": transitions,
    })
}

pub fn sorted_from_json(v: &Value) -> Result<SortedMachine> {
    let sorts = string_list(field(v, "sorts")?, "sorts")?;
    let sort_of = |name: &str| -> Result<usize> {
        sorts
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::Parse(format!("unknown sort {name:?}")))
    };
    let order = string_list(field(v, "alphabet")?, "alphabet")?;
    let mut typed: Vec<Option<(usize, usize)>> = vec![None; order.len()];
    for (key, names) in as_object(field(v, "letters")?, "letters")? {
        let (from, to) = key
            .split_once('>')
            .ok_or_else(|| Error::Parse(format!("letter group key {key:?} must be \"s>t\"")))?;
        let (from, to) = (sort_of(from)?, sort_of(to)?);
        for name in string_list(names, "letter group")? {
            let i = order
                .iter()
                .position(|x| *x == name)
                .ok_or_else(|| Error::Parse(format!("letter {name:?} missing from alphabet")))?;
            if typed[i].replace((from, to)).is_some() {
                return Err(Error::Parse(format!("letter {name:?} typed twice")));
            }
        }
    }
    let letters = order
        .iter()
        .zip(&typed)
        .map(|(name, t)| {
            let (from, to) = t.ok_or_else(|| Error::Parse(format!("letter {name:?} has no sort typing")))?;
            Ok(SortedLetter { name: name.clone(), from, to })
        })
        .collect::<Result<Vec<_>>>()?;
    let inputs = as_object(field(v, "inputs")?, "inputs")?;
    let mut generators = Vec::new();
    for (s, name) in sorts.iter().enumerate() {
        if let Some(names) = inputs.get(name) {
            for g in string_list(names, "inputs")? {
                generators.push(Generator { name: g, sort: s });
            }
        }
    }
    for key in inputs.keys() {
        sort_of(key)?;
    }
    let alphabet = SortedAlphabet::new(sorts.clone(), letters, generators)?;

    let counts = as_object(field(v, "states")?, "states")?;
    let mut offset = Vec::with_capacity(sorts.len());
    let mut state_sort = Vec::new();
    for (s, name) in sorts.iter().enumerate() {
        offset.push(state_sort.len());
        let n = match counts.get(name) {
            Some(c) => as_index(c, "state count")?,
            None => 0,
        };
        state_sort.extend(std::iter::repeat_n(s, n));
    }
    let count_of = |s: usize| -> usize {
        let end = offset.get(s + 1).copied().unwrap_or(state_sort.len());
        end - offset[s]
    };
    let global = |s: usize, local: usize| -> Result<usize> {
        if local >= count_of(s) {
            return Err(Error::InvalidMachine(format!(
                "state {local} does not exist in sort {:?}",
                sorts[s]
            )));
        }
        Ok(offset[s] + local)
    };

    let init = as_object(field(v, "initial")?, "initial")?;
    let mut initial = Vec::new();
    for g in alphabet.generators() {
        let local = as_index(
            init.get(&g.name)
                .ok_or_else(|| Error::InvalidMachine(format!("generator {:?} has no initial state", g.name)))?,
            "initial state",
        )?;
        initial.push(global(g.sort, local)?);
    }
    if init.len() != alphabet.generators().len() {
        return Err(Error::InvalidMachine("initial assignment names unknown generators".into()));
    }

    let outputs = as_object(field(v, "output")?, "output")?;
    let blocks = as_object(field(v, "transitions")?, "transitions")?;
    let mut output = vec![false; state_sort.len()];
    let mut transitions = vec![vec![None; alphabet.letter_count()]; state_sort.len()];
    for (s, name) in sorts.iter().enumerate() {
        let n = count_of(s);
        if n == 0 {
            continue;
        }
        let outs = as_array(
            outputs
                .get(name)
                .ok_or_else(|| Error::Parse(format!("no outputs for sort {name:?}")))?,
            "output block",
        )?;
        if outs.len() != n {
            return Err(Error::InvalidMachine(format!("sort {name:?} needs {n} outputs")));
        }
        let block = as_object(
            blocks
                .get(name)
                .ok_or_else(|| Error::Parse(format!("no transitions for sort {name:?}")))?,
            "transition block",
        )?;
        for local in 0..n {
            let q = offset[s] + local;
            output[q] = outs[local]
                .as_bool()
                .ok_or_else(|| Error::Parse("outputs must be booleans".into()))?;
            let row = as_object(state_entry(block, local, "transition block")?, "transition row")?;
            let expected: Vec<usize> = alphabet.letters_from(s).collect();
            if row.len() != expected.len() {
                return Err(Error::InvalidMachine(format!(
                    "state {local} of sort {name:?} needs exactly the letters of its sort"
                )));
            }
            for a in expected {
                let l = alphabet.letter(a);
                let t = row.get(&l.name).ok_or_else(|| {
                    Error::InvalidMachine(format!("state {local} of sort {name:?} lacks {:?}", l.name))
                })?;
                transitions[q][a] = Some(global(l.to, as_index(t, "transition target")?)?);
            }
        }
    }
    SortedMachine::new(alphabet, state_sort, initial, transitions, output)
}
