//! Learning in join-semilattices. Rows are ordered pointwise and joined by
//! bitwise or; a row is represented when it is the join of the S-rows below
//! it. Hypotheses are deterministic machines over joins of rows, and their
//! join-irreducible states form a residual automaton (RFSA).

use std::collections::{HashMap, VecDeque};

use bitvec::vec::BitVec;
use serde_json::{json, Map, Value};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::automata::MooreMachine;
use crate::error::{Error, Result};
use crate::learner::{ObservationTable, TableDomain};

/// Upper bound on the number of joins explored when building a hypothesis.
pub const DEFAULT_JOIN_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JslDomain {
    alphabet: Alphabet,
    cap: usize,
}

impl JslDomain {
    pub fn new(alphabet: Alphabet) -> Self {
        JslDomain {
            alphabet,
            cap: DEFAULT_JOIN_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

/// `access` has its row over T below the join of the extended rows of
/// `below`, yet its extended row is not below that join at `witness`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JslInconsistency {
    pub access: Word,
    pub below: Vec<Word>,
    pub witness: Word,
}

/// Nondeterministic automaton whose states are residual languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rfsa {
    alphabet: Alphabet,
    initial: Vec<usize>,
    transitions: Vec<Vec<Vec<usize>>>,
    accepting: Vec<bool>,
}

impl Rfsa {
    pub fn new(
        alphabet: Alphabet,
        initial: Vec<usize>,
        transitions: Vec<Vec<Vec<usize>>>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = accepting.len();
        if transitions.len() != n {
            return Err(Error::InvalidMachine(format!(
                "{} transition rows for {n} states",
                transitions.len()
            )));
        }
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidMachine(format!("state {q} needs one target set per letter")));
            }
            if row.iter().flatten().any(|&t| t >= n) {
                return Err(Error::InvalidMachine(format!("state {q} has a target out of range")));
            }
        }
        if initial.iter().any(|&q| q >= n) {
            return Err(Error::InvalidMachine("initial state out of range".into()));
        }
        let mut rfsa = Rfsa {
            alphabet,
            initial,
            transitions,
            accepting,
        };
        rfsa.initial.sort_unstable();
        rfsa.initial.dedup();
        for row in rfsa.transitions.iter_mut() {
            for set in row.iter_mut() {
                set.sort_unstable();
                set.dedup();
            }
        }
        Ok(rfsa)
    }

    /// The automaton with no states, accepting nothing.
    pub fn empty(alphabet: Alphabet) -> Self {
        Rfsa {
            alphabet,
            initial: Vec::new(),
            transitions: Vec::new(),
            accepting: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn targets(&self, q: usize, a: Letter) -> &[usize] {
        &self.transitions[q][a]
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    fn step(&self, set: &[usize], a: Letter) -> Vec<usize> {
        let mut next: Vec<usize> = set.iter().flat_map(|&q| self.transitions[q][a].iter().copied()).collect();
        next.sort_unstable();
        next.dedup();
        next
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        let mut set = self.initial.clone();
        for &a in word {
            self.alphabet.check(a)?;
            set = self.step(&set, a);
        }
        Ok(set.iter().any(|&q| self.accepting[q]))
    }

    /// Subset construction over the reachable subsets.
    pub fn determinize(&self) -> MooreMachine {
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        index.insert(self.initial.clone(), 0);
        sets.push(self.initial.clone());
        queue.push_back(0);
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in self.alphabet.letters() {
                let next = self.step(&sets[i], a);
                let j = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    queue.push_back(sets.len() - 1);
                    sets.len() - 1
                });
                row.push(j);
            }
            if transitions.len() <= i {
                transitions.resize(i + 1, Vec::new());
            }
            transitions[i] = row;
        }
        let output = sets.iter().map(|s| s.iter().any(|&q| self.accepting[q])).collect();
        MooreMachine::new(self.alphabet.clone(), 0, transitions, output).expect("subset construction is total")
    }

    pub fn to_json(&self) -> Value {
        let transitions: Map<String, Value> = (0..self.state_count())
            .map(|q| {
                let row: Map<String, Value> = self
                    .alphabet
                    .letters()
                    .map(|a| (self.alphabet.name(a).to_string(), json!(self.transitions[q][a])))
                    .collect();
                (q.to_string(), Value::Object(row))
            })
            .collect();
        let accepting: Vec<usize> = (0..self.state_count()).filter(|&q| self.accepting[q]).collect();
        json!({
            "kind": "rfsa",
            "alphabet": self.alphabet.names(),
            "states": self.state_count(),
            "initial": self.initial,
            "transitions": transitions,
            "accepting": accepting,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph rfsa {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.state_count() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            out.push_str(&format!("  q{q} [shape={shape}];\n"));
        }
        for &q in &self.initial {
            out.push_str(&format!("  init -> q{q};\n"));
        }
        for q in 0..self.state_count() {
            for a in self.alphabet.letters() {
                for &t in &self.transitions[q][a] {
                    out.push_str(&format!("  q{q} -> q{t} [label=\"{}\"];\n", self.alphabet.name(a)));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Least word on which the residual automaton and the DFA differ.
pub fn rfsa_language_equiv(r: &Rfsa, d: &MooreMachine) -> Result<Option<Word>> {
    r.determinize().distinguish(d)
}

/// Deterministic machine over the reachable joins of rows, with the residual
/// automaton read off its join-irreducible rows.
#[derive(Debug, Clone)]
pub struct JslHypothesis {
    pub machine: MooreMachine,
    pub rfsa: Rfsa,
    /// Row over T of each RFSA state.
    pub rfsa_rows: Vec<BitVec>,
    /// Least access word of each RFSA state.
    pub rfsa_access: Vec<Word>,
}

fn bits(table: &ObservationTable<JslDomain>, s: &Word, cols: &[Word]) -> BitVec {
    cols.iter()
        .map(|t| *table.value(s, t).expect("Boolean cells always compose"))
        .collect()
}

fn leq(x: &BitVec, y: &BitVec) -> bool {
    x.iter().zip(y.iter()).all(|(a, b)| !*a || *b)
}

fn join_below<'r>(rows: impl Iterator<Item = &'r BitVec>, bound: &BitVec) -> BitVec {
    let mut acc = BitVec::repeat(false, bound.len());
    for r in rows {
        if leq(r, bound) {
            acc |= r.clone();
        }
    }
    acc
}

pub fn jsl_closedness_defects(table: &ObservationTable<JslDomain>) -> Vec<Word> {
    table.domain().closedness_defects(table)
}

pub fn jsl_consistency_defects(table: &ObservationTable<JslDomain>) -> Vec<JslInconsistency> {
    table.domain().inconsistencies(table)
}

pub fn jsl_hypothesis(table: &ObservationTable<JslDomain>) -> Result<JslHypothesis> {
    table.domain().hypothesis(table)
}

impl TableDomain for JslDomain {
    type Access = Word;
    type Experiment = Word;
    type Query = Word;
    type Value = bool;
    type Hypothesis = JslHypothesis;
    type Probe = MooreMachine;
    type Inconsistency = JslInconsistency;

    fn initial_access(&self) -> Vec<Word> {
        vec![Word::empty()]
    }

    fn initial_experiments(&self) -> Vec<Word> {
        vec![Word::empty()]
    }

    fn successors(&self, s: &Word) -> Vec<Word> {
        self.alphabet.letters().map(|a| s.append(a)).collect()
    }

    fn prepend_letters(&self, t: &Word) -> Vec<Word> {
        self.alphabet.letters().map(|a| t.prepend(a)).collect()
    }

    fn join(&self, s: &Word, t: &Word) -> Option<Word> {
        Some(s.concat(t))
    }

    fn access_query(&self, s: &Word) -> Word {
        s.clone()
    }

    fn covered(&self, table: &ObservationTable<Self>, extra: &[Word], candidate: &Word) -> bool {
        let cols = table.experiments();
        let row = bits(table, candidate, cols);
        let rows: Vec<BitVec> = table.access().iter().chain(extra).map(|s| bits(table, s, cols)).collect();
        join_below(rows.iter(), &row) == row
    }

    fn inconsistencies(&self, table: &ObservationTable<Self>) -> Vec<JslInconsistency> {
        // For a column c, the largest join of extended rows that is 0 at c is
        // the join of all S-rows that are 0 at c. An access word s whose row
        // over T lies below the T-part of that join while its own extended row
        // is 1 at c breaks injectivity on joins.
        let t_len = table.experiments().len();
        let cols = table.all_experiments();
        let access = table.access();
        let ext: Vec<BitVec> = access.iter().map(|s| bits(table, s, &cols)).collect();
        let mut out = Vec::new();
        for (i, s) in access.iter().enumerate() {
            for c in t_len..cols.len() {
                if !ext[i][c] {
                    continue;
                }
                let below: Vec<usize> = (0..access.len()).filter(|&j| !ext[j][c]).collect();
                let mut y = BitVec::repeat(false, t_len);
                for &j in &below {
                    y |= ext[j][..t_len].to_bitvec();
                }
                if leq(&ext[i][..t_len].to_bitvec(), &y) {
                    out.push(JslInconsistency {
                        access: s.clone(),
                        below: below.iter().map(|&j| access[j].clone()).collect(),
                        witness: cols[c].clone(),
                    });
                    break;
                }
            }
        }
        out
    }

    fn witness<'d>(&self, d: &'d JslInconsistency) -> &'d Word {
        &d.witness
    }

    fn separates(&self, table: &ObservationTable<Self>, d: &JslInconsistency, column: &Word) -> bool {
        let on = |w: &Word| *table.value(w, column).expect("Boolean cells always compose");
        on(&d.access) && d.below.iter().all(|w| !on(w))
    }

    fn hypothesis(&self, table: &ObservationTable<Self>) -> Result<JslHypothesis> {
        let cols = table.experiments();
        let access = table.access();
        let rows: Vec<BitVec> = access.iter().map(|s| bits(table, s, cols)).collect();
        let succ: Vec<Vec<BitVec>> = access
            .iter()
            .map(|s| self.alphabet.letters().map(|a| bits(table, &s.append(a), cols)).collect())
            .collect();
        let delta = |r: &BitVec, a: Letter| -> BitVec {
            let mut acc = BitVec::repeat(false, cols.len());
            for (i, row) in rows.iter().enumerate() {
                if leq(row, r) {
                    acc |= succ[i][a].clone();
                }
            }
            acc
        };

        let start = bits(table, &Word::empty(), cols);
        let mut index: HashMap<BitVec, usize> = HashMap::from([(start.clone(), 0)]);
        let mut states = vec![start];
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in self.alphabet.letters() {
                let next = delta(&states[i], a);
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        if states.len() >= self.cap {
                            return Err(Error::BudgetExceeded(format!(
                                "semilattice hypothesis exceeds {} states",
                                self.cap
                            )));
                        }
                        index.insert(next.clone(), states.len());
                        states.push(next);
                        states.len() - 1
                    }
                };
                row.push(j);
            }
            transitions.push(row);
            i += 1;
        }
        let output = states.iter().map(|r| r[0]).collect();
        let machine = MooreMachine::new(self.alphabet.clone(), 0, transitions, output)?;

        // Join-irreducible rows: nonzero and not the join of strictly smaller rows.
        let mut prime_rows: Vec<BitVec> = Vec::new();
        let mut prime_access: Vec<Word> = Vec::new();
        for (s, r) in access.iter().zip(&rows) {
            if r.not_any() || prime_rows.contains(r) {
                continue;
            }
            let strictly_below = rows.iter().filter(|x| *x != r && leq(x, r));
            if join_below(strictly_below, r) != *r {
                prime_rows.push(r.clone());
                prime_access.push(s.clone());
            }
        }
        let start = bits(table, &Word::empty(), cols);
        let initial = (0..prime_rows.len()).filter(|&p| leq(&prime_rows[p], &start)).collect();
        let transitions = prime_rows
            .iter()
            .map(|p| {
                self.alphabet
                    .letters()
                    .map(|a| {
                        let target = delta(p, a);
                        (0..prime_rows.len()).filter(|&q| leq(&prime_rows[q], &target)).collect()
                    })
                    .collect()
            })
            .collect();
        let accepting = prime_rows.iter().map(|p| p[0]).collect();
        let rfsa = Rfsa::new(self.alphabet.clone(), initial, transitions, accepting)?;
        Ok(JslHypothesis {
            machine,
            rfsa,
            rfsa_rows: prime_rows,
            rfsa_access: prime_access,
        })
    }

    fn probe<'h>(&self, h: &'h JslHypothesis) -> &'h MooreMachine {
        &h.machine
    }

    fn evaluate(&self, probe: &MooreMachine, q: &Word) -> Result<bool> {
        probe.accepts(q)
    }

    fn is_minimal(&self, h: &JslHypothesis) -> bool {
        h.machine.minimize().is_isomorphic(&h.machine)
    }

    fn prefixes(&self, ce: &Word) -> Result<Vec<Word>> {
        for &a in ce.iter() {
            self.alphabet.check(a)?;
        }
        Ok(ce.prefixes())
    }

    fn suffixes(&self, ce: &Word) -> Result<Vec<Word>> {
        for &a in ce.iter() {
            self.alphabet.check(a)?;
        }
        Ok(ce.suffixes())
    }
}
