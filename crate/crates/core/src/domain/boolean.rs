//! Classical DFA learning: rows are bit vectors, equal rows are one state.

use std::collections::HashMap;

use bitvec::vec::BitVec;

use crate::alphabet::{Alphabet, Word};
use crate::automata::MooreMachine;
use crate::error::{Error, Result};
use crate::learner::{ObservationTable, TableDomain};
use crate::teacher::Teacher;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolDomain {
    alphabet: Alphabet,
}

impl BoolDomain {
    pub fn new(alphabet: Alphabet) -> Self {
        BoolDomain { alphabet }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

/// Two access words with equal rows over T whose extended rows differ at
/// `witness`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolInconsistency {
    pub first: Word,
    pub second: Word,
    pub witness: Word,
}

/// Row of `w` over `experiments`, asked directly of the teacher.
pub fn bool_row<T>(w: &Word, experiments: &[Word], teacher: &T) -> Result<BitVec>
where
    T: Teacher<Word = Word, Output = bool> + ?Sized,
{
    experiments
        .iter()
        .map(|t| teacher.membership(&w.concat(t)))
        .collect()
}

pub(crate) fn bits(table: &ObservationTable<BoolDomain>, s: &Word, cols: &[Word]) -> BitVec {
    cols.iter()
        .map(|t| *table.value(s, t).expect("Boolean cells always compose"))
        .collect()
}

pub fn bool_closedness_defects(table: &ObservationTable<BoolDomain>) -> Vec<Word> {
    table.domain().closedness_defects(table)
}

pub fn bool_consistency_defects(table: &ObservationTable<BoolDomain>) -> Vec<BoolInconsistency> {
    table.domain().inconsistencies(table)
}

pub fn bool_hypothesis(table: &ObservationTable<BoolDomain>) -> Result<MooreMachine> {
    table.domain().hypothesis(table)
}

impl TableDomain for BoolDomain {
    type Access = Word;
    type Experiment = Word;
    type Query = Word;
    type Value = bool;
    type Hypothesis = MooreMachine;
    type Probe = MooreMachine;
    type Inconsistency = BoolInconsistency;

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
        table
            .access()
            .iter()
            .chain(extra)
            .any(|s| bits(table, s, cols) == row)
    }

    fn inconsistencies(&self, table: &ObservationTable<Self>) -> Vec<BoolInconsistency> {
        let cols = table.experiments();
        let ext = table.extended_experiments();
        let mut groups: Vec<Vec<&Word>> = Vec::new();
        let mut index: HashMap<BitVec, usize> = HashMap::new();
        for s in table.access() {
            let g = *index.entry(bits(table, s, cols)).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(s);
        }
        let mut out = Vec::new();
        for group in &groups {
            let ext_rows: Vec<BitVec> = group.iter().map(|s| bits(table, s, &ext)).collect();
            for i in 0..group.len() {
                for j in i + 1..group.len() {
                    if let Some(k) = (0..ext.len()).find(|&k| ext_rows[i][k] != ext_rows[j][k]) {
                        out.push(BoolInconsistency {
                            first: group[i].clone(),
                            second: group[j].clone(),
                            witness: ext[k].clone(),
                        });
                    }
                }
            }
        }
        out
    }

    fn witness<'d>(&self, d: &'d BoolInconsistency) -> &'d Word {
        &d.witness
    }

    fn separates(&self, table: &ObservationTable<Self>, d: &BoolInconsistency, column: &Word) -> bool {
        table.value(&d.first, column) != table.value(&d.second, column)
    }

    fn hypothesis(&self, table: &ObservationTable<Self>) -> Result<MooreMachine> {
        let cols = table.experiments();
        let mut state_of: HashMap<BitVec, usize> = HashMap::new();
        let mut reps: Vec<&Word> = Vec::new();
        for s in table.access() {
            state_of.entry(bits(table, s, cols)).or_insert_with(|| {
                reps.push(s);
                reps.len() - 1
            });
        }
        let lookup = |w: &Word| -> Result<usize> {
            state_of
                .get(&bits(table, w, cols))
                .copied()
                .ok_or_else(|| Error::InternalConsistency(format!("row of {w:?} has no state")))
        };
        let mut transitions = Vec::with_capacity(reps.len());
        for rep in &reps {
            let row: Vec<usize> = self
                .alphabet
                .letters()
                .map(|a| lookup(&rep.append(a)))
                .collect::<Result<_>>()?;
            transitions.push(row);
        }
        for s in table.access() {
            let q = lookup(s)?;
            for a in self.alphabet.letters() {
                if lookup(&s.append(a))? != transitions[q][a] {
                    return Err(Error::InternalConsistency(format!(
                        "access words of state {q} disagree on letter {:?}",
                        self.alphabet.name(a)
                    )));
                }
            }
        }
        let output = reps
            .iter()
            .map(|s| *table.value(s, &Word::empty()).expect("ε column"))
            .collect();
        let initial = lookup(&Word::empty())?;
        MooreMachine::new(self.alphabet.clone(), initial, transitions, output)
    }

    fn probe<'h>(&self, h: &'h MooreMachine) -> &'h MooreMachine {
        h
    }

    fn evaluate(&self, probe: &MooreMachine, q: &Word) -> Result<bool> {
        probe.accepts(q)
    }

    fn is_minimal(&self, h: &MooreMachine) -> bool {
        h.minimize().is_isomorphic(h)
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
