//! Learning sorted machines. Rows live over the experiments starting at the
//! end sort of the access word, so rows of different sorts never coincide.

use std::collections::HashMap;

use crate::automata::{SortedAlphabet, SortedExperiment, SortedMachine, SortedWord};
use crate::error::{Error, Result};
use crate::learner::{ObservationTable, TableDomain};
use crate::teacher::Teacher;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedDomain {
    alphabet: SortedAlphabet,
}

impl SortedDomain {
    pub fn new(alphabet: SortedAlphabet) -> Self {
        SortedDomain { alphabet }
    }

    pub fn alphabet(&self) -> &SortedAlphabet {
        &self.alphabet
    }

    fn end_sort(&self, s: &SortedWord) -> usize {
        self.alphabet
            .end_sort(s)
            .expect("access words are composable by construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedInconsistency {
    pub first: SortedWord,
    pub second: SortedWord,
    pub witness: SortedExperiment,
}

type Row = Vec<Option<bool>>;

/// Row of `w` over `experiments`; `None` where an experiment starts at a
/// different sort than the one `w` ends in.
pub fn sorted_row<T>(
    alphabet: &SortedAlphabet,
    w: &SortedWord,
    experiments: &[SortedExperiment],
    teacher: &T,
) -> Result<Row>
where
    T: Teacher<Word = SortedWord, Output = bool> + ?Sized,
{
    let end = alphabet.end_sort(w)?;
    experiments
        .iter()
        .map(|t| {
            if t.start != end {
                return Ok(None);
            }
            let mut letters = w.letters.clone();
            letters.extend_from_slice(&t.letters);
            teacher.membership(&SortedWord::new(w.generator, letters)).map(Some)
        })
        .collect()
}

pub fn sorted_closedness_defects(table: &ObservationTable<SortedDomain>) -> Vec<SortedWord> {
    table.domain().closedness_defects(table)
}

pub fn sorted_consistency_defects(table: &ObservationTable<SortedDomain>) -> Vec<SortedInconsistency> {
    table.domain().inconsistencies(table)
}

pub fn sorted_hypothesis(table: &ObservationTable<SortedDomain>) -> Result<SortedMachine> {
    table.domain().hypothesis(table)
}

impl TableDomain for SortedDomain {
    type Access = SortedWord;
    type Experiment = SortedExperiment;
    type Query = SortedWord;
    type Value = bool;
    type Hypothesis = SortedMachine;
    type Probe = SortedMachine;
    type Inconsistency = SortedInconsistency;

    fn initial_access(&self) -> Vec<SortedWord> {
        (0..self.alphabet.generators().len())
            .map(|g| SortedWord::new(g, Vec::new()))
            .collect()
    }

    fn initial_experiments(&self) -> Vec<SortedExperiment> {
        (0..self.alphabet.sort_count()).map(SortedExperiment::empty).collect()
    }

    fn successors(&self, s: &SortedWord) -> Vec<SortedWord> {
        self.alphabet
            .letters_from(self.end_sort(s))
            .map(|a| s.append(a))
            .collect()
    }

    fn prepend_letters(&self, t: &SortedExperiment) -> Vec<SortedExperiment> {
        (0..self.alphabet.letter_count())
            .filter(|&a| self.alphabet.letter(a).to == t.start)
            .map(|a| {
                let mut letters = vec![a];
                letters.extend_from_slice(&t.letters);
                SortedExperiment {
                    start: self.alphabet.letter(a).from,
                    letters,
                }
            })
            .collect()
    }

    fn join(&self, s: &SortedWord, t: &SortedExperiment) -> Option<SortedWord> {
        if self.end_sort(s) != t.start {
            return None;
        }
        let mut letters = s.letters.clone();
        letters.extend_from_slice(&t.letters);
        Some(SortedWord::new(s.generator, letters))
    }

    fn access_query(&self, s: &SortedWord) -> SortedWord {
        s.clone()
    }

    fn covered(&self, table: &ObservationTable<Self>, extra: &[SortedWord], candidate: &SortedWord) -> bool {
        let row = table.row(candidate);
        table.access().iter().chain(extra).any(|s| table.row(s) == row)
    }

    fn inconsistencies(&self, table: &ObservationTable<Self>) -> Vec<SortedInconsistency> {
        let ext = table.extended_experiments();
        let mut groups: Vec<Vec<&SortedWord>> = Vec::new();
        let mut index: HashMap<Row, usize> = HashMap::new();
        for s in table.access() {
            let g = *index.entry(table.row(s)).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(s);
        }
        let mut out = Vec::new();
        for group in &groups {
            let ext_rows: Vec<Row> = group.iter().map(|s| table.row_over(s, &ext)).collect();
            for i in 0..group.len() {
                for j in i + 1..group.len() {
                    if let Some(k) = (0..ext.len()).find(|&k| ext_rows[i][k] != ext_rows[j][k]) {
                        out.push(SortedInconsistency {
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

    fn witness<'d>(&self, d: &'d SortedInconsistency) -> &'d SortedExperiment {
        &d.witness
    }

    fn separates(&self, table: &ObservationTable<Self>, d: &SortedInconsistency, column: &SortedExperiment) -> bool {
        table.value(&d.first, column) != table.value(&d.second, column)
    }

    fn hypothesis(&self, table: &ObservationTable<Self>) -> Result<SortedMachine> {
        let mut state_of: HashMap<Row, usize> = HashMap::new();
        let mut reps: Vec<&SortedWord> = Vec::new();
        for s in table.access() {
            state_of.entry(table.row(s)).or_insert_with(|| {
                reps.push(s);
                reps.len() - 1
            });
        }
        let lookup = |w: &SortedWord| -> Result<usize> {
            state_of
                .get(&table.row(w))
                .copied()
                .ok_or_else(|| Error::InternalConsistency(format!("row of {w:?} has no state")))
        };
        let state_sort: Vec<usize> = reps.iter().map(|s| self.end_sort(s)).collect();
        let mut transitions = vec![vec![None; self.alphabet.letter_count()]; reps.len()];
        for s in table.access() {
            let q = lookup(s)?;
            if state_sort[q] != self.end_sort(s) {
                return Err(Error::InternalConsistency(format!(
                    "rows of different sorts compared at {s:?}"
                )));
            }
            for a in self.alphabet.letters_from(state_sort[q]) {
                let t = lookup(&s.append(a))?;
                match transitions[q][a] {
                    None => transitions[q][a] = Some(t),
                    Some(prev) if prev != t => {
                        return Err(Error::InternalConsistency(format!(
                            "access words of state {q} disagree on letter {:?}",
                            self.alphabet.letter(a).name
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let initial = self
            .initial_access()
            .iter()
            .map(&lookup)
            .collect::<Result<Vec<_>>>()?;
        let output = reps
            .iter()
            .zip(&state_sort)
            .map(|(s, &sort)| {
                *table
                    .value(s, &SortedExperiment::empty(sort))
                    .expect("empty experiment of the own sort")
            })
            .collect();
        SortedMachine::new(self.alphabet.clone(), state_sort, initial, transitions, output)
    }

    fn probe<'h>(&self, h: &'h SortedMachine) -> &'h SortedMachine {
        h
    }

    fn evaluate(&self, probe: &SortedMachine, q: &SortedWord) -> Result<bool> {
        probe.accepts(q)
    }

    fn is_minimal(&self, h: &SortedMachine) -> bool {
        h.minimize().is_isomorphic(h)
    }

    fn prefixes(&self, ce: &SortedWord) -> Result<Vec<SortedWord>> {
        self.alphabet.end_sort(ce)?;
        Ok(ce.prefixes())
    }

    fn suffixes(&self, ce: &SortedWord) -> Result<Vec<SortedExperiment>> {
        let end = self.alphabet.end_sort(ce)?;
        let n = ce.letters.len();
        Ok((0..=n)
            .rev()
            .map(|i| SortedExperiment {
                start: if i == n {
                    end
                } else {
                    self.alphabet.letter(ce.letters[i]).from
                },
                letters: ce.letters[i..].to_vec(),
            })
            .collect())
    }
}
