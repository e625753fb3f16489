//! Learning rational-weighted automata: rows are vectors, a row is represented
//! when it lies in the span of the rows of S.

use num::Zero;

use crate::alphabet::{Alphabet, Word};
use crate::automata::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::learner::{CounterexampleMode, ObservationTable, TableDomain};
use crate::linalg::{self, Rational, SpanBasis};
use crate::teacher::Teacher;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDomain {
    alphabet: Alphabet,
}

impl WeightedDomain {
    pub fn new(alphabet: Alphabet) -> Self {
        WeightedDomain { alphabet }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Suffix mode keeps the rows of S independent.
    pub fn default_mode() -> CounterexampleMode {
        CounterexampleMode::Suffix
    }
}

/// A linear dependency among the rows of S (coefficients in S order) that
/// fails to hold at `witness`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInconsistency {
    pub coefficients: Vec<Rational>,
    pub witness: Word,
}

pub fn weighted_row<T>(w: &Word, experiments: &[Word], teacher: &T) -> Result<Vec<Rational>>
where
    T: Teacher<Word = Word, Output = Rational> + ?Sized,
{
    experiments
        .iter()
        .map(|t| teacher.membership(&w.concat(t)))
        .collect()
}

fn vector(table: &ObservationTable<WeightedDomain>, s: &Word, cols: &[Word]) -> Vec<Rational> {
    cols.iter()
        .map(|t| table.value(s, t).expect("weighted cells always compose").clone())
        .collect()
}

fn combination(table: &ObservationTable<WeightedDomain>, c: &[Rational], column: &Word) -> Rational {
    table
        .access()
        .iter()
        .zip(c)
        .filter(|(_, x)| !x.is_zero())
        .fold(Rational::zero(), |acc, (s, x)| {
            acc + x * table.value(s, column).expect("weighted cells always compose")
        })
}

pub fn weighted_closedness_defects(table: &ObservationTable<WeightedDomain>) -> Vec<Word> {
    table.domain().closedness_defects(table)
}

pub fn weighted_consistency_defects(
    table: &ObservationTable<WeightedDomain>,
) -> Vec<WeightedInconsistency> {
    table.domain().inconsistencies(table)
}

pub fn weighted_hypothesis(table: &ObservationTable<WeightedDomain>) -> Result<WeightedAutomaton> {
    table.domain().hypothesis(table)
}

impl TableDomain for WeightedDomain {
    type Access = Word;
    type Experiment = Word;
    type Query = Word;
    type Value = Rational;
    type Hypothesis = WeightedAutomaton;
    type Probe = WeightedAutomaton;
    type Inconsistency = WeightedInconsistency;

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
        let mut span = SpanBasis::new();
        for s in table.access().iter().chain(extra) {
            span.insert(&vector(table, s, cols));
        }
        span.contains(&vector(table, candidate, cols))
    }

    fn inconsistencies(&self, table: &ObservationTable<Self>) -> Vec<WeightedInconsistency> {
        let cols = table.experiments();
        let rows: Vec<Vec<Rational>> = table.access().iter().map(|s| vector(table, s, cols)).collect();
        let ext = table.extended_experiments();
        linalg::left_nullspace(&rows)
            .into_iter()
            .filter_map(|c| {
                let k = ext.iter().position(|t| !combination(table, &c, t).is_zero())?;
                Some(WeightedInconsistency {
                    coefficients: c,
                    witness: ext[k].clone(),
                })
            })
            .collect()
    }

    fn witness<'d>(&self, d: &'d WeightedInconsistency) -> &'d Word {
        &d.witness
    }

    fn separates(&self, table: &ObservationTable<Self>, d: &WeightedInconsistency, column: &Word) -> bool {
        !combination(table, &d.coefficients, column).is_zero()
    }

    fn hypothesis(&self, table: &ObservationTable<Self>) -> Result<WeightedAutomaton> {
        let cols = table.experiments();
        let mut span = SpanBasis::new();
        let mut basis: Vec<&Word> = Vec::new();
        let mut basis_rows: Vec<Vec<Rational>> = Vec::new();
        for s in table.access() {
            let row = vector(table, s, cols);
            if span.insert(&row) {
                basis.push(s);
                basis_rows.push(row);
            }
        }
        if basis.is_empty() {
            return Ok(WeightedAutomaton::zero(self.alphabet.clone()));
        }
        let coords = |w: &Word| -> Result<Vec<Rational>> {
            linalg::solve_in_span(&basis_rows, &vector(table, w, cols)).ok_or_else(|| {
                Error::InternalConsistency(format!("row of {w:?} is outside the span of S"))
            })
        };
        let initial = coords(&Word::empty())?;
        let matrices = self
            .alphabet
            .letters()
            .map(|a| basis.iter().map(|b| coords(&b.append(a))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let final_weights = basis
            .iter()
            .map(|b| table.value(b, &Word::empty()).expect("ε column").clone())
            .collect();
        WeightedAutomaton::new(self.alphabet.clone(), initial, matrices, final_weights)
    }

    fn probe<'h>(&self, h: &'h WeightedAutomaton) -> &'h WeightedAutomaton {
        h
    }

    fn evaluate(&self, probe: &WeightedAutomaton, q: &Word) -> Result<Rational> {
        probe.value(q)
    }

    fn is_minimal(&self, h: &WeightedAutomaton) -> bool {
        h.is_minimal()
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
