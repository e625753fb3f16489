use std::collections::{HashMap, HashSet};
use std::fmt::{Debug, Write as _};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::teacher::Teacher;

/// What a concrete category of automata has to supply so the generic loop can
/// run on it: how words and experiments compose, when a row is represented by
/// the current access words, how inconsistencies are witnessed, and how a
/// hypothesis is assembled from a closed and consistent table.
pub trait TableDomain: Sized {
    /// Element of S.
    type Access: Clone + Ord + Hash + Debug;
    /// Element of T.
    type Experiment: Clone + Ord + Hash + Debug;
    /// A word handed to the teacher.
    type Query: Clone + Eq + Hash + Debug;
    type Value: Clone + Eq + Hash + Debug;
    type Hypothesis;
    /// What the teacher sees of a hypothesis.
    type Probe;
    type Inconsistency: Debug;

    fn initial_access(&self) -> Vec<Self::Access>;
    fn initial_experiments(&self) -> Vec<Self::Experiment>;
    /// One-letter extensions `s·a` of an access word.
    fn successors(&self, s: &Self::Access) -> Vec<Self::Access>;
    /// One-letter extensions `a·t` of an experiment.
    fn prepend_letters(&self, t: &Self::Experiment) -> Vec<Self::Experiment>;
    /// `s·t`, or `None` when the two do not compose.
    fn join(&self, s: &Self::Access, t: &Self::Experiment) -> Option<Self::Query>;
    /// The query whose answer is the output at `s` itself.
    fn access_query(&self, s: &Self::Access) -> Self::Query;

    /// Whether the row of `candidate` is represented by the rows of S together
    /// with `extra`.
    fn covered(
        &self,
        table: &ObservationTable<Self>,
        extra: &[Self::Access],
        candidate: &Self::Access,
    ) -> bool;
    fn inconsistencies(&self, table: &ObservationTable<Self>) -> Vec<Self::Inconsistency>;
    /// The least experiment `a·t` exposing the inconsistency.
    fn witness<'d>(&self, d: &'d Self::Inconsistency) -> &'d Self::Experiment;
    /// Whether `column` (already filled on S) resolves the inconsistency.
    fn separates(
        &self,
        table: &ObservationTable<Self>,
        d: &Self::Inconsistency,
        column: &Self::Experiment,
    ) -> bool;

    fn hypothesis(&self, table: &ObservationTable<Self>) -> Result<Self::Hypothesis>;
    fn probe<'h>(&self, h: &'h Self::Hypothesis) -> &'h Self::Probe;
    fn evaluate(&self, probe: &Self::Probe, q: &Self::Query) -> Result<Self::Value>;
    fn is_minimal(&self, h: &Self::Hypothesis) -> bool;

    fn prefixes(&self, ce: &Self::Query) -> Result<Vec<Self::Access>>;
    fn suffixes(&self, ce: &Self::Query) -> Result<Vec<Self::Experiment>>;

    /// Successor words whose rows are not represented, least first.
    fn closedness_defects(&self, table: &ObservationTable<Self>) -> Vec<Self::Access> {
        table
            .extended_access()
            .into_iter()
            .filter(|c| !self.covered(table, &[], c))
            .collect()
    }
}

/// The pair (S, T) with its cache of membership answers.
pub struct ObservationTable<D: TableDomain> {
    domain: D,
    access: Vec<D::Access>,
    access_set: HashSet<D::Access>,
    experiments: Vec<D::Experiment>,
    experiment_set: HashSet<D::Experiment>,
    cache: HashMap<D::Query, D::Value>,
    membership_queries: usize,
}

impl<D: TableDomain> ObservationTable<D> {
    pub fn new(domain: D) -> Self {
        let mut table = ObservationTable {
            access: Vec::new(),
            access_set: HashSet::new(),
            experiments: Vec::new(),
            experiment_set: HashSet::new(),
            cache: HashMap::new(),
            membership_queries: 0,
            domain,
        };
        for s in table.domain.initial_access() {
            table.add_access(s);
        }
        for t in table.domain.initial_experiments() {
            table.add_experiment(t);
        }
        table
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    /// S in insertion order.
    pub fn access(&self) -> &[D::Access] {
        &self.access
    }

    /// T in insertion order.
    pub fn experiments(&self) -> &[D::Experiment] {
        &self.experiments
    }

    pub fn contains_access(&self, s: &D::Access) -> bool {
        self.access_set.contains(s)
    }

    pub fn contains_experiment(&self, t: &D::Experiment) -> bool {
        self.experiment_set.contains(t)
    }

    pub fn add_access(&mut self, s: D::Access) -> bool {
        if self.access_set.insert(s.clone()) {
            self.access.push(s);
            true
        } else {
            false
        }
    }

    pub fn add_experiment(&mut self, t: D::Experiment) -> bool {
        if self.experiment_set.insert(t.clone()) {
            self.experiments.push(t);
            true
        } else {
            false
        }
    }

    /// `SΣ \ S`, least first.
    pub fn extended_access(&self) -> Vec<D::Access> {
        let mut out: Vec<D::Access> = self
            .access
            .iter()
            .flat_map(|s| self.domain.successors(s))
            .filter(|x| !self.contains_access(x))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `ΣT \ T`, least first.
    pub fn extended_experiments(&self) -> Vec<D::Experiment> {
        let mut out: Vec<D::Experiment> = self
            .experiments
            .iter()
            .flat_map(|t| self.domain.prepend_letters(t))
            .filter(|x| !self.contains_experiment(x))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `T` followed by `ΣT \ T`: the columns of extended rows.
    pub fn all_experiments(&self) -> Vec<D::Experiment> {
        let mut cols = self.experiments.clone();
        cols.extend(self.extended_experiments());
        cols
    }

    pub fn membership_queries(&self) -> usize {
        self.membership_queries
    }

    /// Asks the teacher for every missing cell of `(S ∪ SΣ) × (T ∪ ΣT)`.
    /// `budget` caps the total number of membership queries asked so far.
    pub fn fill<Tch>(&mut self, teacher: &Tch, budget: Option<usize>) -> Result<()>
    where
        Tch: Teacher<Word = D::Query, Output = D::Value> + ?Sized,
    {
        let mut rows = self.access.clone();
        rows.extend(self.extended_access());
        let cols = self.all_experiments();
        for s in &rows {
            for t in &cols {
                let Some(q) = self.domain.join(s, t) else {
                    continue;
                };
                if self.cache.contains_key(&q) {
                    continue;
                }
                if budget.is_some_and(|b| self.membership_queries >= b) {
                    return Err(Error::BudgetExceeded(format!(
                        "membership query budget of {} exhausted",
                        budget.unwrap_or_default()
                    )));
                }
                let v = teacher.membership(&q)?;
                self.membership_queries += 1;
                self.cache.insert(q, v);
            }
        }
        Ok(())
    }

    /// Cached answer for `s·t`; `None` when the two do not compose.
    ///
    /// Panics if the cell was never filled.
    pub fn value(&self, s: &D::Access, t: &D::Experiment) -> Option<&D::Value> {
        let q = self.domain.join(s, t)?;
        Some(
            self.cache
                .get(&q)
                .unwrap_or_else(|| panic!("cell {s:?}·{t:?} read before the table was filled")),
        )
    }

    pub fn cached(&self, q: &D::Query) -> Option<&D::Value> {
        self.cache.get(q)
    }

    /// Row over the given columns.
    pub fn row_over(&self, s: &D::Access, cols: &[D::Experiment]) -> Vec<Option<D::Value>> {
        cols.iter().map(|t| self.value(s, t).cloned()).collect()
    }

    /// Row over T.
    pub fn row(&self, s: &D::Access) -> Vec<Option<D::Value>> {
        self.row_over(s, &self.experiments)
    }

    pub fn is_closed(&self) -> bool {
        self.domain.closedness_defects(self).is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.domain.inconsistencies(self).is_empty()
    }

    /// Number of distinct rows over T among S.
    pub fn row_classes(&self) -> usize {
        self.access.iter().map(|s| self.row(s)).collect::<HashSet<_>>().len()
    }

    /// Number of distinct columns of T restricted to S.
    pub fn column_classes(&self) -> usize {
        self.experiments
            .iter()
            .map(|t| {
                self.access
                    .iter()
                    .map(|s| self.value(s, t).cloned())
                    .collect::<Vec<_>>()
            })
            .collect::<HashSet<_>>()
            .len()
    }

    /// Text rendering of S, T and every filled cell in table order. Two tables
    /// with the same snapshot hold the same observations.
    pub fn snapshot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "S = {:?}", self.access);
        let _ = writeln!(out, "T = {:?}", self.experiments);
        let mut rows = self.access.clone();
        rows.extend(self.extended_access());
        let cols = self.all_experiments();
        for s in &rows {
            let cells: Vec<String> = cols
                .iter()
                .map(|t| match self.domain.join(s, t) {
                    None => "-".to_string(),
                    Some(q) => match self.cache.get(&q) {
                        Some(v) => format!("{v:?}"),
                        None => "?".to_string(),
                    },
                })
                .collect();
            let _ = writeln!(out, "{s:?}: {}", cells.join(" "));
        }
        out
    }
}

impl<D: TableDomain + Clone> Clone for ObservationTable<D> {
    fn clone(&self) -> Self {
        ObservationTable {
            domain: self.domain.clone(),
            access: self.access.clone(),
            access_set: self.access_set.clone(),
            experiments: self.experiments.clone(),
            experiment_set: self.experiment_set.clone(),
            cache: self.cache.clone(),
            membership_queries: self.membership_queries,
        }
    }
}

impl<D: TableDomain> Debug for ObservationTable<D> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.snapshot())
    }
}
