use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::learner::table::{ObservationTable, TableDomain};
use crate::teacher::Teacher;

/// Where counterexample words go: their prefixes into S, or their suffixes
/// into T (the Maler–Pnueli variant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CounterexampleMode {
    Prefix,
    Suffix,
}

impl std::str::FromStr for CounterexampleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prefix" => Ok(CounterexampleMode::Prefix),
            "suffix" => Ok(CounterexampleMode::Suffix),
            _ => Err(Error::Parse(format!("unknown mode {s:?}, expected prefix or suffix"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnStats {
    pub membership_queries: usize,
    pub equivalence_queries: usize,
    pub extend_s_calls: usize,
    pub extend_t_calls: usize,
    pub counterexamples: usize,
    pub rounds: usize,
}

impl LearnStats {
    /// Extension and counterexample events, the quantity bounded by the
    /// height of the target.
    pub fn height_events(&self) -> usize {
        self.extend_s_calls + self.extend_t_calls + self.counterexamples
    }
}

#[derive(Debug, Clone)]
pub struct LearnerConfig {
    pub mode: CounterexampleMode,
    /// Cap on membership queries.
    pub budget: Option<usize>,
    /// Cap on loop passes.
    pub max_rounds: usize,
    /// Fail with [`Error::InvariantViolated`] as soon as a runtime check fails,
    /// instead of only recording it.
    pub strict: bool,
}

impl LearnerConfig {
    pub fn new(mode: CounterexampleMode) -> Self {
        LearnerConfig {
            mode,
            budget: None,
            max_rounds: 10_000,
            strict: true,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_max_rounds(mut self, rounds: usize) -> Self {
        self.max_rounds = rounds;
        self
    }

    pub fn lenient(mut self) -> Self {
        self.strict = false;
        self
    }
}

/// Runtime checks recorded for one hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub minimal: bool,
    pub agrees_on_access: bool,
}

/// Everything observed during one run.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub hypotheses: Vec<HypothesisCheck>,
    /// For each counterexample: whether the refilled table was not closed or
    /// not consistent.
    pub counterexample_progress: Vec<bool>,
    /// Number of inconsistencies seen each time consistency was tested.
    pub inconsistency_counts: Vec<usize>,
    /// Extensions that failed to grow the row (extend S) or column (extend T)
    /// class count.
    pub stalled_extensions: usize,
}

impl Trace {
    pub fn violations(&self) -> usize {
        self.hypotheses
            .iter()
            .filter(|h| !h.minimal || !h.agrees_on_access)
            .count()
            + self.counterexample_progress.iter().filter(|&&p| !p).count()
            + self.stalled_extensions
    }
}

pub struct Learned<D: TableDomain> {
    pub hypothesis: D::Hypothesis,
    pub stats: LearnStats,
    pub table: ObservationTable<D>,
    pub trace: Trace,
}

fn violation(strict: bool, what: String) -> Result<()> {
    if strict {
        Err(Error::InvariantViolated(what))
    } else {
        Ok(())
    }
}

/// Adds a batch of closedness defects to S: each defect in order, skipping one
/// whose row is represented by the words already added in this call.
pub fn extend_s<D: TableDomain>(table: &mut ObservationTable<D>) -> Result<Vec<D::Access>> {
    let defects = table.domain().closedness_defects(table);
    if defects.is_empty() {
        return Err(Error::ContractViolation("extend S called on a closed table".into()));
    }
    let mut added: Vec<D::Access> = Vec::new();
    for c in defects {
        if !table.domain().covered(table, &added, &c) {
            added.push(c);
        }
    }
    for s in &added {
        table.add_access(s.clone());
    }
    Ok(added)
}

/// Adds a batch of inconsistency witnesses to T: each in witness order,
/// skipping one already resolved by a column added in this call.
pub fn extend_t<D: TableDomain>(table: &mut ObservationTable<D>) -> Result<Vec<D::Experiment>> {
    let domain = table.domain();
    let mut defects = domain.inconsistencies(table);
    if defects.is_empty() {
        return Err(Error::ContractViolation("extend T called on a consistent table".into()));
    }
    defects.sort_by(|x, y| domain.witness(x).cmp(domain.witness(y)));
    let mut added: Vec<D::Experiment> = Vec::new();
    for d in &defects {
        if !added.iter().any(|c| domain.separates(table, d, c)) {
            let w = domain.witness(d).clone();
            if !added.contains(&w) {
                added.push(w);
            }
        }
    }
    for t in &added {
        table.add_experiment(t.clone());
    }
    Ok(added)
}

/// Joins the prefixes of `ce` into S, or its suffixes into T.
pub fn process_counterexample<D: TableDomain>(
    table: &mut ObservationTable<D>,
    ce: &D::Query,
    mode: CounterexampleMode,
) -> Result<()> {
    match mode {
        CounterexampleMode::Prefix => {
            for p in table.domain().prefixes(ce)? {
                table.add_access(p);
            }
        }
        CounterexampleMode::Suffix => {
            for t in table.domain().suffixes(ce)? {
                table.add_experiment(t);
            }
        }
    }
    Ok(())
}

/// Assembles the hypothesis of a closed and consistent table.
pub fn build_hypothesis<D: TableDomain>(table: &ObservationTable<D>) -> Result<D::Hypothesis> {
    if !table.is_closed() || !table.is_consistent() {
        return Err(Error::ContractViolation(
            "hypothesis requested from a table that is not closed and consistent".into(),
        ));
    }
    table.domain().hypothesis(table)
}

fn check_hypothesis<D: TableDomain>(
    table: &ObservationTable<D>,
    h: &D::Hypothesis,
) -> Result<HypothesisCheck> {
    let domain = table.domain();
    let probe = domain.probe(h);
    let mut agrees = true;
    for s in table.access() {
        let q = domain.access_query(s);
        let expected = table
            .cached(&q)
            .ok_or_else(|| Error::InternalConsistency(format!("no answer cached for {q:?}")))?;
        if domain.evaluate(probe, &q)? != *expected {
            agrees = false;
        }
    }
    Ok(HypothesisCheck {
        minimal: domain.is_minimal(h),
        agrees_on_access: agrees,
    })
}

/// Runs the generalized L* loop until the teacher accepts a hypothesis.
pub fn learn<D, T>(domain: D, teacher: &T, config: &LearnerConfig) -> Result<Learned<D>>
where
    D: TableDomain,
    T: Teacher<Word = D::Query, Output = D::Value, Hypothesis = D::Probe> + ?Sized,
{
    let mut table = ObservationTable::new(domain);
    let mut stats = LearnStats::default();
    let mut trace = Trace::default();
    loop {
        stats.rounds += 1;
        if stats.rounds > config.max_rounds {
            return Err(Error::BudgetExceeded(format!(
                "no hypothesis accepted within {} rounds",
                config.max_rounds
            )));
        }
        table.fill(teacher, config.budget)?;
        stats.membership_queries = table.membership_queries();

        if !table.is_closed() {
            let before = table.row_classes();
            extend_s(&mut table)?;
            stats.extend_s_calls += 1;
            table.fill(teacher, config.budget)?;
            if table.row_classes() <= before {
                trace.stalled_extensions += 1;
                violation(config.strict, "extend S did not add a row class".into())?;
            }
            continue;
        }

        let inconsistencies = table.domain().inconsistencies(&table).len();
        trace.inconsistency_counts.push(inconsistencies);
        if inconsistencies > 0 {
            let before = table.column_classes();
            extend_t(&mut table)?;
            stats.extend_t_calls += 1;
            table.fill(teacher, config.budget)?;
            if table.column_classes() <= before {
                trace.stalled_extensions += 1;
                violation(config.strict, "extend T did not add a column class".into())?;
            }
            continue;
        }

        let h = table.domain().hypothesis(&table)?;
        let check = check_hypothesis(&table, &h)?;
        trace.hypotheses.push(check.clone());
        if !check.minimal {
            violation(config.strict, "hypothesis is not minimal".into())?;
        }
        if !check.agrees_on_access {
            violation(config.strict, "hypothesis disagrees with the table on S".into())?;
        }

        stats.equivalence_queries += 1;
        let probe = table.domain().probe(&h);
        let Some(ce) = teacher.equivalence(probe)? else {
            stats.membership_queries = table.membership_queries();
            return Ok(Learned {
                hypothesis: h,
                stats,
                table,
                trace,
            });
        };
        if table.domain().evaluate(probe, &ce)? == teacher.membership(&ce)? {
            return Err(Error::TeacherBug(format!(
                "counterexample {ce:?} does not separate the hypothesis from the target"
            )));
        }
        stats.counterexamples += 1;
        process_counterexample(&mut table, &ce, config.mode)?;
        table.fill(teacher, config.budget)?;
        let progressed = !table.is_closed() || !table.is_consistent();
        trace.counterexample_progress.push(progressed);
        if !progressed {
            violation(
                config.strict,
                format!("table closed and consistent after counterexample {ce:?}"),
            )?;
        }
    }
}
