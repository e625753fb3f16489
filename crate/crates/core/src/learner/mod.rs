//! The generic observation-table learner.

pub mod lstar;
pub mod table;

pub use lstar::{
    build_hypothesis, extend_s, extend_t, learn, process_counterexample, CounterexampleMode,
    HypothesisCheck, LearnStats, Learned, LearnerConfig, Trace,
};
pub use table::{ObservationTable, TableDomain};
