//! Concrete machine types shared by every learning domain.

pub mod json;
pub mod moore;
pub mod sorted;
pub mod weighted;

pub use json::{parse_automaton, AutomatonFile};
pub use moore::{minimize_moore, moore_distinguish, run_moore, MooreMachine};
pub use sorted::{
    minimize_sorted, run_sorted, sorted_distinguish, Generator, Sort, SortedAlphabet,
    SortedExperiment, SortedLetter, SortedMachine, SortedWord,
};
pub use weighted::{wfa_distinguish, wfa_value, WeightedAutomaton};
