//! Concrete instances of the table contract.

pub mod boolean;
pub mod jsl;
pub mod sorted;
pub mod weighted;

pub use boolean::{
    bool_closedness_defects, bool_consistency_defects, bool_hypothesis, bool_row, BoolDomain, BoolInconsistency,
};
pub use jsl::{
    jsl_closedness_defects, jsl_consistency_defects, jsl_hypothesis, rfsa_language_equiv, JslDomain, JslHypothesis,
    JslInconsistency, Rfsa,
};
pub use sorted::{
    sorted_closedness_defects, sorted_consistency_defects, sorted_hypothesis, sorted_row, SortedDomain,
    SortedInconsistency,
};
pub use weighted::{
    weighted_closedness_defects, weighted_consistency_defects, weighted_hypothesis, weighted_row, WeightedDomain,
    WeightedInconsistency,
};
