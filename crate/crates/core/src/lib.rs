pub mod algebra;
pub mod alphabet;
pub mod automata;
pub mod domain;
pub mod error;
pub mod learner;
pub mod linalg;
pub mod teacher;

pub use alphabet::{Alphabet, Letter, Word};
pub use error::{Error, Result};
