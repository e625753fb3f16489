//! Oracles answering membership and equivalence queries.

pub mod builtin;
pub mod lasso;

pub use lasso::{wilke_teacher, LassoOracleTarget, LinearizedTeacher, WilkeTeacher};

use crate::alphabet::{Alphabet, Word};
use crate::automata::{MooreMachine, SortedMachine, SortedWord, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Minimally adequate teacher. Implementations are deterministic: repeated
/// queries get repeated answers.
pub trait Teacher {
    type Word;
    type Output;
    type Hypothesis: ?Sized;

    fn membership(&self, word: &Self::Word) -> Result<Self::Output>;
    /// `None` accepts the hypothesis; otherwise a word on which it is wrong.
    fn equivalence(&self, hypothesis: &Self::Hypothesis) -> Result<Option<Self::Word>>;
}

impl<T: Teacher + ?Sized> Teacher for &T {
    type Word = T::Word;
    type Output = T::Output;
    type Hypothesis = T::Hypothesis;

    fn membership(&self, word: &Self::Word) -> Result<Self::Output> {
        (**self).membership(word)
    }

    fn equivalence(&self, hypothesis: &Self::Hypothesis) -> Result<Option<Self::Word>> {
        (**self).equivalence(hypothesis)
    }
}

/// Teacher backed by a DFA; counterexamples are shortlex-least.
#[derive(Debug, Clone)]
pub struct DfaTeacher {
    target: MooreMachine,
}

impl DfaTeacher {
    pub fn new(target: MooreMachine) -> Self {
        DfaTeacher { target }
    }

    pub fn target(&self) -> &MooreMachine {
        &self.target
    }
}

pub fn dfa_teacher(target: MooreMachine) -> DfaTeacher {
    DfaTeacher::new(target)
}

impl Teacher for DfaTeacher {
    type Word = Word;
    type Output = bool;
    type Hypothesis = MooreMachine;

    fn membership(&self, word: &Word) -> Result<bool> {
        self.target.accepts(word)
    }

    fn equivalence(&self, hypothesis: &MooreMachine) -> Result<Option<Word>> {
        self.target.distinguish(hypothesis)
    }
}

/// Teacher backed by a weighted automaton.
#[derive(Debug, Clone)]
pub struct WfaTeacher {
    target: WeightedAutomaton,
}

impl WfaTeacher {
    pub fn new(target: WeightedAutomaton) -> Self {
        WfaTeacher { target }
    }

    pub fn target(&self) -> &WeightedAutomaton {
        &self.target
    }
}

pub fn wfa_teacher(target: WeightedAutomaton) -> WfaTeacher {
    WfaTeacher::new(target)
}

impl Teacher for WfaTeacher {
    type Word = Word;
    type Output = Rational;
    type Hypothesis = WeightedAutomaton;

    fn membership(&self, word: &Word) -> Result<Rational> {
        self.target.value(word)
    }

    fn equivalence(&self, hypothesis: &WeightedAutomaton) -> Result<Option<Word>> {
        self.target.distinguish(hypothesis)
    }
}

/// Teacher backed by a sorted machine.
#[derive(Debug, Clone)]
pub struct SortedTeacher {
    target: SortedMachine,
}

impl SortedTeacher {
    pub fn new(target: SortedMachine) -> Self {
        SortedTeacher { target }
    }

    pub fn target(&self) -> &SortedMachine {
        &self.target
    }
}

pub fn sorted_teacher(target: SortedMachine) -> SortedTeacher {
    SortedTeacher::new(target)
}

impl Teacher for SortedTeacher {
    type Word = SortedWord;
    type Output = bool;
    type Hypothesis = SortedMachine;

    fn membership(&self, word: &SortedWord) -> Result<bool> {
        self.target.accepts(word)
    }

    fn equivalence(&self, hypothesis: &SortedMachine) -> Result<Option<SortedWord>> {
        self.target.distinguish(hypothesis)
    }
}

/// Teacher for a language given only as a predicate. Equivalence queries are
/// answered by enumerating every word up to `max_len` in shortlex order, so
/// the answer is exact whenever the shortest difference is that short.
pub struct PredicateTeacher<F> {
    alphabet: Alphabet,
    predicate: F,
    max_len: usize,
}

impl<F: Fn(&[usize]) -> bool> PredicateTeacher<F> {
    pub fn new(alphabet: Alphabet, max_len: usize, predicate: F) -> Self {
        PredicateTeacher {
            alphabet,
            predicate,
            max_len,
        }
    }
}

impl<F: Fn(&[usize]) -> bool> Teacher for PredicateTeacher<F> {
    type Word = Word;
    type Output = bool;
    type Hypothesis = MooreMachine;

    fn membership(&self, word: &Word) -> Result<bool> {
        for &a in word.iter() {
            self.alphabet.check(a)?;
        }
        Ok((self.predicate)(word))
    }

    fn equivalence(&self, hypothesis: &MooreMachine) -> Result<Option<Word>> {
        if hypothesis.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                hypothesis.alphabet().names(),
                self.alphabet.names()
            )));
        }
        for w in self.alphabet.words_up_to(self.max_len) {
            if hypothesis.accepts(&w)? != (self.predicate)(&w) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}
