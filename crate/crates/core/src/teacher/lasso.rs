//! Teachers for linearized languages: semigroup languages over the
//! append/prepend presentation, and ω-languages over the weak Wilke
//! presentation, answered through lassos.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    interpret_semigroup_word, interpret_wilke_word, lasso_eq, FreeValue, Instruction, Lasso, SemigroupAlphabet,
    WilkeWeakAlphabet, OMEGA, PLUS,
};
use crate::alphabet::{Letter, Word};
use crate::automata::{MooreMachine, SortedAlphabet, SortedMachine, SortedWord};
use crate::error::{Error, Result};
use crate::teacher::Teacher;

type Map = Vec<usize>;

fn letter_map(dfa: &MooreMachine, a: Letter) -> Map {
    (0..dfa.state_count()).map(|q| dfa.successor(q, a)).collect()
}

/// `x` then `y`.
fn then(x: &Map, y: &Map) -> Map {
    x.iter().map(|&q| y[q]).collect()
}

/// Explores a deterministic sorted machine whose states are values of type
/// `K`, numbering states in discovery order.
fn explore<K: Clone + Eq + Hash>(
    alpha: &SortedAlphabet,
    sort_of: impl Fn(&K) -> usize,
    generators: Vec<K>,
    step: impl Fn(&K, Letter) -> K,
    output: impl Fn(&K) -> bool,
) -> Result<SortedMachine> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut keys: Vec<K> = Vec::new();
    let mut intern = |k: K, keys: &mut Vec<K>| -> usize {
        *index.entry(k.clone()).or_insert_with(|| {
            keys.push(k);
            keys.len() - 1
        })
    };
    let initial: Vec<usize> = generators.into_iter().map(|k| intern(k, &mut keys)).collect();
    let mut transitions: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let k = keys[i].clone();
        let mut row = vec![None; alpha.letter_count()];
        for a in alpha.letters_from(sort_of(&k)) {
            row[a] = Some(intern(step(&k, a), &mut keys));
        }
        transitions.push(row);
        i += 1;
    }
    let state_sort = keys.iter().map(&sort_of).collect();
    let out = keys.iter().map(&output).collect();
    Ok(SortedMachine::new(alpha.clone(), state_sort, initial, transitions, out)?.minimize())
}

/// Minimal machine of the linearization of the language of `dfa` (read as a
/// subset of `I^+`), built on the transition semigroup of `dfa`.
pub fn semigroup_reference(alpha: &SemigroupAlphabet, dfa: &MooreMachine) -> Result<SortedMachine> {
    if dfa.alphabet() != alpha.base() {
        return Err(Error::AlphabetMismatch("language and presentation use different alphabets".into()));
    }
    let generators = alpha.base().letters().map(|a| letter_map(dfa, a)).collect();
    explore(
        alpha.sorted(),
        |_| 0,
        generators,
        |f, l| match alpha.instruction(l) {
            Instruction::Append(b) => then(f, &letter_map(dfa, b)),
            Instruction::Prepend(b) => then(&letter_map(dfa, b), f),
            _ => unreachable!("semigroup letters append or prepend"),
        },
        |f| *dfa.output(f[dfa.initial()]),
    )
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum OmegaKey {
    Plus(Map),
    Omega(Map, Map),
}

/// Minimal machine over the weak Wilke presentation for the ω-language whose
/// lassos `x·y^ω` are accepted iff `accept(map(x), map(y))`, where `map` is
/// the state transformation of `monitor` (the identity for empty `x`). With
/// `finite` set, `+`-sort states accept when the monitor accepts the word.
pub fn omega_reference(
    alpha: &WilkeWeakAlphabet,
    monitor: &MooreMachine,
    finite: bool,
    accept: impl Fn(&[usize], &[usize]) -> bool,
) -> Result<SortedMachine> {
    if monitor.alphabet() != alpha.base() {
        return Err(Error::AlphabetMismatch("monitor and presentation use different alphabets".into()));
    }
    let identity: Map = (0..monitor.state_count()).collect();
    let generators = alpha.base().letters().map(|a| OmegaKey::Plus(letter_map(monitor, a))).collect();
    explore(
        alpha.sorted(),
        |k| match k {
            OmegaKey::Plus(_) => PLUS,
            OmegaKey::Omega(..) => OMEGA,
        },
        generators,
        |k, l| match (k, alpha.instruction(l)) {
            (OmegaKey::Plus(f), Instruction::Append(b)) => OmegaKey::Plus(then(f, &letter_map(monitor, b))),
            (OmegaKey::Plus(f), Instruction::Omega) => OmegaKey::Omega(identity.clone(), f.clone()),
            (OmegaKey::Omega(x, y), Instruction::PrependOmega(a)) => {
                OmegaKey::Omega(then(&letter_map(monitor, a), x), y.clone())
            }
            _ => unreachable!("letters are applied at their own sort"),
        },
        |k| match k {
            OmegaKey::Plus(f) => finite && *monitor.output(f[monitor.initial()]),
            OmegaKey::Omega(x, y) => accept(x, y),
        },
    )
}

/// Teacher for the linearization of a language `L ⊆ I^+` given by a DFA.
#[derive(Debug, Clone)]
pub struct LinearizedTeacher {
    alphabet: SemigroupAlphabet,
    language: MooreMachine,
    reference: SortedMachine,
}

impl LinearizedTeacher {
    pub fn new(alphabet: SemigroupAlphabet, language: MooreMachine) -> Result<Self> {
        let reference = semigroup_reference(&alphabet, &language)?;
        Ok(LinearizedTeacher {
            alphabet,
            language,
            reference,
        })
    }

    pub fn alphabet(&self) -> &SemigroupAlphabet {
        &self.alphabet
    }

    pub fn language(&self) -> &MooreMachine {
        &self.language
    }

    pub fn reference(&self) -> &SortedMachine {
        &self.reference
    }
}

impl Teacher for LinearizedTeacher {
    type Word = SortedWord;
    type Output = bool;
    type Hypothesis = SortedMachine;

    fn membership(&self, word: &SortedWord) -> Result<bool> {
        self.language.accepts(&interpret_semigroup_word(&self.alphabet, word)?)
    }

    fn equivalence(&self, hypothesis: &SortedMachine) -> Result<Option<SortedWord>> {
        self.reference.distinguish(hypothesis)
    }
}

pub type LassoPredicate = Arc<dyn Fn(&Lasso) -> bool + Send + Sync>;

/// An ω-language given by a lasso predicate for membership and a reference
/// machine over the weak Wilke presentation for equivalence, together with an
/// optional DFA for the finite-word part.
#[derive(Clone)]
pub struct LassoOracleTarget {
    alphabet: WilkeWeakAlphabet,
    finite_part: Option<MooreMachine>,
    predicate: LassoPredicate,
    reference: SortedMachine,
}

impl fmt::Debug for LassoOracleTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LassoOracleTarget")
            .field("alphabet", &self.alphabet)
            .field("finite_part", &self.finite_part)
            .field("reference", &self.reference)
            .finish_non_exhaustive()
    }
}

/// Bound on spoke and cycle lengths in the construction-time cross-check.
pub const VALIDATION_BOUND: usize = 3;
/// Number of random equivalent lasso pairs checked at construction.
pub const VALIDATION_PAIRS: usize = 100;

impl LassoOracleTarget {
    /// Builds the target and cross-checks predicate and reference machine.
    pub fn new(
        alphabet: WilkeWeakAlphabet,
        finite_part: Option<MooreMachine>,
        predicate: impl Fn(&Lasso) -> bool + Send + Sync + 'static,
        reference: SortedMachine,
    ) -> Result<Self> {
        let target = LassoOracleTarget {
            alphabet,
            finite_part,
            predicate: Arc::new(predicate),
            reference,
        };
        target.validate(0)?;
        Ok(target)
    }

    pub fn alphabet(&self) -> &WilkeWeakAlphabet {
        &self.alphabet
    }

    pub fn reference(&self) -> &SortedMachine {
        &self.reference
    }

    pub fn finite_part(&self) -> Option<&MooreMachine> {
        self.finite_part.as_ref()
    }

    pub fn accepts_lasso(&self, l: &Lasso) -> bool {
        (self.predicate)(l)
    }

    pub fn accepts_finite(&self, u: &[Letter]) -> Result<bool> {
        match &self.finite_part {
            Some(m) => m.accepts(u),
            None => Ok(false),
        }
    }

    /// Checks that the reference machine agrees with the predicate on all
    /// lassos and finite words within [`VALIDATION_BOUND`], and that the
    /// predicate does not separate random pairs of equal lassos.
    pub fn validate(&self, seed: u64) -> Result<()> {
        let base = self.alphabet.base();
        if self.reference.alphabet() != self.alphabet.sorted() {
            return Err(Error::InvalidTarget("reference machine is not over the Wilke presentation".into()));
        }
        if let Some(m) = &self.finite_part {
            if m.alphabet() != base {
                return Err(Error::InvalidTarget("finite part uses a different alphabet".into()));
            }
        }
        let words = base.words_up_to(VALIDATION_BOUND);
        for u in words.iter().filter(|u| !u.is_empty()) {
            let expected = self.accepts_finite(u)?;
            if self.reference.accepts(&self.alphabet.finite_word(u)?)? != expected {
                return Err(Error::InvalidTarget(format!("reference disagrees on finite word {u}")));
            }
        }
        for u in &words {
            for v in words.iter().filter(|v| !v.is_empty()) {
                let l = Lasso::new(u.clone(), v.clone())?;
                if self.reference.accepts(&self.alphabet.lasso_word(&l)?)? != self.accepts_lasso(&l) {
                    return Err(Error::InvalidTarget(format!("reference disagrees with the predicate on {l}")));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random_word = |rng: &mut ChaCha8Rng, lo: usize, hi: usize| -> Word {
            let n = rng.gen_range(lo..=hi);
            Word((0..n).map(|_| rng.gen_range(0..base.len())).collect())
        };
        for _ in 0..VALIDATION_PAIRS {
            let u = random_word(&mut rng, 0, 4);
            let v = random_word(&mut rng, 1, 3);
            let unfold = rng.gen_range(0..3);
            let shift = rng.gen_range(0..v.len());
            let reps = rng.gen_range(1..=3);
            let mut spoke = u.0.clone();
            for _ in 0..unfold {
                spoke.extend_from_slice(&v);
            }
            spoke.extend_from_slice(&v[..shift]);
            let mut rotated = v.0.clone();
            rotated.rotate_left(shift);
            let cycle: Vec<Letter> = rotated.iter().copied().cycle().take(reps * v.len()).collect();
            let l1 = Lasso::new(u, v)?;
            let l2 = Lasso::new(Word(spoke), Word(cycle))?;
            debug_assert!(lasso_eq(&l1, &l2));
            if self.accepts_lasso(&l1) != self.accepts_lasso(&l2) {
                return Err(Error::InvalidTarget(format!("predicate separates equal lassos {l1} and {l2}")));
            }
        }
        Ok(())
    }
}

/// Teacher answering weak-Wilke instruction words through the lasso predicate
/// and equivalence queries against the reference machine.
#[derive(Debug, Clone)]
pub struct WilkeTeacher {
    target: LassoOracleTarget,
}

impl WilkeTeacher {
    pub fn new(target: LassoOracleTarget) -> Self {
        WilkeTeacher { target }
    }

    pub fn target(&self) -> &LassoOracleTarget {
        &self.target
    }
}

pub fn wilke_teacher(target: LassoOracleTarget) -> WilkeTeacher {
    WilkeTeacher::new(target)
}

impl Teacher for WilkeTeacher {
    type Word = SortedWord;
    type Output = bool;
    type Hypothesis = SortedMachine;

    fn membership(&self, word: &SortedWord) -> Result<bool> {
        match interpret_wilke_word(&self.target.alphabet, word)? {
            FreeValue::Finite(u) => self.target.accepts_finite(&u),
            FreeValue::Lasso(l) => Ok(self.target.accepts_lasso(&l)),
        }
    }

    fn equivalence(&self, hypothesis: &SortedMachine) -> Result<Option<SortedWord>> {
        self.target.reference.distinguish(hypothesis)
    }
}
