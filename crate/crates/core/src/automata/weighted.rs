use std::collections::VecDeque;

use num::Zero;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::linalg::{self, Rational, SpanBasis};

/// Linear weighted automaton over the rationals: the value of `a1..ak` is
/// `initial · M(a1) ··· M(ak) · final`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAutomaton {
    alphabet: Alphabet,
    initial: Vec<Rational>,
    matrices: Vec<Vec<Vec<Rational>>>,
    final_weights: Vec<Rational>,
}

impl WeightedAutomaton {
    pub fn new(
        alphabet: Alphabet,
        initial: Vec<Rational>,
        matrices: Vec<Vec<Vec<Rational>>>,
        final_weights: Vec<Rational>,
    ) -> Result<Self> {
        let d = initial.len();
        if d == 0 {
            return Err(Error::InvalidMachine("dimension must be positive".into()));
        }
        if final_weights.len() != d {
            return Err(Error::InvalidMachine(format!(
                "final vector has length {}, expected {d}",
                final_weights.len()
            )));
        }
        if matrices.len() != alphabet.len() {
            return Err(Error::InvalidMachine(format!(
                "{} matrices for {} letters",
                matrices.len(),
                alphabet.len()
            )));
        }
        for (a, m) in matrices.iter().enumerate() {
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(Error::InvalidMachine(format!(
                    "matrix for letter {:?} is not {d}x{d}",
                    alphabet.name(a)
                )));
            }
        }
        Ok(WeightedAutomaton {
            alphabet,
            initial,
            matrices,
            final_weights,
        })
    }

    /// One-dimensional automaton computing the zero function.
    pub fn zero(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        WeightedAutomaton {
            alphabet,
            initial: linalg::zeros(1),
            matrices: vec![vec![linalg::zeros(1)]; n],
            final_weights: linalg::zeros(1),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dimension(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn final_weights(&self) -> &[Rational] {
        &self.final_weights
    }

    pub fn matrix(&self, letter: Letter) -> &[Vec<Rational>] {
        &self.matrices[letter]
    }

    /// `initial · M(w)`.
    pub fn forward(&self, word: &[Letter]) -> Result<Vec<Rational>> {
        word.iter().try_fold(self.initial.clone(), |v, &a| {
            self.alphabet.check(a)?;
            Ok(linalg::vec_mat(&v, &self.matrices[a]))
        })
    }

    /// `M(w) · final`.
    pub fn backward(&self, word: &[Letter]) -> Result<Vec<Rational>> {
        word.iter().rev().try_fold(self.final_weights.clone(), |v, &a| {
            self.alphabet.check(a)?;
            Ok(linalg::mat_vec(&self.matrices[a], &v))
        })
    }

    /// Value of `word`, evaluated left to right.
    pub fn value(&self, word: &[Letter]) -> Result<Rational> {
        Ok(linalg::dot(&self.forward(word)?, &self.final_weights))
    }

    /// Value of `word`, evaluated right to left.
    pub fn value_right_to_left(&self, word: &[Letter]) -> Result<Rational> {
        Ok(linalg::dot(&self.initial, &self.backward(word)?))
    }

    /// Dimension of the span of all forward vectors `initial · M(w)`.
    pub fn reachable_dimension(&self) -> usize {
        self.span_dimension(true)
    }

    /// Dimension of the span of all backward vectors `M(w) · final`.
    pub fn observable_dimension(&self) -> usize {
        self.span_dimension(false)
    }

    fn span_dimension(&self, forward: bool) -> usize {
        let mut basis = SpanBasis::new();
        let start = if forward {
            self.initial.clone()
        } else {
            self.final_weights.clone()
        };
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if !basis.insert(&v) {
                continue;
            }
            for m in &self.matrices {
                queue.push_back(if forward {
                    linalg::vec_mat(&v, m)
                } else {
                    linalg::mat_vec(m, &v)
                });
            }
        }
        basis.rank()
    }

    /// Minimal means no automaton of smaller dimension computes the same
    /// function. The one-dimensional zero automaton counts as minimal.
    pub fn is_minimal(&self) -> bool {
        let d = self.dimension();
        let r = self.reachable_dimension();
        let o = self.observable_dimension();
        (r == d && o == d) || (d == 1 && (r == 0 || o == 0))
    }

    /// Shortlex-least word on which the two automata differ, found by a
    /// breadth-first walk that prunes words whose joint forward vector is in
    /// the span of earlier ones. Any returned word is shorter than `d1 + d2`.
    pub fn distinguish(&self, other: &Self) -> Result<Option<Word>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.names(),
                other.alphabet.names()
            )));
        }
        let joint = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
            x.iter().chain(y).cloned().collect()
        };
        let mut basis = SpanBasis::new();
        let mut queue = VecDeque::from([(Word::empty(), self.initial.clone(), other.initial.clone())]);
        while let Some((w, x, y)) = queue.pop_front() {
            if !basis.insert(&joint(&x, &y)) {
                continue;
            }
            let diff = linalg::dot(&x, &self.final_weights) - linalg::dot(&y, &other.final_weights);
            if !diff.is_zero() {
                return Ok(Some(w));
            }
            for a in self.alphabet.letters() {
                queue.push_back((
                    w.append(a),
                    linalg::vec_mat(&x, &self.matrices[a]),
                    linalg::vec_mat(&y, &other.matrices[a]),
                ));
            }
        }
        Ok(None)
    }
}

pub fn wfa_value(m: &WeightedAutomaton, word: &[Letter]) -> Result<Rational> {
    m.value(word)
}

pub fn wfa_distinguish(m1: &WeightedAutomaton, m2: &WeightedAutomaton) -> Result<Option<Word>> {
    m1.distinguish(m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rational(x)).collect()
    }

    /// Counts occurrences of `letter`.
    fn count(letter: Letter) -> WeightedAutomaton {
        let step = q(&[&[1, 1], &[0, 1]]);
        let id = q(&[&[1, 0], &[0, 1]]);
        let matrices = (0..2).map(|a| if a == letter { step.clone() } else { id.clone() }).collect();
        WeightedAutomaton::new(ab(), v(&[1, 0]), matrices, v(&[0, 1])).unwrap()
    }

    #[test]
    fn all_ones_scalar() {
        let m = WeightedAutomaton::new(ab(), v(&[1]), vec![q(&[&[1]]), q(&[&[1]])], v(&[1])).unwrap();
        for k in 0..5 {
            assert_eq!(m.value(&vec![0; k]).unwrap(), rational(1));
        }
    }

    #[test]
    fn count_a_values() {
        let m = count(0);
        let w = ab().parse_word("abaa").unwrap();
        assert_eq!(m.value(&w).unwrap(), rational(3));
        // Direct letter count as the oracle.
        for w in ab().words_up_to(6) {
            let expected = w.iter().filter(|&&l| l == 0).count() as i64;
            assert_eq!(m.value(&w).unwrap(), rational(expected));
        }
    }

    #[test]
    fn empty_word_is_initial_dot_final() {
        let m = count(0);
        assert_eq!(m.value(&[]).unwrap(), linalg::dot(m.initial(), m.final_weights()));
    }

    #[test]
    fn unknown_letter_rejected() {
        assert!(count(0).value(&[5]).is_err());
    }

    #[test]
    fn construction_validates() {
        assert!(WeightedAutomaton::new(ab(), vec![], vec![vec![], vec![]], vec![]).is_err());
        assert!(WeightedAutomaton::new(ab(), v(&[1]), vec![q(&[&[1]])], v(&[1])).is_err());
        assert!(WeightedAutomaton::new(ab(), v(&[1]), vec![q(&[&[1]]), q(&[&[1, 0]])], v(&[1])).is_err());
    }

    #[test]
    fn distinguish_self_is_none() {
        assert_eq!(count(0).distinguish(&count(0)).unwrap(), None);
    }

    #[test]
    fn distinguish_count_a_vs_count_b() {
        let got = count(0).distinguish(&count(1)).unwrap();
        assert_eq!(got, Some(Word(vec![0])));
    }

    #[test]
    fn permuted_basis_is_equivalent() {
        let m = count(0);
        // Swap the two coordinates: P M P with P the swap permutation.
        let p = q(&[&[0, 1], &[1, 0]]);
        let permuted = WeightedAutomaton::new(
            ab(),
            linalg::vec_mat(m.initial(), &p),
            (0..2)
                .map(|a| linalg::mat_mul(&linalg::mat_mul(&p, m.matrix(a)), &p))
                .collect(),
            linalg::mat_vec(&p, m.final_weights()),
        )
        .unwrap();
        assert_eq!(m.distinguish(&permuted).unwrap(), None);
        for w in ab().words_up_to(6) {
            assert_eq!(m.value(&w).unwrap(), permuted.value(&w).unwrap());
        }
    }

    #[test]
    fn minimality() {
        assert!(count(0).is_minimal());
        assert!(WeightedAutomaton::zero(ab()).is_minimal());
        let redundant = WeightedAutomaton::new(
            ab(),
            v(&[1, 0]),
            vec![q(&[&[1, 0], &[0, 1]]), q(&[&[1, 0], &[0, 1]])],
            v(&[1, 0]),
        )
        .unwrap();
        assert!(!redundant.is_minimal());
    }
}
