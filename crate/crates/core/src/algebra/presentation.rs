//! Automata presentations of free algebras: instruction words over a sorted
//! alphabet and their interpretation as finite words or lassos.

use num::integer::lcm;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::automata::{Generator, SortedAlphabet, SortedLetter, SortedWord};
use crate::error::{Error, Result};

/// One step of an instruction word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// `→a`: append `a` on the right.
    Append(Letter),
    /// `←a`: prepend `a` on the left.
    Prepend(Letter),
    /// `ω`: turn the finite word `w` into `w^ω`.
    Omega,
    /// `←ω a`: prepend `a` to an infinite word.
    PrependOmega(Letter),
}

/// The single-sorted presentation of the free semigroup `I^+`. With
/// `prepend` disabled only the `→a` letters are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupAlphabet {
    base: Alphabet,
    sorted: SortedAlphabet,
    instructions: Vec<Instruction>,
}

impl SemigroupAlphabet {
    /// Letters `→a` for every `a`, then `←a` for every `a`.
    pub fn new(base: Alphabet) -> Self {
        Self::build(base, true)
    }

    /// Only the `→a` letters.
    pub fn append_only(base: Alphabet) -> Self {
        Self::build(base, false)
    }

    fn build(base: Alphabet, prepend: bool) -> Self {
        let mut instructions: Vec<Instruction> = base.letters().map(Instruction::Append).collect();
        if prepend {
            instructions.extend(base.letters().map(Instruction::Prepend));
        }
        let letters = instructions
            .iter()
            .map(|i| {
                let name = match *i {
                    Instruction::Append(a) => format!("→{}", base.name(a)),
                    Instruction::Prepend(a) => format!("←{}", base.name(a)),
                    _ => unreachable!("semigroup letters append or prepend"),
                };
                SortedLetter { name, from: 0, to: 0 }
            })
            .collect();
        let generators = base
            .names()
            .iter()
            .map(|n| Generator {
                name: n.clone(),
                sort: 0,
            })
            .collect();
        let sorted = SortedAlphabet::new(vec!["+".into()], letters, generators)
            .expect("semigroup alphabet is well formed");
        SemigroupAlphabet {
            base,
            sorted,
            instructions,
        }
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn sorted(&self) -> &SortedAlphabet {
        &self.sorted
    }

    pub fn instruction(&self, letter: Letter) -> Instruction {
        self.instructions[letter]
    }

    pub fn has_prepend(&self) -> bool {
        self.instructions.len() > self.base.len()
    }

    /// The letter `→a`.
    pub fn append(&self, a: Letter) -> Letter {
        a
    }

    /// The letter `←a`, if present.
    pub fn prepend(&self, a: Letter) -> Option<Letter> {
        self.has_prepend().then_some(self.base.len() + a)
    }

    /// `first(u) →u2 →u3 ...`, the append-only instruction word for `u`.
    pub fn left_only(&self, u: &[Letter]) -> Result<SortedWord> {
        let (&first, rest) = u
            .split_first()
            .ok_or_else(|| Error::Parse("the free semigroup has no empty word".into()))?;
        self.base.check(first)?;
        for &a in rest {
            self.base.check(a)?;
        }
        Ok(SortedWord::new(first, rest.iter().map(|&a| self.append(a)).collect()))
    }
}

/// Folds an instruction word into the word of `I^+` it denotes.
pub fn interpret_semigroup_word(alpha: &SemigroupAlphabet, w: &SortedWord) -> Result<Word> {
    alpha.sorted.end_sort(w)?;
    let mut out = std::collections::VecDeque::from([w.generator]);
    for &l in &w.letters {
        match alpha.instruction(l) {
            Instruction::Append(a) => out.push_back(a),
            Instruction::Prepend(a) => out.push_front(a),
            _ => unreachable!("semigroup letters append or prepend"),
        }
    }
    Ok(Word(out.into_iter().collect()))
}

/// An ultimately periodic word `spoke · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    pub spoke: Word,
    pub cycle: Word,
}

impl Lasso {
    pub fn new(spoke: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Parse("a lasso needs a non-empty cycle".into()));
        }
        Ok(Lasso { spoke, cycle })
    }

    /// The first `n` letters of the infinite word.
    pub fn unroll(&self, n: usize) -> Vec<Letter> {
        self.spoke
            .iter()
            .chain(self.cycle.iter().cycle())
            .take(n)
            .copied()
            .collect()
    }

    /// Shortest spoke and primitive cycle describing the same infinite word.
    pub fn normalize(&self) -> Lasso {
        let v = &self.cycle;
        let p = (1..=v.len())
            .find(|&p| v.len().is_multiple_of(p) && (p..v.len()).all(|i| v[i] == v[i - p]))
            .unwrap_or(v.len());
        let mut spoke = self.spoke.0.clone();
        let mut cycle = v[..p].to_vec();
        while let (Some(&x), Some(&y)) = (spoke.last(), cycle.last()) {
            if x != y {
                break;
            }
            spoke.pop();
            cycle.rotate_right(1);
        }
        Lasso {
            spoke: Word(spoke),
            cycle: Word(cycle),
        }
    }
}

impl std::fmt::Display for Lasso {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({})^ω", self.spoke, self.cycle)
    }
}

/// Whether two lassos denote the same infinite word.
pub fn lasso_eq(l1: &Lasso, l2: &Lasso) -> bool {
    let n = l1.spoke.len() + l2.spoke.len() + 2 * lcm(l1.cycle.len(), l2.cycle.len());
    l1.unroll(n) == l2.unroll(n)
}

/// A value of the free Wilke algebra over the base alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FreeValue {
    Finite(Word),
    Lasso(Lasso),
}

/// The two-sorted weak presentation of the free Wilke algebra: sorts `+` and
/// `ω`, letters `→a : + → +`, `ω : + → ω` and `←ωa : ω → ω`, generators the
/// base letters in sort `+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WilkeWeakAlphabet {
    base: Alphabet,
    sorted: SortedAlphabet,
}

pub const PLUS: usize = 0;
pub const OMEGA: usize = 1;

impl WilkeWeakAlphabet {
    pub fn new(base: Alphabet) -> Self {
        let mut letters: Vec<SortedLetter> = base
            .names()
            .iter()
            .map(|n| SortedLetter {
                name: format!("→{n}"),
                from: PLUS,
                to: PLUS,
            })
            .collect();
        letters.push(SortedLetter {
            name: "ω".into(),
            from: PLUS,
            to: OMEGA,
        });
        letters.extend(base.names().iter().map(|n| SortedLetter {
            name: format!("←ω{n}"),
            from: OMEGA,
            to: OMEGA,
        }));
        let generators = base
            .names()
            .iter()
            .map(|n| Generator {
                name: n.clone(),
                sort: PLUS,
            })
            .collect();
        let sorted = SortedAlphabet::new(vec!["+".into(), "ω".into()], letters, generators)
            .expect("Wilke alphabet is well formed");
        WilkeWeakAlphabet { base, sorted }
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn sorted(&self) -> &SortedAlphabet {
        &self.sorted
    }

    pub fn append(&self, a: Letter) -> Letter {
        a
    }

    pub fn omega(&self) -> Letter {
        self.base.len()
    }

    pub fn prepend_omega(&self, a: Letter) -> Letter {
        self.base.len() + 1 + a
    }

    pub fn instruction(&self, letter: Letter) -> Instruction {
        let n = self.base.len();
        match letter {
            l if l < n => Instruction::Append(l),
            l if l == n => Instruction::Omega,
            l => Instruction::PrependOmega(l - n - 1),
        }
    }

    /// `first(u) →u2 ...`.
    pub fn finite_word(&self, u: &[Letter]) -> Result<SortedWord> {
        let (&first, rest) = u
            .split_first()
            .ok_or_else(|| Error::Parse("the free semigroup has no empty word".into()))?;
        for &a in u {
            self.base.check(a)?;
        }
        Ok(SortedWord::new(first, rest.iter().map(|&a| self.append(a)).collect()))
    }

    /// `first(v) →v2 ... ω ←ω x_k ... ←ω x_1`, denoting `x·v^ω`.
    pub fn lasso_word(&self, lasso: &Lasso) -> Result<SortedWord> {
        let mut w = self.finite_word(&lasso.cycle)?;
        w.letters.push(self.omega());
        for &a in lasso.spoke.iter().rev() {
            self.base.check(a)?;
            w.letters.push(self.prepend_omega(a));
        }
        Ok(w)
    }
}

/// Folds a Wilke instruction word into a finite word or a lasso.
pub fn interpret_wilke_word(alpha: &WilkeWeakAlphabet, w: &SortedWord) -> Result<FreeValue> {
    alpha.sorted.end_sort(w)?;
    let mut value = FreeValue::Finite(Word(vec![w.generator]));
    for &l in &w.letters {
        value = match (alpha.instruction(l), value) {
            (Instruction::Append(a), FreeValue::Finite(u)) => FreeValue::Finite(u.append(a)),
            (Instruction::Omega, FreeValue::Finite(u)) => FreeValue::Lasso(Lasso::new(Word::empty(), u)?),
            (Instruction::PrependOmega(a), FreeValue::Lasso(l)) => FreeValue::Lasso(Lasso {
                spoke: l.spoke.prepend(a),
                cycle: l.cycle,
            }),
            (i, _) => return Err(Error::SortMismatch(format!("instruction {i:?} out of sort"))),
        };
    }
    Ok(value)
}

/// Membership in the linearization of `L ⊆ I^+`.
pub fn linearize_semigroup<'a, F>(
    alpha: &'a SemigroupAlphabet,
    language: F,
) -> impl Fn(&SortedWord) -> Result<bool> + 'a
where
    F: Fn(&Word) -> bool + 'a,
{
    move |w| Ok(language(&interpret_semigroup_word(alpha, w)?))
}

/// Membership in the linearization of a language of finite words and lassos:
/// `+`-sort words ask `finite`, `ω`-sort words ask `lasso`.
pub fn linearize_wilke<'a, F, G>(
    alpha: &'a WilkeWeakAlphabet,
    finite: F,
    lasso: G,
) -> impl Fn(&SortedWord) -> Result<bool> + 'a
where
    F: Fn(&Word) -> bool + 'a,
    G: Fn(&Lasso) -> bool + 'a,
{
    move |w| {
        Ok(match interpret_wilke_word(alpha, w)? {
            FreeValue::Finite(u) => finite(&u),
            FreeValue::Lasso(l) => lasso(&l),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::from_chars("abc").unwrap()
    }

    #[test]
    fn semigroup_alphabet_doubles_letters() {
        let s = SemigroupAlphabet::new(abc());
        assert_eq!(s.sorted().letter_count(), 6);
        assert_eq!(SemigroupAlphabet::append_only(abc()).sorted().letter_count(), 3);
    }

    #[test]
    fn interpret_single_generator() {
        let s = SemigroupAlphabet::new(abc());
        let w = s.sorted().parse_word("a").unwrap();
        assert_eq!(interpret_semigroup_word(&s, &w).unwrap(), Word(vec![0]));
    }

    #[test]
    fn left_only_roundtrip() {
        let s = SemigroupAlphabet::new(abc());
        for u in abc().words_up_to(4).into_iter().skip(1) {
            let w = s.left_only(&u).unwrap();
            assert_eq!(interpret_semigroup_word(&s, &w).unwrap(), u);
        }
        assert!(s.left_only(&[]).is_err());
    }

    #[test]
    fn lasso_equality() {
        let w = |s: &str| abc().parse_word(s).unwrap();
        let l = |u: &str, v: &str| Lasso::new(w(u), w(v)).unwrap();
        assert!(lasso_eq(&l("", "ab"), &l("ab", "ab")));
        assert!(lasso_eq(&l("", "a"), &l("", "aa")));
        assert!(!lasso_eq(&l("", "ab"), &l("", "ba")));
        assert!(lasso_eq(&l("a", "ba"), &l("", "ab")));
        assert_eq!(l("aba", "baba").normalize(), l("", "ab"));
        assert!(Lasso::new(w("a"), w("")).is_err());
    }

    #[test]
    fn wilke_words() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let alpha = WilkeWeakAlphabet::new(ab.clone());
        let w = alpha.sorted().parse_word("a ω").unwrap();
        assert_eq!(
            interpret_wilke_word(&alpha, &w).unwrap(),
            FreeValue::Lasso(Lasso::new(Word::empty(), Word(vec![0])).unwrap())
        );
        let l = Lasso::new(ab.parse_word("ab").unwrap(), ab.parse_word("bba").unwrap()).unwrap();
        let w = alpha.lasso_word(&l).unwrap();
        assert_eq!(interpret_wilke_word(&alpha, &w).unwrap(), FreeValue::Lasso(l));
        assert!(alpha.sorted().parse_word("a ←ω a").is_err());
    }
}
