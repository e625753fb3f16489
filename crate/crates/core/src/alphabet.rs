//! Finite ordered alphabets and words over them.
//!
//! Letters are indices into an [`Alphabet`]; the alphabet owns the display
//! names. Words compare in shortlex order (length first, then
//! lexicographically by letter index), which is the order used for every
//! "least word" tie-break in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::InvalidMachine("alphabet is empty".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidMachine(format!("bad letter name {l:?}")));
            }
            if letters[..i].contains(l) {
                return Err(Error::InvalidMachine(format!("duplicate letter {l:?}")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Alphabet whose letters are the given characters, e.g. `"ab"`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter]
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.letters.len()
    }

    pub fn index(&self, name: &str) -> Result<Letter> {
        self.letters
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn check(&self, letter: Letter) -> Result<()> {
        if letter < self.len() {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                index: letter,
                size: self.len(),
            })
        }
    }

    /// Parses a word. Whitespace-separated tokens are letter names; a string
    /// without whitespace is split into characters when every letter is a
    /// single character. `""` and `"ε"` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let letters = if text.contains(char::is_whitespace) || !self.single_char() {
            text.split_whitespace()
                .map(|t| self.index(t))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|c| self.index(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// All words of length `<= max_len` in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for a in self.letters() {
                    next.push(w.append(a));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(value: Vec<String>) -> Result<Self> {
        Alphabet::new(value)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.letters
    }
}

/// A finite word. Ordered shortlex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn append(&self, letter: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn prepend(&self, letter: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    /// All prefixes including the empty word and the word itself, shortest first.
    pub fn prefixes(&self) -> Vec<Word> {
        (0..=self.0.len()).map(|i| Word(self.0[..i].to_vec())).collect()
    }

    /// All suffixes including the empty word and the word itself, shortest first.
    pub fn suffixes(&self) -> Vec<Word> {
        (0..=self.0.len())
            .rev()
            .map(|i| Word(self.0[i..].to_vec()))
            .collect()
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

pub fn shortlex<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
