use serde_json::{json, Value};

use crate::algebra::presentation::{interpret_semigroup_word, SemigroupAlphabet};
use crate::algebra::witness_lists;
use crate::alphabet::{Letter, Word};
use crate::automata::SortedMachine;
use crate::error::{Error, Result};

/// A finite semigroup given by its multiplication table, with the class of
/// every generator and the set of elements belonging to the language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    mult: Vec<Vec<usize>>,
    generators: Vec<usize>,
    accepting: Vec<bool>,
}

impl FiniteSemigroup {
    pub fn new(mult: Vec<Vec<usize>>, generators: Vec<usize>, accepting: Vec<bool>) -> Result<Self> {
        let k = mult.len();
        if k == 0 || mult.iter().any(|r| r.len() != k || r.iter().any(|&x| x >= k)) {
            return Err(Error::InvalidMachine("multiplication table must be square and closed".into()));
        }
        if accepting.len() != k || generators.iter().any(|&g| g >= k) {
            return Err(Error::InvalidMachine("generator or accepting data out of range".into()));
        }
        Ok(FiniteSemigroup {
            mult,
            generators,
            accepting,
        })
    }

    pub fn size(&self) -> usize {
        self.mult.len()
    }

    pub fn mult(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// Class of the one-letter word `a`.
    pub fn generator(&self, a: Letter) -> usize {
        self.generators[a]
    }

    pub fn is_accepting(&self, x: usize) -> bool {
        self.accepting[x]
    }

    /// Class of a non-empty word.
    pub fn evaluate(&self, u: &[Letter]) -> Option<usize> {
        let (&first, rest) = u.split_first()?;
        Some(rest.iter().fold(self.generators[first], |x, &a| self.mult[x][self.generators[a]]))
    }

    /// First triple violating associativity, if any.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let k = self.size();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    if self.mult(self.mult(x, y), z) != self.mult(x, self.mult(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "semigroup",
            "size": self.size(),
            "mult": self.mult,
            "generators": self.generators,
            "accepting": (0..self.size()).filter(|&x| self.accepting[x]).collect::<Vec<_>>(),
        })
    }
}

/// Reads the syntactic semigroup off the minimal machine of the
/// linearization: elements are states, and `x·y` is the state reached by the
/// append-only instruction word of `u_x u_y` for words `u_x`, `u_y` reaching
/// `x` and `y`. Several witnesses per state are cross-checked.
pub fn extract_syntactic_semigroup(q: &SortedMachine, alpha: &SemigroupAlphabet) -> Result<FiniteSemigroup> {
    if q.alphabet() != alpha.sorted() {
        return Err(Error::AlphabetMismatch("machine is not over the semigroup presentation".into()));
    }
    if !alpha.has_prepend() {
        return Err(Error::Extraction(
            "extraction needs the presentation with both append and prepend letters".into(),
        ));
    }
    let lists = witness_lists(q, 4);
    if let Some(x) = lists.iter().position(Vec::is_empty) {
        return Err(Error::Extraction(format!("state {x} is unreachable")));
    }
    let words: Vec<Vec<Word>> = lists
        .iter()
        .map(|ws| ws.iter().map(|w| interpret_semigroup_word(alpha, w)).collect())
        .collect::<Result<_>>()?;
    let run = |u: &[Letter]| -> Result<usize> { q.state_after(&alpha.left_only(u)?) };

    for (x, us) in words.iter().enumerate() {
        for u in us {
            let got = run(u)?;
            if got != x {
                return Err(Error::Extraction(format!(
                    "word {u} reaches state {x} by some instruction word but state {got} when appended left to right"
                )));
            }
        }
    }

    let k = q.state_count();
    let mut mult = vec![vec![0; k]; k];
    for x in 0..k {
        for y in 0..k {
            let mut value = None;
            for ux in &words[x] {
                for uy in &words[y] {
                    let z = run(&ux.concat(uy))?;
                    match value {
                        None => value = Some(z),
                        Some(v) if v != z => {
                            return Err(Error::Extraction(format!(
                                "product of states {x} and {y} depends on the witnesses: {v} vs {z} via {ux}·{uy}"
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
            mult[x][y] = value.expect("every state has a witness");
        }
    }
    let generators = (0..alpha.base().len()).map(|a| q.initial(a)).collect();
    let accepting = (0..k).map(|x| q.output(x)).collect();
    let s = FiniteSemigroup::new(mult, generators, accepting)?;
    if let Some((x, y, z)) = s.associativity_violation() {
        return Err(Error::Extraction(format!("({x}·{y})·{z} ≠ {x}·({y}·{z})")));
    }
    Ok(s)
}
