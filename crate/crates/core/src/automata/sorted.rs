//! Sorted automata: states carry a sort, letters go from one sort to another,
//! and every word starts with a generator from the input object.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::{shortlex, Letter};
use crate::automata::moore::number_by_first_seen;
use crate::error::{Error, Result};

pub type Sort = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedLetter {
    pub name: String,
    pub from: Sort,
    pub to: Sort,
}

/// An element of the input object, living in a fixed sort.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub sort: Sort,
}

/// Sorts, sort-typed letters and input generators. Letter sets for sort pairs
/// that do not appear are empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedAlphabet {
    sorts: Vec<String>,
    letters: Vec<SortedLetter>,
    generators: Vec<Generator>,
}

impl SortedAlphabet {
    pub fn new(
        sorts: Vec<String>,
        letters: Vec<SortedLetter>,
        generators: Vec<Generator>,
    ) -> Result<Self> {
        if sorts.is_empty() {
            return Err(Error::InvalidMachine("no sorts".into()));
        }
        check_unique("sort", sorts.iter())?;
        check_unique("letter", letters.iter().map(|l| &l.name))?;
        check_unique("generator", generators.iter().map(|g| &g.name))?;
        for l in &letters {
            if l.from >= sorts.len() || l.to >= sorts.len() {
                return Err(Error::InvalidMachine(format!("letter {:?} has a bad sort", l.name)));
            }
        }
        for g in &generators {
            if g.sort >= sorts.len() {
                return Err(Error::InvalidMachine(format!("generator {:?} has a bad sort", g.name)));
            }
        }
        if generators.is_empty() {
            return Err(Error::InvalidMachine("input object has no generators".into()));
        }
        Ok(SortedAlphabet {
            sorts,
            letters,
            generators,
        })
    }

    pub fn sorts(&self) -> &[String] {
        &self.sorts
    }

    pub fn sort_count(&self) -> usize {
        self.sorts.len()
    }

    pub fn sort_name(&self, s: Sort) -> &str {
        &self.sorts[s]
    }

    pub fn sort_index(&self, name: &str) -> Result<Sort> {
        self.sorts
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::Parse(format!("unknown sort {name:?}")))
    }

    pub fn letters(&self) -> &[SortedLetter] {
        &self.letters
    }

    pub fn letter(&self, a: Letter) -> &SortedLetter {
        &self.letters[a]
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn letter_index(&self, name: &str) -> Result<Letter> {
        self.letters
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Letters whose domain sort is `s`, in alphabet order.
    pub fn letters_from(&self, s: Sort) -> impl Iterator<Item = Letter> + '_ {
        self.letters
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.from == s)
            .map(|(i, _)| i)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Sort reached after reading `letters` from sort `start`.
    pub fn end_sort_from(&self, start: Sort, letters: &[Letter]) -> Result<Sort> {
        letters.iter().try_fold(start, |s, &a| {
            let l = self.letters.get(a).ok_or(Error::LetterOutOfRange {
                index: a,
                size: self.letters.len(),
            })?;
            if l.from != s {
                return Err(Error::SortMismatch(format!(
                    "letter {:?} expects sort {:?}, got {:?}",
                    l.name, self.sorts[l.from], self.sorts[s]
                )));
            }
            Ok(l.to)
        })
    }

    pub fn end_sort(&self, word: &SortedWord) -> Result<Sort> {
        let g = self.generators.get(word.generator).ok_or_else(|| {
            Error::UnknownLetter(format!("generator #{}", word.generator))
        })?;
        self.end_sort_from(g.sort, &word.letters)
    }

    /// Parses `"x l1 l2 ..."`: a generator followed by letter names. A token
    /// that is not a letter on its own is glued to the next one, so `"←ω a"`
    /// reads as the letter `"←ωa"`.
    pub fn parse_word(&self, text: &str) -> Result<SortedWord> {
        let mut tokens = text.split_whitespace();
        let first = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty sorted word".into()))?;
        let generator = self.generator_index(first)?;
        let mut letters = Vec::new();
        while let Some(t) = tokens.next() {
            match self.letter_index(t) {
                Ok(a) => letters.push(a),
                Err(e) => {
                    let next = tokens.next().ok_or(e)?;
                    letters.push(self.letter_index(&format!("{t}{next}"))?);
                }
            }
        }
        let word = SortedWord { generator, letters };
        self.end_sort(&word)?;
        Ok(word)
    }

    pub fn format_word(&self, word: &SortedWord) -> String {
        let mut out = self.generators[word.generator].name.clone();
        for &a in &word.letters {
            out.push(' ');
            out.push_str(&self.letters[a].name);
        }
        out
    }

    pub fn format_experiment(&self, e: &SortedExperiment) -> String {
        let mut out = format!("[{}]", self.sorts[e.start]);
        for &a in &e.letters {
            out.push(' ');
            out.push_str(&self.letters[a].name);
        }
        out
    }
}

fn check_unique<'a>(what: &str, names: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if n.is_empty() || n.chars().any(char::is_whitespace) {
            return Err(Error::InvalidMachine(format!("bad {what} name {n:?}")));
        }
        if !seen.insert(n) {
            return Err(Error::InvalidMachine(format!("duplicate {what} {n:?}")));
        }
    }
    Ok(())
}

/// A generator followed by a composable sequence of letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedWord {
    pub generator: usize,
    pub letters: Vec<Letter>,
}

impl SortedWord {
    pub fn new(generator: usize, letters: Vec<Letter>) -> Self {
        SortedWord { generator, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn append(&self, a: Letter) -> SortedWord {
        let mut letters = self.letters.clone();
        letters.push(a);
        SortedWord {
            generator: self.generator,
            letters,
        }
    }

    /// All truncations keeping the generator, shortest first.
    pub fn prefixes(&self) -> Vec<SortedWord> {
        (0..=self.letters.len())
            .map(|i| SortedWord::new(self.generator, self.letters[..i].to_vec()))
            .collect()
    }
}

/// Ordered by length, then generator, then letters.
impl Ord for SortedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then(self.generator.cmp(&other.generator))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for SortedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A composable letter sequence starting at a given sort. The empty
/// experiment exists at every sort.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedExperiment {
    pub start: Sort,
    pub letters: Vec<Letter>,
}

impl SortedExperiment {
    pub fn empty(start: Sort) -> Self {
        SortedExperiment {
            start,
            letters: Vec::new(),
        }
    }
}

impl Ord for SortedExperiment {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.letters, &other.letters).then(self.start.cmp(&other.start))
    }
}

impl PartialOrd for SortedExperiment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic sorted automaton with Boolean output per state.
///
/// States are numbered globally; `state_sort` records each state's sort.
/// `transitions[q][a]` is defined exactly when letter `a` starts at the sort of `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedMachine {
    alphabet: SortedAlphabet,
    state_sort: Vec<Sort>,
    initial: Vec<usize>,
    transitions: Vec<Vec<Option<usize>>>,
    output: Vec<bool>,
}

impl SortedMachine {
    pub fn new(
        alphabet: SortedAlphabet,
        state_sort: Vec<Sort>,
        initial: Vec<usize>,
        transitions: Vec<Vec<Option<usize>>>,
        output: Vec<bool>,
    ) -> Result<Self> {
        let n = state_sort.len();
        if transitions.len() != n || output.len() != n {
            return Err(Error::InvalidMachine("state tables have different lengths".into()));
        }
        if state_sort.iter().any(|&s| s >= alphabet.sort_count()) {
            return Err(Error::InvalidMachine("state with unknown sort".into()));
        }
        if initial.len() != alphabet.generators().len() {
            return Err(Error::InvalidMachine(format!(
                "{} initial states for {} generators",
                initial.len(),
                alphabet.generators().len()
            )));
        }
        for (g, &q) in initial.iter().enumerate() {
            let gen = &alphabet.generators()[g];
            if q >= n || state_sort[q] != gen.sort {
                return Err(Error::InvalidMachine(format!(
                    "generator {:?} mapped to a state of the wrong sort",
                    gen.name
                )));
            }
        }
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.letter_count() {
                return Err(Error::InvalidMachine(format!("state {q} has a short transition row")));
            }
            for (a, t) in row.iter().enumerate() {
                let l = alphabet.letter(a);
                match t {
                    Some(t) if l.from == state_sort[q] => {
                        if *t >= n || state_sort[*t] != l.to {
                            return Err(Error::InvalidMachine(format!(
                                "transition {q} --{}--> {t} breaks sort typing",
                                l.name
                            )));
                        }
                    }
                    None if l.from != state_sort[q] => {}
                    Some(_) => {
                        return Err(Error::InvalidMachine(format!(
                            "letter {:?} used at state {q} of the wrong sort",
                            l.name
                        )))
                    }
                    None => {
                        return Err(Error::InvalidMachine(format!(
                            "state {q} is missing a transition on {:?}",
                            l.name
                        )))
                    }
                }
            }
        }
        Ok(SortedMachine {
            alphabet,
            state_sort,
            initial,
            transitions,
            output,
        })
    }

    pub fn alphabet(&self) -> &SortedAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_sort.len()
    }

    pub fn state_sort(&self, q: usize) -> Sort {
        self.state_sort[q]
    }

    pub fn states_of_sort(&self, s: Sort) -> Vec<usize> {
        (0..self.state_count()).filter(|&q| self.state_sort[q] == s).collect()
    }

    /// Position of `q` among the states of its sort.
    pub fn local_index(&self, q: usize) -> usize {
        (0..q).filter(|&p| self.state_sort[p] == self.state_sort[q]).count()
    }

    pub fn initial(&self, generator: usize) -> usize {
        self.initial[generator]
    }

    pub fn initial_states(&self) -> &[usize] {
        &self.initial
    }

    pub fn successor(&self, q: usize, a: Letter) -> Option<usize> {
        self.transitions[q][a]
    }

    pub fn output(&self, q: usize) -> bool {
        self.output[q]
    }

    pub fn run_from(&self, q: usize, letters: &[Letter]) -> Result<usize> {
        letters.iter().try_fold(q, |q, &a| {
            self.alphabet.end_sort_from(self.state_sort[q], &[a])?;
            Ok(self.transitions[q][a].expect("typed letters have transitions"))
        })
    }

    pub fn state_after(&self, word: &SortedWord) -> Result<usize> {
        if word.generator >= self.initial.len() {
            return Err(Error::UnknownLetter(format!("generator #{}", word.generator)));
        }
        self.run_from(self.initial[word.generator], &word.letters)
    }

    /// End sort and output of the run on `word`.
    pub fn run(&self, word: &SortedWord) -> Result<(Sort, bool)> {
        let q = self.state_after(word)?;
        Ok((self.state_sort[q], self.output[q]))
    }

    pub fn accepts(&self, word: &SortedWord) -> Result<bool> {
        Ok(self.run(word)?.1)
    }

    fn successors(&self, q: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.transitions[q]
            .iter()
            .enumerate()
            .filter_map(|(a, t)| t.map(|t| (a, t)))
    }

    /// Reachable states in breadth-first order from the generators.
    pub fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = Vec::new();
        for &q in &self.initial {
            if !seen[q] {
                seen[q] = true;
                order.push(q);
            }
        }
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for (_, t) in self.successors(q) {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Least access word per state (in `SortedWord` order), `None` if unreachable.
    pub fn access_words(&self) -> Vec<Option<SortedWord>> {
        let mut words: Vec<Option<SortedWord>> = vec![None; self.state_count()];
        let mut queue = VecDeque::new();
        for (g, &q) in self.initial.iter().enumerate() {
            if words[q].is_none() {
                words[q] = Some(SortedWord::new(g, Vec::new()));
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            let w = words[q].clone().expect("queued states have words");
            for (a, t) in self.successors(q) {
                if words[t].is_none() {
                    words[t] = Some(w.append(a));
                    queue.push_back(t);
                }
            }
        }
        words
    }

    pub fn canonical(&self) -> Self {
        let order = self.reachable_states();
        let mut index = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        SortedMachine {
            alphabet: self.alphabet.clone(),
            state_sort: order.iter().map(|&q| self.state_sort[q]).collect(),
            initial: self.initial.iter().map(|&q| index[q]).collect(),
            transitions: order
                .iter()
                .map(|&q| self.transitions[q].iter().map(|t| t.map(|t| index[t])).collect())
                .collect(),
            output: order.iter().map(|&q| self.output[q]).collect(),
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.reachable_states().len() == self.state_count()
            && other.reachable_states().len() == other.state_count()
            && self.canonical() == other.canonical()
    }

    /// Sortwise reachable part followed by sortwise partition refinement.
    pub fn minimize(&self) -> Self {
        let order = self.reachable_states();
        let mut index = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        let mut class =
            number_by_first_seen(order.iter().map(|&q| (self.state_sort[q], self.output[q])));
        let mut count = class.iter().max().map_or(0, |m| m + 1);
        loop {
            let next = number_by_first_seen(order.iter().enumerate().map(|(i, &q)| {
                let succ: Vec<Option<usize>> = self.transitions[q]
                    .iter()
                    .map(|t| t.map(|t| class[index[t]]))
                    .collect();
                (class[i], succ)
            }));
            let next_count = next.iter().max().map_or(0, |m| m + 1);
            class = next;
            if next_count == count {
                break;
            }
            count = next_count;
        }
        let mut rep: Vec<Option<usize>> = vec![None; count];
        for (i, &q) in order.iter().enumerate() {
            rep[class[i]].get_or_insert(q);
        }
        let rep: Vec<usize> = rep.into_iter().map(|r| r.expect("nonempty class")).collect();
        SortedMachine {
            alphabet: self.alphabet.clone(),
            state_sort: rep.iter().map(|&q| self.state_sort[q]).collect(),
            initial: self.initial.iter().map(|&q| class[index[q]]).collect(),
            transitions: rep
                .iter()
                .map(|&q| {
                    self.transitions[q]
                        .iter()
                        .map(|t| t.map(|t| class[index[t]]))
                        .collect()
                })
                .collect(),
            output: rep.iter().map(|&q| self.output[q]).collect(),
        }
        .canonical()
    }

    /// Least sorted word (length, then generator, then letters) on which the
    /// machines disagree.
    pub fn distinguish(&self, other: &Self) -> Result<Option<SortedWord>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch("sorted alphabets differ".into()));
        }
        type Pair = (usize, usize);
        let mut origin: HashMap<Pair, (usize, Option<(Pair, Letter)>)> = HashMap::new();
        let mut queue = VecDeque::new();
        for g in 0..self.initial.len() {
            let start = (self.initial[g], other.initial[g]);
            if let std::collections::hash_map::Entry::Vacant(e) = origin.entry(start) {
                e.insert((g, None));
                queue.push_back(start);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            if self.output[p] != other.output[q] {
                let mut letters = Vec::new();
                let mut cur = (p, q);
                let generator = loop {
                    let (g, step) = origin[&cur];
                    match step {
                        Some((prev, a)) => {
                            letters.push(a);
                            cur = prev;
                        }
                        None => break g,
                    }
                };
                letters.reverse();
                return Ok(Some(SortedWord { generator, letters }));
            }
            let g = origin[&(p, q)].0;
            for (a, t) in self.successors(p) {
                let u = other.transitions[q][a].ok_or_else(|| {
                    Error::SortMismatch("machines disagree on state sorts".into())
                })?;
                if let std::collections::hash_map::Entry::Vacant(e) = origin.entry((t, u)) {
                    e.insert((g, Some(((p, q), a))));
                    queue.push_back((t, u));
                }
            }
        }
        Ok(None)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sorted {\n  rankdir=LR;\n");
        for s in 0..self.alphabet.sort_count() {
            let _ = writeln!(out, "  subgraph cluster_{s} {{\n    label=\"{}\";", self.alphabet.sort_name(s));
            for q in self.states_of_sort(s) {
                let shape = if self.output[q] { "doublecircle" } else { "circle" };
                let _ = writeln!(
                    out,
                    "    q{q} [shape={shape}, label=\"{}{}\"];",
                    self.alphabet.sort_name(s),
                    self.local_index(q)
                );
            }
            out.push_str("  }\n");
        }
        for (g, &q) in self.initial.iter().enumerate() {
            let _ = writeln!(out, "  in{g} [shape=plaintext, label=\"{}\"];", self.alphabet.generators()[g].name);
            let _ = writeln!(out, "  in{g} -> q{q};");
        }
        for q in 0..self.state_count() {
            for (a, t) in self.successors(q) {
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", self.alphabet.letter(a).name);
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn run_sorted(m: &SortedMachine, generator: usize, letters: &[Letter]) -> Result<(Sort, bool)> {
    m.run(&SortedWord::new(generator, letters.to_vec()))
}

pub fn minimize_sorted(m: &SortedMachine) -> SortedMachine {
    m.minimize()
}

pub fn sorted_distinguish(m1: &SortedMachine, m2: &SortedMachine) -> Result<Option<SortedWord>> {
    m1.distinguish(m2)
}
