use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// Deterministic automaton with an output per state. With `O = bool` this is a DFA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine<O = bool> {
    alphabet: Alphabet,
    initial: usize,
    transitions: Vec<Vec<usize>>,
    output: Vec<O>,
}

impl<O: Clone + Eq + Hash> MooreMachine<O> {
    /// `transitions[q][a]` is the successor of state `q` on letter `a`.
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        output: Vec<O>,
    ) -> Result<Self> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::InvalidMachine("machine has no states".into()));
        }
        if output.len() != n {
            return Err(Error::InvalidMachine(format!(
                "{} outputs for {} states",
                output.len(),
                n
            )));
        }
        if initial >= n {
            return Err(Error::InvalidMachine(format!(
                "initial state {initial} out of range"
            )));
        }
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidMachine(format!(
                    "state {q} has {} transitions, alphabet has {} letters",
                    row.len(),
                    alphabet.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidMachine(format!(
                    "transition from {q} to missing state {t}"
                )));
            }
        }
        Ok(MooreMachine {
            alphabet,
            initial,
            transitions,
            output,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn successor(&self, state: usize, letter: Letter) -> usize {
        self.transitions[state][letter]
    }

    pub fn output(&self, state: usize) -> &O {
        &self.output[state]
    }

    pub fn outputs(&self) -> &[O] {
        &self.output
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    pub fn run_from(&self, state: usize, word: &[Letter]) -> Result<usize> {
        word.iter().try_fold(state, |q, &a| {
            self.alphabet.check(a)?;
            Ok(self.transitions[q][a])
        })
    }

    pub fn state_after(&self, word: &[Letter]) -> Result<usize> {
        self.run_from(self.initial, word)
    }

    /// Output of the state reached from the initial state on `word`.
    pub fn run(&self, word: &[Letter]) -> Result<&O> {
        Ok(&self.output[self.state_after(word)?])
    }

    /// Reachable states in breadth-first order (letters in alphabet order).
    pub fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for &t in &self.transitions[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Shortlex-least access word for every state, `None` for unreachable ones.
    pub fn access_words(&self) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.state_count()];
        words[self.initial] = Some(Word::empty());
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            let w = words[q].clone().expect("queued states have words");
            for a in self.alphabet.letters() {
                let t = self.transitions[q][a];
                if words[t].is_none() {
                    words[t] = Some(w.append(a));
                    queue.push_back(t);
                }
            }
        }
        words
    }

    /// Relabels the reachable part in breadth-first order from the initial state.
    /// Two machines are isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> Self {
        let order = self.reachable_states();
        let mut index = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        MooreMachine {
            alphabet: self.alphabet.clone(),
            initial: 0,
            transitions: order
                .iter()
                .map(|&q| self.transitions[q].iter().map(|&t| index[t]).collect())
                .collect(),
            output: order.iter().map(|&q| self.output[q].clone()).collect(),
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.reachable_states().len() == self.state_count()
            && other.reachable_states().len() == other.state_count()
            && self.canonical() == other.canonical()
    }

    /// Minimal machine for the same language: reachable part, then Moore-style
    /// partition refinement starting from the output partition. The result is
    /// in canonical numbering.
    pub fn minimize(&self) -> Self {
        let order = self.reachable_states();
        let mut index = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        let mut class = number_by_first_seen(order.iter().map(|&q| self.output[q].clone()));
        let mut count = class.iter().max().map_or(0, |m| m + 1);
        loop {
            let next = number_by_first_seen(order.iter().enumerate().map(|(i, &q)| {
                let succ: Vec<usize> = self.transitions[q]
                    .iter()
                    .map(|&t| class[index[t]])
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
        let mut transitions = vec![Vec::new(); count];
        let mut output = vec![None; count];
        for (i, &q) in order.iter().enumerate() {
            let c = class[i];
            if output[c].is_none() {
                output[c] = Some(self.output[q].clone());
                transitions[c] = self.transitions[q]
                    .iter()
                    .map(|&t| class[index[t]])
                    .collect();
            }
        }
        MooreMachine {
            alphabet: self.alphabet.clone(),
            initial: class[0],
            transitions,
            output: output.into_iter().map(|o| o.expect("every class has a member")).collect(),
        }
        .canonical()
    }

    /// Shortlex-least word on which the two machines produce different outputs.
    pub fn distinguish(&self, other: &Self) -> Result<Option<Word>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.names(),
                other.alphabet.names()
            )));
        }
        let start = (self.initial, other.initial);
        let mut parent: HashMap<(usize, usize), Option<((usize, usize), Letter)>> =
            HashMap::from([(start, None)]);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.output[p] != other.output[q] {
                let mut word = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    word.push(*a);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(Word(word)));
            }
            for a in self.alphabet.letters() {
                let next = (self.transitions[p][a], other.transitions[q][a]);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some(((p, q), a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    pub fn map_output<P: Clone + Eq + Hash>(&self, f: impl Fn(&O) -> P) -> MooreMachine<P> {
        MooreMachine {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            transitions: self.transitions.clone(),
            output: self.output.iter().map(f).collect(),
        }
    }
}

impl MooreMachine<bool> {
    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        self.run(word).copied()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph moore {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.state_count() {
            let shape = if self.output[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(out, "  start -> q{};", self.initial);
        for q in 0..self.state_count() {
            let mut by_target: Vec<(usize, Vec<&str>)> = Vec::new();
            for a in self.alphabet.letters() {
                let t = self.transitions[q][a];
                match by_target.iter_mut().find(|(x, _)| *x == t) {
                    Some((_, labels)) => labels.push(self.alphabet.name(a)),
                    None => by_target.push((t, vec![self.alphabet.name(a)])),
                }
            }
            for (t, labels) in by_target {
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", labels.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Assigns class numbers in order of first appearance.
pub(crate) fn number_by_first_seen<K: Eq + Hash>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.map(|k| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    })
    .collect()
}

pub fn run_moore<'m, O: Clone + Eq + Hash>(m: &'m MooreMachine<O>, word: &[Letter]) -> Result<&'m O> {
    m.run(word)
}

pub fn minimize_moore<O: Clone + Eq + Hash>(m: &MooreMachine<O>) -> MooreMachine<O> {
    m.minimize()
}

pub fn moore_distinguish<O: Clone + Eq + Hash>(
    m1: &MooreMachine<O>,
    m2: &MooreMachine<O>,
) -> Result<Option<Word>> {
    m1.distinguish(m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    /// (ab)* with a sink: 0 -a-> 1 -b-> 0, everything else to 2.
    fn ab_star() -> MooreMachine {
        MooreMachine::new(ab(), 0, vec![vec![1, 2], vec![2, 0], vec![2, 2]], vec![true, false, false])
            .unwrap()
    }

    fn ends_in(n_a: usize) -> MooreMachine {
        // Σ*a^n: count trailing a's up to n.
        let transitions = (0..=n_a).map(|q| vec![(q + 1).min(n_a), 0]).collect();
        let output = (0..=n_a).map(|q| q == n_a).collect();
        MooreMachine::new(ab(), 0, transitions, output).unwrap()
    }

    /// Membership in (ab)* by direct simulation of the regular expression.
    fn ab_star_oracle(w: &[Letter]) -> bool {
        w.len().is_multiple_of(2) && w.chunks(2).all(|c| c == [0, 1])
    }

    #[test]
    fn run_single_state_accepts_everything() {
        let m = MooreMachine::new(ab(), 0, vec![vec![0, 0]], vec![true]).unwrap();
        assert!(m.accepts(&ab().parse_word("abba").unwrap()).unwrap());
    }

    #[test]
    fn run_empty_word_is_initial_output() {
        let m = ab_star();
        assert_eq!(m.run(&[]).unwrap(), m.output(m.initial()));
    }

    #[test]
    fn run_ab_star() {
        let m = ab_star();
        let a = ab();
        assert!(m.accepts(&a.parse_word("abab").unwrap()).unwrap());
        assert!(!m.accepts(&a.parse_word("aba").unwrap()).unwrap());
        for w in a.words_up_to(6) {
            assert_eq!(m.accepts(&w).unwrap(), ab_star_oracle(&w));
        }
    }

    #[test]
    fn run_rejects_unknown_letter() {
        assert!(matches!(
            ab_star().run(&[2]),
            Err(Error::LetterOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn construction_validates() {
        assert!(MooreMachine::new(ab(), 0, vec![vec![0]], vec![true]).is_err());
        assert!(MooreMachine::new(ab(), 1, vec![vec![0, 0]], vec![true]).is_err());
        assert!(MooreMachine::new(ab(), 0, vec![vec![0, 3]], vec![true]).is_err());
    }

    #[test]
    fn minimize_keeps_minimal_machine() {
        let m = ab_star();
        let min = m.minimize();
        assert!(min.is_isomorphic(&m));
        assert_eq!(min.state_count(), 3);
    }

    #[test]
    fn minimize_drops_unreachable_state() {
        let m = MooreMachine::new(ab(), 0, vec![vec![0, 0], vec![1, 1]], vec![false, true])
            .unwrap();
        let min = m.minimize();
        assert_eq!(min.state_count(), 1);
        assert!(!min.output(0));
    }

    #[test]
    fn minimize_merges_nerode_equivalent_states() {
        // Σ*a with a redundant copy of both states.
        let m = MooreMachine::new(
            ab(),
            0,
            vec![vec![1, 2], vec![3, 0], vec![1, 0], vec![3, 2]],
            vec![false, true, false, true],
        )
        .unwrap();
        let min = m.minimize();
        assert_eq!(min.state_count(), 2);
        assert_eq!(brute_force_nerode_classes(&m, 2 * m.state_count()), 2);
        for w in ab().words_up_to(8) {
            assert_eq!(min.run(&w).unwrap(), m.run(&w).unwrap());
        }
    }

    /// Number of classes of reachable words under "same outputs on all suffixes up to len".
    fn brute_force_nerode_classes(m: &MooreMachine, len: usize) -> usize {
        let words = m.alphabet().words_up_to(len / 2 + 1);
        let suffixes = m.alphabet().words_up_to(len);
        let mut sigs = std::collections::HashSet::new();
        for u in &words {
            let sig: Vec<bool> = suffixes
                .iter()
                .map(|v| m.accepts(&u.concat(v)).unwrap())
                .collect();
            sigs.insert(sig);
        }
        sigs.len()
    }

    #[test]
    fn distinguish_identical_is_none() {
        assert_eq!(ab_star().distinguish(&ab_star()).unwrap(), None);
    }

    #[test]
    fn distinguish_accept_all_vs_reject_all_is_empty_word() {
        let yes = MooreMachine::new(ab(), 0, vec![vec![0, 0]], vec![true]).unwrap();
        let no = MooreMachine::new(ab(), 0, vec![vec![0, 0]], vec![false]).unwrap();
        assert_eq!(yes.distinguish(&no).unwrap(), Some(Word::empty()));
    }

    #[test]
    fn distinguish_ends_in_a_vs_ends_in_aa() {
        let m1 = ends_in(1);
        let m2 = ends_in(2);
        let got = m1.distinguish(&m2).unwrap().unwrap();
        // Exhaustive: the shortlex-least disagreeing word of length <= 2.
        let expected = ab()
            .words_up_to(2)
            .into_iter()
            .find(|w| m1.accepts(w).unwrap() != m2.accepts(w).unwrap())
            .unwrap();
        assert_eq!(got, expected);
        assert_eq!(ab().format_word(&got), "a");
    }

    #[test]
    fn distinguish_alphabet_mismatch() {
        let other = MooreMachine::new(Alphabet::from_chars("abc").unwrap(), 0, vec![vec![0, 0, 0]], vec![true])
            .unwrap();
        assert!(matches!(
            ab_star().distinguish(&other),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn access_words_are_shortlex_least() {
        let m = ab_star();
        let words = m.access_words();
        assert_eq!(words[0], Some(Word::empty()));
        assert_eq!(words[1], Some(Word(vec![0])));
        assert_eq!(words[2], Some(Word(vec![1])));
    }

    #[test]
    fn dot_mentions_every_state() {
        let dot = ab_star().to_dot();
        assert!(dot.contains("q0 [shape=doublecircle]"));
        assert!(dot.contains("q2 -> q2 [label=\"a,b\"]"));
    }
}
