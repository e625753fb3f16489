//! Presentations of free algebras by sorted automata, and extraction of
//! syntactic algebras from learned minimal machines.

pub mod presentation;
pub mod semigroup;
pub mod wilke;

use std::collections::VecDeque;

use crate::automata::{SortedMachine, SortedWord};

pub use presentation::{
    interpret_semigroup_word, interpret_wilke_word, lasso_eq, linearize_semigroup, linearize_wilke,
    FreeValue, Instruction, Lasso, SemigroupAlphabet, WilkeWeakAlphabet, OMEGA, PLUS,
};
pub use semigroup::{extract_syntactic_semigroup, FiniteSemigroup};
pub use wilke::{extract_wilke_algebra, WilkeAlgebra};

/// Up to `per_state` access words for every state, enumerated in word order.
/// The first word of each list is the least access word. Only recorded words
/// are extended, so the search stays linear in the machine size.
pub fn witness_lists(m: &SortedMachine, per_state: usize) -> Vec<Vec<SortedWord>> {
    let alpha = m.alphabet();
    let mut lists: Vec<Vec<SortedWord>> = vec![Vec::new(); m.state_count()];
    let mut queue: VecDeque<(SortedWord, usize)> = (0..alpha.generators().len())
        .map(|g| (SortedWord::new(g, Vec::new()), m.initial(g)))
        .collect();
    while let Some((w, q)) = queue.pop_front() {
        if lists[q].len() >= per_state {
            continue;
        }
        for a in alpha.letters_from(m.state_sort(q)) {
            let t = m.successor(q, a).expect("typed transition");
            queue.push_back((w.append(a), t));
        }
        lists[q].push(w);
    }
    lists
}
