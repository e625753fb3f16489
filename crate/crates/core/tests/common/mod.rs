//! Brute-force oracles shared by the integration tests. None of them calls
//! into the learner; most avoid the library's automata algorithms as well.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use genlstar::automata::{MooreMachine, WeightedAutomaton};
use genlstar::linalg::Rational;
use genlstar::{Alphabet, Word};
use num::{One, Zero};

pub fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

pub fn w(text: &str) -> Word {
    Word(text.chars().map(|c| (c as u8 - b'a') as usize).collect())
}

/// Every word over `k` letters of length at most `max_len`, shortest first
/// and lexicographic within a length.
pub fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for u in &layer {
            for a in 0..k {
                let mut v: Vec<usize> = u.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Runs a DFA by following its transition table directly.
pub fn run(m: &MooreMachine, u: &[usize]) -> bool {
    let mut q = m.initial();
    for &a in u {
        q = m.transitions()[q][a];
    }
    m.outputs()[q]
}

/// Number of Nerode classes of a language, separating words of length at most
/// `access_len` by experiments of length at most `exp_len`.
pub fn nerode_classes(k: usize, access_len: usize, exp_len: usize, member: impl Fn(&[usize]) -> bool) -> usize {
    let exps = words(k, exp_len);
    let rows: HashSet<Vec<bool>> = words(k, access_len)
        .iter()
        .map(|u| {
            exps.iter()
                .map(|e| member(&[u.as_slice(), e.as_slice()].concat()))
                .collect()
        })
        .collect();
    rows.len()
}

/// Number of states of the minimal DFA, by the pairwise table-filling
/// algorithm over the reachable states.
pub fn table_filling_size(m: &MooreMachine) -> usize {
    let n = m.state_count();
    let k = m.alphabet().len();
    let mut reach = vec![false; n];
    let mut queue = VecDeque::from([m.initial()]);
    reach[m.initial()] = true;
    while let Some(q) = queue.pop_front() {
        for a in 0..k {
            let t = m.transitions()[q][a];
            if !reach[t] {
                reach[t] = true;
                queue.push_back(t);
            }
        }
    }
    let states: Vec<usize> = (0..n).filter(|&q| reach[q]).collect();
    let mut marked = vec![vec![false; n]; n];
    for &p in &states {
        for &q in &states {
            marked[p][q] = m.outputs()[p] != m.outputs()[q];
        }
    }
    loop {
        let mut changed = false;
        for &p in &states {
            for &q in &states {
                if !marked[p][q]
                    && (0..k).any(|a| marked[m.transitions()[p][a]][m.transitions()[q][a]])
                {
                    marked[p][q] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes = 0;
    let mut seen = vec![false; n];
    for &p in &states {
        if !seen[p] {
            classes += 1;
            for &q in &states {
                if !marked[p][q] {
                    seen[q] = true;
                }
            }
        }
    }
    classes
}

/// Exact rank by fraction-valued Gaussian elimination.
pub fn exact_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone() / pivot.clone();
                for j in 0..cols {
                    let sub = f.clone() * rows[rank][j].clone();
                    rows[r][j] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the Hankel block indexed by prefixes and suffixes of length at most
/// `half`, so every entry is a word of length at most `2·half`.
pub fn hankel_rank(k: usize, half: usize, f: impl Fn(&[usize]) -> Rational) -> usize {
    let ws = words(k, half);
    exact_rank(
        ws.iter()
            .map(|u| ws.iter().map(|v| f(&[u.as_slice(), v.as_slice()].concat())).collect())
            .collect(),
    )
}

/// Weight of a word as the sum over all state paths of the product of edge
/// weights.
pub fn path_sum(m: &WeightedAutomaton, u: &[usize]) -> Rational {
    let d = m.dimension();
    let mut total = Rational::zero();
    let mut path = vec![0usize; u.len() + 1];
    loop {
        let mut weight = m.initial()[path[0]].clone();
        for (i, &a) in u.iter().enumerate() {
            weight *= m.matrix(a)[path[i]][path[i + 1]].clone();
        }
        weight *= m.final_weights()[path[u.len()]].clone();
        total += weight;
        let mut i = 0;
        loop {
            if i == path.len() {
                return total;
            }
            path[i] += 1;
            if path[i] < d {
                break;
            }
            path[i] = 0;
            i += 1;
        }
    }
}

pub fn count_letter(u: &[usize], a: usize) -> Rational {
    Rational::from_integer(u.iter().filter(|&&x| x == a).count().into())
}

/// Residual languages that are not the union of the residuals strictly below
/// them, computed on the reachable states of a minimal DFA with exact
/// inclusion tests by subset search.
pub fn prime_residual_count(m: &MooreMachine) -> usize {
    let k = m.alphabet().len();
    let states: Vec<usize> = {
        let mut seen = BTreeSet::from([m.initial()]);
        let mut queue = VecDeque::from([m.initial()]);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let t = m.transitions()[q][a];
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        seen.into_iter().collect()
    };
    // L(p) ⊆ ∪ L(qs) iff no reachable (p', qs') has p' accepting and no q' accepting.
    let included = |p: usize, qs: &BTreeSet<usize>| -> bool {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(p, qs.clone())]);
        while let Some((p, qs)) = queue.pop_front() {
            if !seen.insert((p, qs.clone())) {
                continue;
            }
            if m.outputs()[p] && !qs.iter().any(|&q| m.outputs()[q]) {
                return false;
            }
            for a in 0..k {
                let next: BTreeSet<usize> = qs.iter().map(|&q| m.transitions()[q][a]).collect();
                queue.push_back((m.transitions()[p][a], next));
            }
        }
        true
    };
    // below(p, q): L(p) ⊆ L(q).
    let below = |p: usize, q: usize| included(p, &BTreeSet::from([q]));
    states
        .iter()
        .filter(|&&p| {
            let smaller: BTreeSet<usize> = states
                .iter()
                .copied()
                .filter(|&q| q != p && below(q, p) && !below(p, q))
                .collect();
            // An empty residual is the empty join, never prime.
            let nonempty = !included(p, &BTreeSet::new());
            nonempty && !included(p, &smaller)
        })
        .count()
}

/// Classes of the two-sided context congruence of `L ⊆ I^+` on words of length
/// `1..=max_word`, with contexts `(x, y)` of total length at most `max_ctx`.
/// Returns a class index for every such word.
pub fn context_congruence(
    k: usize,
    max_word: usize,
    max_ctx: usize,
    member: impl Fn(&[usize]) -> bool,
) -> (usize, HashMap<Vec<usize>, usize>) {
    let all = words(k, max_ctx);
    let contexts: Vec<(&Vec<usize>, &Vec<usize>)> = all
        .iter()
        .flat_map(|x| all.iter().map(move |y| (x, y)))
        .filter(|(x, y)| x.len() + y.len() <= max_ctx)
        .collect();
    let mut profiles: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut class = HashMap::new();
    for u in words(k, max_word).into_iter().skip(1) {
        let profile: Vec<bool> = contexts
            .iter()
            .map(|(x, y)| member(&[x.as_slice(), u.as_slice(), y.as_slice()].concat()))
            .collect();
        let n = profiles.len();
        let c = *profiles.entry(profile).or_insert(n);
        class.insert(u, c);
    }
    (profiles.len(), class)
}

/// An ultimately periodic word as a spoke and a non-empty cycle.
pub type RawLasso = (Vec<usize>, Vec<usize>);

pub fn lassos(k: usize, max_spoke: usize, max_cycle: usize) -> Vec<RawLasso> {
    let cycles: Vec<Vec<usize>> = words(k, max_cycle).into_iter().skip(1).collect();
    words(k, max_spoke)
        .into_iter()
        .flat_map(|u| cycles.iter().map(move |v| (u.clone(), v.clone())))
        .collect()
}

/// Classes of the Wilke context congruence of an ω-language given on lassos.
/// Finite words `u` are separated by `x·u·y·v^ω` and `x·(u·y)^ω`, lassos
/// `l` by `x·l`. Finite words have length `1..=max_word`; contexts use words
/// of length at most `max_ctx`.
pub fn lasso_congruence(
    k: usize,
    max_word: usize,
    max_ctx: usize,
    member: impl Fn(&[usize], &[usize]) -> bool,
) -> (usize, usize) {
    let ctx = words(k, max_ctx);
    let nonempty: Vec<&Vec<usize>> = ctx.iter().filter(|v| !v.is_empty()).collect();
    let mut plus: HashSet<Vec<bool>> = HashSet::new();
    for u in words(k, max_word).into_iter().skip(1) {
        let mut profile = Vec::new();
        for x in &ctx {
            for y in &ctx {
                let xuy = [x.as_slice(), u.as_slice(), y.as_slice()].concat();
                for v in &nonempty {
                    profile.push(member(&xuy, v));
                }
                let uy = [u.as_slice(), y.as_slice()].concat();
                profile.push(member(x, &uy));
            }
        }
        plus.insert(profile);
    }
    let mut omega: HashSet<Vec<bool>> = HashSet::new();
    for (u, v) in lassos(k, max_word, max_word) {
        let profile = ctx
            .iter()
            .map(|x| member(&[x.as_slice(), u.as_slice()].concat(), &v))
            .collect();
        omega.insert(profile);
    }
    (plus.len(), omega.len())
}

pub fn inf_a(_: &[usize], v: &[usize]) -> bool {
    v.contains(&0)
}

pub fn some_b(u: &[usize], v: &[usize]) -> bool {
    u.contains(&1) || v.contains(&1)
}

pub fn in_ab_star(u: &[usize]) -> bool {
    u.len().is_multiple_of(2) && u.chunks(2).all(|c| c == [0, 1])
}

pub fn in_ab_plus(u: &[usize]) -> bool {
    !u.is_empty() && in_ab_star(u)
}

/// The n-th letter from the end is an a.
pub fn suffix_a_at(n: usize, u: &[usize]) -> bool {
    u.len() >= n && u[u.len() - n] == 0
}

pub fn one() -> Rational {
    Rational::one()
}
