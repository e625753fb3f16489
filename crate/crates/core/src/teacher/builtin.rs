//! Named target languages.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{SemigroupAlphabet, WilkeWeakAlphabet};
use crate::alphabet::Alphabet;
use crate::automata::{MooreMachine, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::linalg::rational;
use crate::teacher::lasso::{omega_reference, LassoOracleTarget, LinearizedTeacher};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    /// A regular language, given by a DFA.
    Dfa,
    /// A rational-valued function on words.
    Wfa,
    /// A language of non-empty words, learned through its linearization.
    Semigroup,
    /// An ω-language, learned through lassos.
    Omega,
}

#[derive(Debug, Clone)]
pub enum Target {
    Dfa(MooreMachine),
    Wfa(WeightedAutomaton),
    Semigroup(MooreMachine),
    Omega(LassoOracleTarget),
}

impl Target {
    pub fn kind(&self) -> TargetKind {
        match self {
            Target::Dfa(_) => TargetKind::Dfa,
            Target::Wfa(_) => TargetKind::Wfa,
            Target::Semigroup(_) => TargetKind::Semigroup,
            Target::Omega(_) => TargetKind::Omega,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: TargetKind,
    pub description: &'static str,
}

/// Every builtin under its default name. `mod-K` and `suffix-a-at-N` also
/// accept other positive parameters.
pub fn builtin_targets() -> Vec<CatalogEntry> {
    use TargetKind::*;
    let e = |name, kind, description| CatalogEntry { name, kind, description };
    vec![
        e("sigma-star", Dfa, "all words over {a,b}"),
        e("empty", Dfa, "no words over {a,b}"),
        e("ends-in-a", Dfa, "words over {a,b} ending in a"),
        e("ab-star", Dfa, "(ab)*"),
        e("mod-3", Dfa, "words over {a,b} whose number of a's is divisible by 3 (mod-K for any K)"),
        e("suffix-a-at-3", Dfa, "words over {a,b} with an a at position 3 from the end (suffix-a-at-N for any N)"),
        e("count-a", Wfa, "number of a's in a word over {a,b}"),
        e("even-a-length", Semigroup, "a^(2k), k ≥ 1, over {a}"),
        e("ab-plus", Semigroup, "(ab)^+ over {a,b}"),
        e("inf-a", Omega, "infinite words over {a,b} with infinitely many a's"),
        e("eventually-b", Omega, "infinite words over {a,b} containing some b"),
    ]
}

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").expect("static alphabet")
}

fn dfa(alphabet: Alphabet, transitions: Vec<Vec<usize>>, output: Vec<bool>) -> MooreMachine {
    MooreMachine::new(alphabet, 0, transitions, output).expect("builtin machines are well formed")
}

pub fn sigma_star() -> MooreMachine {
    dfa(ab(), vec![vec![0, 0]], vec![true])
}

pub fn empty_language() -> MooreMachine {
    dfa(ab(), vec![vec![0, 0]], vec![false])
}

pub fn ends_in_a() -> MooreMachine {
    dfa(ab(), vec![vec![1, 0], vec![1, 0]], vec![false, true])
}

pub fn ab_star() -> MooreMachine {
    dfa(ab(), vec![vec![1, 2], vec![2, 0], vec![2, 2]], vec![true, false, false])
}

/// Number of a's divisible by `k`.
pub fn mod_counter(k: usize) -> Result<MooreMachine> {
    if k == 0 {
        return Err(Error::InvalidTarget("mod-K needs K ≥ 1".into()));
    }
    Ok(dfa(
        ab(),
        (0..k).map(|q| vec![(q + 1) % k, q]).collect(),
        (0..k).map(|q| q == 0).collect(),
    ))
}

/// `Σ* a Σ^(n-1)`: the n-th letter from the end is an a. The DFA remembers
/// the last `n` letters, so it has `2^n` states, all of them needed.
pub fn suffix_a_at(n: usize) -> Result<MooreMachine> {
    if n == 0 || n > 16 {
        return Err(Error::InvalidTarget("suffix-a-at-N needs 1 ≤ N ≤ 16".into()));
    }
    let size = 1usize << n;
    let mask = size - 1;
    Ok(dfa(
        ab(),
        (0..size).map(|q| vec![((q << 1) | 1) & mask, (q << 1) & mask]).collect(),
        (0..size).map(|q| q & (1 << (n - 1)) != 0).collect(),
    ))
}

pub fn count_a() -> WeightedAutomaton {
    let m = |rows: [[i64; 2]; 2]| rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect();
    WeightedAutomaton::new(
        ab(),
        vec![rational(1), rational(0)],
        vec![m([[1, 1], [0, 1]]), m([[1, 0], [0, 1]])],
        vec![rational(0), rational(1)],
    )
    .expect("builtin machines are well formed")
}

/// `a^(2k)` over `{a}`; as a subset of `I^+` the empty word does not count.
pub fn even_a_length() -> MooreMachine {
    dfa(Alphabet::from_chars("a").expect("static alphabet"), vec![vec![1], vec![0]], vec![true, false])
}

/// `(ab)^+`.
pub fn ab_plus() -> MooreMachine {
    dfa(
        ab(),
        vec![vec![1, 3], vec![3, 2], vec![1, 3], vec![3, 3]],
        vec![false, false, true, false],
    )
}

/// Infinitely many a's.
pub fn inf_a() -> Result<LassoOracleTarget> {
    let alpha = WilkeWeakAlphabet::new(ab());
    let seen_a = dfa(ab(), vec![vec![1, 0], vec![1, 1]], vec![false, true]);
    let reference = omega_reference(&alpha, &seen_a, false, |_, y| y[0] == 1)?;
    LassoOracleTarget::new(alpha, None, |l| l.cycle.contains(&0), reference)
}

/// At least one b.
pub fn eventually_b() -> Result<LassoOracleTarget> {
    let alpha = WilkeWeakAlphabet::new(ab());
    let seen_b = dfa(ab(), vec![vec![0, 1], vec![1, 1]], vec![false, true]);
    let reference = omega_reference(&alpha, &seen_b, false, |x, y| y[x[0]] == 1)?;
    LassoOracleTarget::new(
        alpha,
        None,
        |l| l.spoke.contains(&1) || l.cycle.contains(&1),
        reference,
    )
}

fn parameter(name: &str, prefix: &str) -> Option<Result<usize>> {
    let rest = name.strip_prefix(prefix)?;
    Some(
        rest.parse()
            .map_err(|_| Error::InvalidTarget(format!("bad parameter in builtin {name:?}"))),
    )
}

pub fn builtin(name: &str) -> Result<Target> {
    if let Some(k) = parameter(name, "mod-") {
        return Ok(Target::Dfa(mod_counter(k?)?));
    }
    if let Some(n) = parameter(name, "suffix-a-at-") {
        return Ok(Target::Dfa(suffix_a_at(n?)?));
    }
    Ok(match name {
        "sigma-star" => Target::Dfa(sigma_star()),
        "empty" => Target::Dfa(empty_language()),
        "ends-in-a" => Target::Dfa(ends_in_a()),
        "ab-star" => Target::Dfa(ab_star()),
        "count-a" => Target::Wfa(count_a()),
        "even-a-length" => Target::Semigroup(even_a_length()),
        "ab-plus" => Target::Semigroup(ab_plus()),
        "inf-a" => Target::Omega(inf_a()?),
        "eventually-b" => Target::Omega(eventually_b()?),
        _ => return Err(Error::InvalidTarget(format!("no builtin target named {name:?}"))),
    })
}

/// Teacher for a builtin semigroup language over the full presentation.
pub fn semigroup_teacher(language: MooreMachine) -> Result<LinearizedTeacher> {
    LinearizedTeacher::new(SemigroupAlphabet::new(language.alphabet().clone()), language)
}

/// A minimal DFA obtained by minimizing a uniformly random machine with at
/// most `max_states` states over `alphabet`.
pub fn random_dfa(seed: u64, max_states: usize, alphabet: &Alphabet) -> MooreMachine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_states.max(1));
    let transitions = (0..n)
        .map(|_| alphabet.letters().map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let output = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    MooreMachine::new(alphabet.clone(), 0, transitions, output)
        .expect("random machine is well formed")
        .minimize()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete() {
        let entries = builtin_targets();
        assert!(entries.len() >= 9);
        for e in entries {
            let t = builtin(e.name).unwrap();
            assert_eq!(t.kind(), e.kind, "{}", e.name);
        }
        assert!(builtin("nope").is_err());
        assert!(builtin("mod-0").is_err());
        assert!(builtin("mod-x").is_err());
    }

    #[test]
    fn suffix_family_sizes() {
        for n in 1..=4 {
            let m = suffix_a_at(n).unwrap();
            assert_eq!(m.minimize().state_count(), 1 << n);
        }
    }

    #[test]
    fn random_dfas_are_minimal_and_seeded() {
        let ab = ab();
        for seed in 0..20 {
            let m = random_dfa(seed, 12, &ab);
            assert!(m.minimize().is_isomorphic(&m));
            assert_eq!(m, random_dfa(seed, 12, &ab));
        }
    }
}
