mod common;

use common::*;
use genlstar::algebra::*;
use genlstar::automata::MooreMachine;
use genlstar::domain::SortedDomain;
use genlstar::learner::*;
use genlstar::teacher::builtin::{self, semigroup_teacher};
use genlstar::teacher::lasso::omega_reference;
use genlstar::teacher::*;
use genlstar::{Alphabet, Error, Word};
use proptest::prelude::*;

fn abc() -> Alphabet {
    Alphabet::from_chars("abc").unwrap()
}

fn lasso(u: &str, v: &str) -> Lasso {
    Lasso::new(w(u), w(v)).unwrap()
}

fn wilke_value(text: &str) -> FreeValue {
    let alpha = WilkeWeakAlphabet::new(ab());
    interpret_wilke_word(&alpha, &alpha.sorted().parse_word(text).unwrap()).unwrap()
}

fn expect_lasso(v: FreeValue) -> Lasso {
    match v {
        FreeValue::Lasso(l) => l,
        other => panic!("expected a lasso, got {other:?}"),
    }
}

#[test]
fn semigroup_words_interpret() {
    let s = SemigroupAlphabet::new(ab());
    let word = s.sorted().parse_word("a →a →b ←b →a").unwrap();
    assert_eq!(interpret_semigroup_word(&s, &word).unwrap(), w("baaba"));
    let s = SemigroupAlphabet::new(abc());
    assert_eq!(interpret_semigroup_word(&s, &s.sorted().parse_word("a").unwrap()).unwrap(), w("a"));
    assert_eq!(interpret_semigroup_word(&s, &s.sorted().parse_word("c ←b ←a").unwrap()).unwrap(), w("abc"));
    assert!(s.sorted().parse_word("").is_err());
}

#[test]
fn wilke_words_interpret() {
    let l = expect_lasso(wilke_value("a →b →a ω ←ω a ←ω a"));
    assert!(lasso_eq(&l, &lasso("aa", "aba")));
    assert!(lasso_eq(&expect_lasso(wilke_value("a ω")), &lasso("", "a")));
    // b →a folds to ba, and ω loops it.
    assert!(lasso_eq(&expect_lasso(wilke_value("b →a ω")), &lasso("", "ba")));
    assert_eq!(wilke_value("b →a"), FreeValue::Finite(w("ba")));
}

#[test]
fn linearizations() {
    let s = SemigroupAlphabet::new(abc());
    let target = w("abc");
    let lin = linearize_semigroup(&s, |u: &Word| *u == target);
    for text in ["a →b →c", "b ←a →c", "b →c ←a", "c ←b ←a"] {
        assert!(lin(&s.sorted().parse_word(text).unwrap()).unwrap(), "{text}");
    }
    assert!(!lin(&s.sorted().parse_word("a →c →b").unwrap()).unwrap());

    let never = linearize_semigroup(&s, |_: &Word| false);
    for u in abc().words_up_to(3).into_iter().skip(1) {
        assert!(!never(&s.left_only(&u).unwrap()).unwrap());
    }

    let alpha = WilkeWeakAlphabet::new(ab());
    let ab_omega = lasso("", "ab");
    let lin = linearize_wilke(&alpha, |_: &Word| false, |l: &Lasso| lasso_eq(l, &ab_omega));
    for text in ["a →b ω", "b →a ω ←ω a"] {
        assert!(lin(&alpha.sorted().parse_word(text).unwrap()).unwrap(), "{text}");
    }
    assert!(!lin(&alpha.sorted().parse_word("b →a ω").unwrap()).unwrap());
}

#[test]
fn left_only_words_cover_short_words() {
    let s = SemigroupAlphabet::new(ab());
    let even = |u: &Word| u.len().is_multiple_of(2);
    let lin = linearize_semigroup(&s, even);
    for u in words(2, 5).into_iter().skip(1) {
        let word = s.left_only(&u).unwrap();
        assert_eq!(interpret_semigroup_word(&s, &word).unwrap().0, u);
        assert_eq!(lin(&word).unwrap(), u.len() % 2 == 0);
    }
}

#[test]
fn lasso_eq_examples() {
    assert!(lasso_eq(&lasso("", "ab"), &lasso("ab", "ab")));
    assert!(lasso_eq(&lasso("", "a"), &lasso("", "aa")));
    // Unrolled: abab... vs baba...
    assert_ne!(lasso("", "ab").unroll(1), lasso("", "ba").unroll(1));
    assert!(!lasso_eq(&lasso("", "ab"), &lasso("", "ba")));
}

fn raw_lasso() -> impl Strategy<Value = Lasso> {
    (
        proptest::collection::vec(0usize..2, 0..4),
        proptest::collection::vec(0usize..2, 1..4),
        1usize..3,
        0usize..3,
    )
        .prop_map(|(u, v, pump, shift)| {
            // Pump the cycle and move part of it into the spoke.
            let cycle: Vec<usize> = v.iter().copied().cycle().take(v.len() * pump).collect();
            let mut spoke = u.clone();
            let s = shift % cycle.len();
            spoke.extend_from_slice(&cycle[..s]);
            let mut rotated = cycle[s..].to_vec();
            rotated.extend_from_slice(&cycle[..s]);
            Lasso::new(Word(spoke), Word(rotated)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lasso_eq_is_an_equivalence(x in raw_lasso(), y in raw_lasso(), z in raw_lasso()) {
        prop_assert!(lasso_eq(&x, &x));
        prop_assert_eq!(lasso_eq(&x, &y), lasso_eq(&y, &x));
        if lasso_eq(&x, &y) && lasso_eq(&y, &z) {
            prop_assert!(lasso_eq(&x, &z));
        }
        // Long unrollings decide equality independently.
        prop_assert_eq!(lasso_eq(&x, &y), x.unroll(64) == y.unroll(64));
        prop_assert!(lasso_eq(&x, &x.normalize()));
    }

    #[test]
    fn omega_teachers_respect_lasso_eq(
        u in proptest::collection::vec(0usize..2, 0..4),
        v in proptest::collection::vec(0usize..2, 1..4),
        pump in 1usize..4,
        shift in 0usize..4,
    ) {
        let l = Lasso::new(Word(u.clone()), Word(v.clone())).unwrap();
        let cycle: Vec<usize> = v.iter().copied().cycle().take(v.len() * pump).collect();
        let s = shift % cycle.len();
        let mut spoke = u.clone();
        spoke.extend_from_slice(&cycle[..s]);
        let mut rotated = cycle[s..].to_vec();
        rotated.extend_from_slice(&cycle[..s]);
        let m = Lasso::new(Word(spoke), Word(rotated)).unwrap();
        prop_assert!(lasso_eq(&l, &m));
        for target in [builtin::inf_a().unwrap(), builtin::eventually_b().unwrap()] {
            let alpha = target.alphabet().clone();
            let t = wilke_teacher(target);
            prop_assert_eq!(
                t.membership(&alpha.lasso_word(&l).unwrap()).unwrap(),
                t.membership(&alpha.lasso_word(&m).unwrap()).unwrap()
            );
        }
    }
}

fn learn_semigroup(lang: MooreMachine) -> (FiniteSemigroup, LinearizedTeacher) {
    let t = semigroup_teacher(lang).unwrap();
    let r = learn(SortedDomain::new(t.alphabet().sorted().clone()), &t, &LearnerConfig::new(CounterexampleMode::Prefix)).unwrap();
    (extract_syntactic_semigroup(&r.hypothesis, t.alphabet()).unwrap(), t)
}

/// The extracted semigroup induces exactly the oracle's congruence classes.
fn assert_matches_congruence(s: &FiniteSemigroup, k: usize, member: impl Fn(&[usize]) -> bool + Copy) {
    let (classes, class_of) = context_congruence(k, 4, 6, member);
    assert_eq!(s.size(), classes);
    for (u, &cu) in &class_of {
        for (v, &cv) in &class_of {
            assert_eq!(s.evaluate(u) == s.evaluate(v), cu == cv, "{u:?} vs {v:?}");
        }
        assert_eq!(s.is_accepting(s.evaluate(u).unwrap()), member(u));
    }
    assert!(s.is_associative());
}

#[test]
fn all_words_give_the_trivial_semigroup() {
    let (s, _) = learn_semigroup(builtin::sigma_star());
    assert_eq!(s.size(), 1);
    assert_matches_congruence(&s, 2, |_| true);
}

#[test]
fn even_length_gives_z2() {
    let (s, _) = learn_semigroup(builtin::even_a_length());
    let even = |u: &[usize]| u.len().is_multiple_of(2);
    assert_matches_congruence(&s, 1, even);
    let g = s.generator(0);
    assert_eq!(s.size(), 2);
    assert_ne!(s.mult(g, g), g);
    assert_eq!(s.mult(s.mult(g, g), g), g);
}

#[test]
fn ab_plus_matches_congruence() {
    let (s, _) = learn_semigroup(builtin::ab_plus());
    assert_matches_congruence(&s, 2, in_ab_plus);
}

#[test]
fn more_semigroups_match_congruence() {
    for n in 1..=3 {
        let (s, _) = learn_semigroup(builtin::suffix_a_at(n).unwrap());
        assert_matches_congruence(&s, 2, |u| suffix_a_at(n, u));
    }
    let (s, _) = learn_semigroup(builtin::mod_counter(3).unwrap());
    assert_matches_congruence(&s, 2, |u| u.iter().filter(|&&x| x == 0).count() % 3 == 0);
}

#[test]
fn semigroup_json_layout() {
    let (s, _) = learn_semigroup(builtin::even_a_length());
    let j = s.to_json();
    assert_eq!(j["kind"], "semigroup");
    assert_eq!(j["size"], 2);
    assert_eq!(j["mult"].as_array().unwrap().len(), 2);
}

#[test]
fn extraction_needs_prepend_letters() {
    let alpha = SemigroupAlphabet::append_only(ab());
    let t = LinearizedTeacher::new(alpha.clone(), builtin::ab_plus()).unwrap();
    let r = learn(SortedDomain::new(alpha.sorted().clone()), &t, &LearnerConfig::new(CounterexampleMode::Prefix)).unwrap();
    // Learning works over the append-only presentation; extraction does not.
    for u in words(2, 6).into_iter().skip(1) {
        assert_eq!(r.hypothesis.accepts(&alpha.left_only(&u).unwrap()).unwrap(), in_ab_plus(&u));
    }
    assert!(matches!(extract_syntactic_semigroup(&r.hypothesis, &alpha), Err(Error::Extraction(_))));
}

fn learn_wilke(target: LassoOracleTarget) -> (WilkeAlgebra, WilkeWeakAlphabet) {
    let alpha = target.alphabet().clone();
    let r = learn(SortedDomain::new(alpha.sorted().clone()), &wilke_teacher(target), &LearnerConfig::new(CounterexampleMode::Prefix)).unwrap();
    let algebra = extract_wilke_algebra(&r.hypothesis, &alpha).unwrap();
    assert!(algebra.axiom_violation(4).is_none());
    (algebra, alpha)
}

#[test]
fn all_lassos_give_one_element_per_sort() {
    let alpha = WilkeWeakAlphabet::new(ab());
    let one = MooreMachine::new(ab(), 0, vec![vec![0, 0]], vec![false]).unwrap();
    let reference = omega_reference(&alpha, &one, false, |_, _| true).unwrap();
    let target = LassoOracleTarget::new(alpha, None, |_| true, reference).unwrap();
    let (algebra, _) = learn_wilke(target);
    assert_eq!((algebra.plus_size(), algebra.omega_size()), (1, 1));
}

#[test]
fn inf_a_algebra() {
    let (algebra, _) = learn_wilke(builtin::inf_a().unwrap());
    assert_eq!((algebra.plus_size(), algebra.omega_size()), lasso_congruence(2, 4, 2, inf_a));
    let a = algebra.generator(0);
    let b = algebra.generator(1);
    let accept = algebra.omega_power(a);
    assert!(algebra.is_accepting(accept));
    assert!(!algebra.is_accepting(algebra.omega_power(b)));
    assert_eq!(algebra.mixed(b, accept), accept);
    for (u, v) in lassos(2, 3, 3) {
        let l = Lasso::new(Word(u.clone()), Word(v.clone())).unwrap();
        assert_eq!(algebra.is_accepting(algebra.evaluate_lasso(&l)), inf_a(&u, &v));
    }
}

#[test]
fn eventually_b_algebra() {
    let (algebra, _) = learn_wilke(builtin::eventually_b().unwrap());
    assert_eq!((algebra.plus_size(), algebra.omega_size()), lasso_congruence(2, 4, 2, some_b));
    for (u, v) in lassos(2, 3, 3) {
        let l = Lasso::new(Word(u.clone()), Word(v.clone())).unwrap();
        assert_eq!(algebra.is_accepting(algebra.evaluate_lasso(&l)), some_b(&u, &v));
    }
    let j = algebra.to_json();
    assert_eq!(j["kind"], "wilke");
    assert_eq!(j["plus"], algebra.plus_size());
}

#[test]
fn wilke_axioms_detect_broken_tables() {
    let sound = WilkeAlgebra::new(vec![vec![0]], vec![vec![0, 1]], vec![0], vec![0], vec![true, false]).unwrap();
    assert!(sound.axiom_violation(4).is_none());
    // Z_2 whose ω-power ignores the square: x^ω differs from (xx)^ω.
    let broken = WilkeAlgebra::new(
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![1, 0]],
        vec![0, 1],
        vec![0],
        vec![true, false],
    )
    .unwrap();
    assert!(broken.axiom_violation(4).is_some());
}
