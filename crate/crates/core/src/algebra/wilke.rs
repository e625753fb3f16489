use serde_json::{json, Value};

use crate::algebra::presentation::{interpret_wilke_word, FreeValue, Lasso, WilkeWeakAlphabet, OMEGA, PLUS};
use crate::algebra::witness_lists;
use crate::alphabet::{Letter, Word};
use crate::automata::SortedMachine;
use crate::error::{Error, Result};

/// A finite Wilke algebra: a semigroup of finite-word classes, a set of
/// infinite-word classes, the mixed product and the ω-power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WilkeAlgebra {
    product: Vec<Vec<usize>>,
    mixed: Vec<Vec<usize>>,
    omega_power: Vec<usize>,
    generators: Vec<usize>,
    accepting: Vec<bool>,
}

impl WilkeAlgebra {
    pub fn new(
        product: Vec<Vec<usize>>,
        mixed: Vec<Vec<usize>>,
        omega_power: Vec<usize>,
        generators: Vec<usize>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let p = product.len();
        let o = accepting.len();
        let ok = p > 0
            && o > 0
            && product.iter().all(|r| r.len() == p && r.iter().all(|&x| x < p))
            && mixed.len() == p
            && mixed.iter().all(|r| r.len() == o && r.iter().all(|&x| x < o))
            && omega_power.len() == p
            && omega_power.iter().all(|&x| x < o)
            && generators.iter().all(|&g| g < p);
        if !ok {
            return Err(Error::InvalidMachine("inconsistent Wilke algebra tables".into()));
        }
        Ok(WilkeAlgebra {
            product,
            mixed,
            omega_power,
            generators,
            accepting,
        })
    }

    pub fn plus_size(&self) -> usize {
        self.product.len()
    }

    pub fn omega_size(&self) -> usize {
        self.accepting.len()
    }

    pub fn product(&self, s: usize, t: usize) -> usize {
        self.product[s][t]
    }

    pub fn mixed(&self, s: usize, z: usize) -> usize {
        self.mixed[s][z]
    }

    pub fn omega_power(&self, s: usize) -> usize {
        self.omega_power[s]
    }

    pub fn generator(&self, a: Letter) -> usize {
        self.generators[a]
    }

    pub fn is_accepting(&self, z: usize) -> bool {
        self.accepting[z]
    }

    /// Class of a non-empty finite word.
    pub fn evaluate_finite(&self, u: &[Letter]) -> Option<usize> {
        let (&first, rest) = u.split_first()?;
        Some(rest.iter().fold(self.generators[first], |x, &a| self.product[x][self.generators[a]]))
    }

    /// Class of `spoke · cycle^ω`.
    pub fn evaluate_lasso(&self, l: &Lasso) -> usize {
        let loop_class = self.evaluate_finite(&l.cycle).expect("lasso cycles are non-empty");
        let z = self.omega_power[loop_class];
        match self.evaluate_finite(&l.spoke) {
            Some(s) => self.mixed[s][z],
            None => z,
        }
    }

    fn power(&self, s: usize, n: usize) -> usize {
        (1..n).fold(s, |x, _| self.product[x][s])
    }

    /// Checks `(st)u = s(tu)`, `(st)z = s(tz)`, `s(ts)^ω = (st)^ω` and
    /// `(s^n)^ω = s^ω` for `1 ≤ n ≤ max_n`, returning the first violation.
    pub fn axiom_violation(&self, max_n: usize) -> Option<String> {
        let p = self.plus_size();
        for s in 0..p {
            for t in 0..p {
                for u in 0..p {
                    if self.product(self.product(s, t), u) != self.product(s, self.product(t, u)) {
                        return Some(format!("(st)u ≠ s(tu) at s={s}, t={t}, u={u}"));
                    }
                }
                for z in 0..self.omega_size() {
                    if self.mixed(self.product(s, t), z) != self.mixed(s, self.mixed(t, z)) {
                        return Some(format!("(st)z ≠ s(tz) at s={s}, t={t}, z={z}"));
                    }
                }
                if self.mixed(s, self.omega_power(self.product(t, s))) != self.omega_power(self.product(s, t)) {
                    return Some(format!("s(ts)^ω ≠ (st)^ω at s={s}, t={t}"));
                }
            }
            for n in 1..=max_n {
                if self.omega_power(self.power(s, n)) != self.omega_power(s) {
                    return Some(format!("(s^{n})^ω ≠ s^ω at s={s}"));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "wilke",
            "plus": self.plus_size(),
            "omega": self.omega_size(),
            "product": self.product,
            "mixed": self.mixed,
            "omega_power": self.omega_power,
            "generators": self.generators,
            "accepting": (0..self.omega_size()).filter(|&z| self.accepting[z]).collect::<Vec<_>>(),
        })
    }
}

/// Reads a Wilke algebra off a minimal machine over the weak presentation.
/// `+` elements are the `+` states, `ω` elements the `ω` states (numbered
/// within their sort). Every operation is evaluated on canonical instruction
/// words for several witnesses per state; any disagreement, or a failed
/// axiom with `n ≤ 4`, is reported as an extraction error.
pub fn extract_wilke_algebra(q: &SortedMachine, alpha: &WilkeWeakAlphabet) -> Result<WilkeAlgebra> {
    if q.alphabet() != alpha.sorted() {
        return Err(Error::AlphabetMismatch("machine is not over the Wilke presentation".into()));
    }
    let lists = witness_lists(q, 4);
    if let Some(x) = lists.iter().position(Vec::is_empty) {
        return Err(Error::Extraction(format!("state {x} is unreachable")));
    }
    let plus = q.states_of_sort(PLUS);
    let omega = q.states_of_sort(OMEGA);
    if omega.is_empty() {
        return Err(Error::Extraction("machine has no ω-sort states".into()));
    }

    let mut finite: Vec<Vec<Word>> = Vec::new();
    for &x in &plus {
        let ws = lists[x]
            .iter()
            .map(|w| match interpret_wilke_word(alpha, w)? {
                FreeValue::Finite(u) => Ok(u),
                FreeValue::Lasso(_) => Err(Error::InternalConsistency("+ state reached by a lasso".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        finite.push(ws);
    }
    let mut lassos: Vec<Vec<Lasso>> = Vec::new();
    for &z in &omega {
        let ls = lists[z]
            .iter()
            .map(|w| match interpret_wilke_word(alpha, w)? {
                FreeValue::Lasso(l) => Ok(l),
                FreeValue::Finite(_) => Err(Error::InternalConsistency("ω state reached by a finite word".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        lassos.push(ls);
    }

    let run_finite = |u: &[Letter]| -> Result<usize> { Ok(q.local_index(q.state_after(&alpha.finite_word(u)?)?)) };
    let run_lasso = |l: &Lasso| -> Result<usize> { Ok(q.local_index(q.state_after(&alpha.lasso_word(l)?)?)) };

    for (i, us) in finite.iter().enumerate() {
        for u in us {
            if run_finite(u)? != i {
                return Err(Error::Extraction(format!("word {u} does not reach + element {i} when appended")));
            }
        }
    }
    for (i, ls) in lassos.iter().enumerate() {
        for l in ls {
            if run_lasso(l)? != i {
                return Err(Error::Extraction(format!("lasso {l} does not reach ω element {i} canonically")));
            }
        }
    }

    fn agree(values: impl Iterator<Item = Result<usize>>, what: &dyn Fn() -> String) -> Result<usize> {
        let mut out = None;
        for v in values {
            let v = v?;
            match out {
                None => out = Some(v),
                Some(prev) if prev != v => {
                    return Err(Error::Extraction(format!("{} depends on the witnesses: {prev} vs {v}", what())))
                }
                Some(_) => {}
            }
        }
        out.ok_or_else(|| Error::Extraction(format!("{} has no witnesses", what())))
    }

    let p = plus.len();
    let o = omega.len();
    let mut product = vec![vec![0; p]; p];
    let mut mixed = vec![vec![0; o]; p];
    let mut omega_power = vec![0; p];
    for s in 0..p {
        for t in 0..p {
            product[s][t] = agree(
                finite[s]
                    .iter()
                    .flat_map(|us| finite[t].iter().map(move |ut| us.concat(ut)))
                    .map(|u| run_finite(&u)),
                &|| format!("product of + elements {s} and {t}"),
            )?;
        }
        for z in 0..o {
            mixed[s][z] = agree(
                finite[s]
                    .iter()
                    .flat_map(|us| {
                        lassos[z].iter().map(move |l| Lasso {
                            spoke: us.concat(&l.spoke),
                            cycle: l.cycle.clone(),
                        })
                    })
                    .map(|l| run_lasso(&l)),
                &|| format!("mixed product of + element {s} and ω element {z}"),
            )?;
        }
        omega_power[s] = agree(
            finite[s].iter().map(|u| {
                run_lasso(&Lasso {
                    spoke: Word::empty(),
                    cycle: u.clone(),
                })
            }),
            &|| format!("ω-power of + element {s}"),
        )?;
    }
    let generators = (0..alpha.base().len()).map(|a| q.local_index(q.initial(a))).collect();
    let accepting = omega.iter().map(|&z| q.output(z)).collect();
    let algebra = WilkeAlgebra::new(product, mixed, omega_power, generators, accepting)?;
    if let Some(v) = algebra.axiom_violation(4) {
        return Err(Error::Extraction(v));
    }
    Ok(algebra)
}
