//! Finite monoid engine: Rees quotients of the free monoid, quotients by a
//! word congruence, multiplication tables, structural predicates and
//! brute-force identity satisfaction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identities::Identity;
use crate::words::{factors, is_reduced, reduce, render, Letter, Word};

/// A finite monoid given by its multiplication table.
///
/// Elements are indexed; `table[a][b]` is the product index. When the monoid
/// arises as a quotient of the free monoid, element names render the class
/// representatives (`"1"` for the identity, `"0"` for the zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMonoid {
    pub elements: Vec<String>,
    pub identity: usize,
    pub zero: Option<usize>,
    pub table: Vec<Vec<usize>>,
    /// Per-element weights certifying products as zero: whenever the weights
    /// of the factors of a product sum above `cap`, the product is the zero
    /// element. Construction-time knowledge; not part of the wire format.
    #[serde(skip)]
    zero_norm: Option<ZeroNorm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroNorm {
    weights: Vec<u64>,
    cap: u64,
}

impl FiniteMonoid {
    /// Builds a monoid from raw parts; no zero certificate is attached, so
    /// satisfaction checks run unpruned. Use [`validate`](Self::validate) to
    /// check the table.
    pub fn new(
        elements: Vec<String>,
        identity: usize,
        zero: Option<usize>,
        table: Vec<Vec<usize>>,
    ) -> FiniteMonoid {
        FiniteMonoid {
            elements,
            identity,
            zero,
            table,
            zero_norm: None,
        }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Structural validation; returns a list of violations, empty when the
    /// table is a monoid with the declared identity and zero.
    pub fn validate(&self) -> Vec<String> {
        let n = self.size();
        let mut problems = Vec::new();
        if self.table.len() != n {
            problems.push(format!("table has {} rows, expected {n}", self.table.len()));
            return problems;
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != n {
                problems.push(format!("row {i} has {} entries, expected {n}", row.len()));
                return problems;
            }
            if let Some(&bad) = row.iter().find(|&&e| e >= n) {
                problems.push(format!("row {i} references element {bad} out of range"));
                return problems;
            }
        }
        if self.identity >= n {
            problems.push(format!("identity index {} out of range", self.identity));
            return problems;
        }
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                problems.push(format!(
                    "identity fails at {:?}",
                    self.element_name(a)
                ));
            }
        }
        if let Some(z) = self.zero {
            if z >= n {
                problems.push(format!("zero index {z} out of range"));
                return problems;
            }
            for a in 0..n {
                if self.mul(z, a) != z || self.mul(a, z) != z {
                    problems.push(format!("zero fails at {:?}", self.element_name(a)));
                }
            }
        }
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        problems.push(format!(
                            "associativity fails at ({:?}, {:?}, {:?})",
                            self.element_name(a),
                            self.element_name(b),
                            self.element_name(c)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        problems
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&a| self.mul(a, a) == a).collect()
    }

    pub fn idempotents_commute(&self) -> bool {
        let idem = self.idempotents();
        idem.iter()
            .all(|&a| idem.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every element has a power `a^n = a^{n+1}` with `n <= |M|`.
    pub fn is_aperiodic(&self) -> bool {
        (0..self.size()).all(|a| {
            let mut power = a;
            for _ in 0..self.size() {
                let next = self.mul(power, a);
                if next == power {
                    return true;
                }
                power = next;
            }
            false
        })
    }
}

/// A congruence on the free monoid presented by a normal-form map.
pub trait Congruence {
    /// Canonical representative of the class of `w`.
    fn normal_form(&self, w: &Word) -> Word;
    fn name(&self) -> &'static str;
    /// True when normal forms keep the number of maximal letter-powers of
    /// their argument; enables the quotient's zero certificate.
    fn preserves_power_count(&self) -> bool {
        false
    }
}

/// The trivial congruence: every word is its own class.
pub struct TrivialCongruence;

impl Congruence for TrivialCongruence {
    fn normal_form(&self, w: &Word) -> Word {
        w.clone()
    }
    fn name(&self) -> &'static str {
        "trivial"
    }
    fn preserves_power_count(&self) -> bool {
        true
    }
}

/// The congruence τ: classes are identified by reduced forms.
pub struct TauCongruence;

impl Congruence for TauCongruence {
    fn normal_form(&self, w: &Word) -> Word {
        reduce(w)
    }
    fn name(&self) -> &'static str {
        "tau"
    }
    fn preserves_power_count(&self) -> bool {
        // reduce only rewrites exponents inside maximal runs
        true
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("word set must be non-empty")]
    EmptyWordSet,
    #[error("generating words must be non-empty")]
    EmptyGenerator,
    #[error("the empty word's class is missing from the set")]
    MissingIdentityClass,
    #[error("word {0} is not in normal form")]
    NotNormalForm(String),
    #[error("set is not closed: factor {factor} of {word} normalizes to {normal_form}, not in the set")]
    NotClosed {
        word: String,
        factor: String,
        normal_form: String,
    },
}

/// Number of maximal letter-powers, the coarse length used by the τ-quotient
/// zero certificate.
fn power_count(w: &Word) -> usize {
    w.max_powers().len()
}

/// Rees quotient of the free monoid modulo `rho`, over the ideal of classes
/// outside `classes`: elements are the given normal forms plus an explicit
/// zero; the product of `u` and `v` is the class of `uv` when it lies in the
/// set, and zero otherwise.
///
/// Requires every member to be in `rho` normal form, the empty word to be a
/// member, and the set to be closed under taking factors followed by
/// normalization.
pub fn s_rho_quotient(
    classes: &BTreeSet<Word>,
    rho: &dyn Congruence,
) -> Result<FiniteMonoid, QuotientError> {
    if classes.is_empty() {
        return Err(QuotientError::EmptyWordSet);
    }
    if !classes.contains(&Word::empty()) {
        return Err(QuotientError::MissingIdentityClass);
    }
    for w in classes {
        if &rho.normal_form(w) != w {
            return Err(QuotientError::NotNormalForm(render(w)));
        }
        for f in factors(w) {
            let nf = rho.normal_form(&f);
            if !classes.contains(&nf) {
                return Err(QuotientError::NotClosed {
                    word: render(w),
                    factor: render(&f),
                    normal_form: render(&nf),
                });
            }
        }
    }

    // BTreeSet iteration is shortlex, so the empty word is first and the
    // element order is the stable (length, lexicographic) one; zero last.
    let words: Vec<Word> = classes.iter().cloned().collect();
    let mut elements: Vec<String> = words.iter().map(render).collect();
    let zero = elements.len();
    elements.push("0".to_string());
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let n = elements.len();
    let mut table = vec![vec![zero; n]; n];
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            let nf = rho.normal_form(&u.concat(v));
            table[i][j] = index.get(&nf).copied().unwrap_or(zero);
        }
    }

    // Zero certificate. Concatenating k non-identity words w_1..w_k gives a
    // word with at least sum(powers(w_i) - 1) + 1 maximal powers (boundary
    // runs may merge). When the congruence preserves power counts, any
    // product whose bound exceeds the maximum power count over the set is
    // outside it, hence zero.
    let zero_norm = rho.preserves_power_count().then(|| {
        let cap = (words.iter().map(power_count).max().unwrap_or(0) as u64).saturating_sub(1);
        let mut weights: Vec<u64> = words
            .iter()
            .map(|w| (power_count(w) as u64).saturating_sub(1))
            .collect();
        weights.push(cap + 1); // the zero element forces the bound
        ZeroNorm { weights, cap }
    });

    Ok(FiniteMonoid {
        elements,
        identity: 0,
        zero: Some(zero),
        table,
        zero_norm,
    })
}

/// The monoid `S(w_1, .., w_k)`: all factors of the given words, with
/// concatenation collapsing every non-factor to zero.
pub fn rees_quotient(generators: &[Word]) -> Result<FiniteMonoid, QuotientError> {
    if generators.is_empty() {
        return Err(QuotientError::EmptyWordSet);
    }
    if generators.iter().any(Word::is_empty) {
        return Err(QuotientError::EmptyGenerator);
    }
    let mut all = BTreeSet::new();
    for w in generators {
        all.extend(factors(w));
    }
    let mut monoid = s_rho_quotient(&all, &TrivialCongruence)?;
    // Plain factors admit the sharper length certificate.
    let words: Vec<&Word> = all.iter().collect();
    let cap = words.iter().map(|w| w.len()).max().unwrap_or(0) as u64;
    let mut weights: Vec<u64> = words.iter().map(|w| w.len() as u64).collect();
    weights.push(cap + 1);
    monoid.zero_norm = Some(ZeroNorm { weights, cap });
    Ok(monoid)
}

/// The τ-quotient monoid on a factor-closed set of reduced words.
pub fn tau_quotient(reduced: &BTreeSet<Word>) -> Result<FiniteMonoid, QuotientError> {
    for w in reduced {
        if !is_reduced(w) {
            return Err(QuotientError::NotNormalForm(render(w)));
        }
    }
    s_rho_quotient(reduced, &TauCongruence)
}

/// Reduced forms of all factors of `x z y x^k t y^l` for `k <= k_max`,
/// `l <= l_max`, together with a stabilization flag: whether the set equals
/// the one for `(k_max - 1, l_max - 1)`.
pub fn saturate_j_generator(k_max: u32, l_max: u32) -> (BTreeSet<Word>, bool) {
    let build = |k_max: u32, l_max: u32| -> BTreeSet<Word> {
        let mut set = BTreeSet::new();
        if k_max == 0 || l_max == 0 {
            return set;
        }
        let (x, z, y, t) = (
            Letter::new('x'),
            Letter::new('z'),
            Letter::new('y'),
            Letter::new('t'),
        );
        for k in 1..=k_max {
            for l in 1..=l_max {
                let mut letters = vec![x, z, y];
                letters.extend(std::iter::repeat_n(x, k as usize));
                letters.push(t);
                letters.extend(std::iter::repeat_n(y, l as usize));
                let word = Word::from_letters(letters);
                for f in factors(&word) {
                    set.insert(reduce(&f));
                }
            }
        }
        set
    };
    let current = build(k_max, l_max);
    let stabilized = if k_max >= 2 && l_max >= 2 {
        current == build(k_max - 1, l_max - 1)
    } else {
        false
    };
    (current, stabilized)
}

/// Assignment of monoid elements to letters.
pub type ElementSubstitution = BTreeMap<Letter, usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("letter {0} has no assigned element")]
    UnmappedLetter(Letter),
}

/// Left-to-right table product of `w` under `s`; the empty word evaluates to
/// the identity element.
pub fn evaluate(m: &FiniteMonoid, w: &Word, s: &ElementSubstitution) -> Result<usize, EvalError> {
    let mut acc = m.identity;
    for &l in w.iter() {
        let &e = s.get(&l).ok_or(EvalError::UnmappedLetter(l))?;
        acc = m.mul(acc, e);
    }
    Ok(acc)
}

/// Outcome of a brute-force satisfaction check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Satisfaction {
    pub holds: bool,
    /// First falsifying substitution in the deterministic enumeration order.
    pub witness: Option<ElementSubstitution>,
}

/// Universal satisfaction of `id` in `m`: both sides evaluate equally under
/// every assignment of elements to the identity's letters. Enumeration is
/// mixed-radix over element indices with the letters in sorted order; the
/// reported witness is the first counterexample in that order.
pub fn satisfies(m: &FiniteMonoid, id: &Identity) -> Satisfaction {
    let letters: Vec<Letter> = id.content().into_iter().collect();
    let lhs = id.lhs();
    let rhs = id.rhs();

    // Occurrence counts per letter feed the zero certificate: once the
    // partial weight sum of both sides exceeds the cap, every completion
    // sends both sides to zero and the whole subtree can be skipped.
    let occ_l: Vec<u64> = letters
        .iter()
        .map(|&l| crate::words::occurrences(lhs, l) as u64)
        .collect();
    let occ_r: Vec<u64> = letters
        .iter()
        .map(|&l| crate::words::occurrences(rhs, l) as u64)
        .collect();

    let mut assignment = vec![0usize; letters.len()];
    let mut search = Search {
        m,
        letters: &letters,
        occ_l: &occ_l,
        occ_r: &occ_r,
        lhs,
        rhs,
        assignment: &mut assignment,
    };
    if let Some(witness) = search.run(0, 0, 0) {
        return Satisfaction {
            holds: false,
            witness: Some(witness),
        };
    }
    Satisfaction {
        holds: true,
        witness: None,
    }
}

struct Search<'a> {
    m: &'a FiniteMonoid,
    letters: &'a [Letter],
    occ_l: &'a [u64],
    occ_r: &'a [u64],
    lhs: &'a Word,
    rhs: &'a Word,
    assignment: &'a mut Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, weight_l: u64, weight_r: u64) -> Option<ElementSubstitution> {
        let norm = self.m.zero_norm.as_ref();
        if depth == self.letters.len() {
            let sub: ElementSubstitution = self
                .letters
                .iter()
                .copied()
                .zip(self.assignment.iter().copied())
                .collect();
            let zero = self.m.zero.unwrap_or(usize::MAX);
            let side = |w: &Word, weight: u64| -> usize {
                if norm.is_some_and(|n| weight > n.cap) {
                    return zero;
                }
                evaluate(self.m, w, &sub).expect("substitution is total")
            };
            let l = side(self.lhs, weight_l);
            let r = side(self.rhs, weight_r);
            if l != r {
                return Some(sub);
            }
            return None;
        }
        for e in 0..self.m.size() {
            let (wl, wr) = match norm {
                Some(n) => (
                    weight_l + self.occ_l[depth] * n.weights[e],
                    weight_r + self.occ_r[depth] * n.weights[e],
                ),
                None => (0, 0),
            };
            // both sides forced to zero for every completion: skip subtree
            if let Some(n) = norm {
                if wl > n.cap && wr > n.cap {
                    continue;
                }
            }
            self.assignment[depth] = e;
            if let Some(witness) = self.run(depth + 1, wl, wr) {
                return Some(witness);
            }
        }
        None
    }
}

/// Per-identity satisfaction report.
pub fn satisfies_all<'a>(
    m: &FiniteMonoid,
    ids: &'a [Identity],
) -> Vec<(&'a Identity, Satisfaction)> {
    ids.iter().map(|id| (id, satisfies(m, id))).collect()
}

#[derive(Debug, Error)]
pub enum MonoidIoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid monoid: {0}")]
    Invalid(String),
}

pub fn to_json(m: &FiniteMonoid) -> String {
    serde_json::to_string_pretty(m).expect("monoid serializes")
}

/// Loads and fully validates a monoid from its JSON form.
pub fn from_json(text: &str) -> Result<FiniteMonoid, MonoidIoError> {
    let m: FiniteMonoid = serde_json::from_str(text)?;
    let problems = m.validate();
    if let Some(first) = problems.first() {
        return Err(MonoidIoError::Invalid(first.clone()));
    }
    Ok(m)
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "monoid with {} elements (identity {:?}, zero {:?})",
            self.size(),
            self.element_name(self.identity),
            self.zero.map(|z| self.element_name(z))
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{id_a, id_g, Identity};

    fn s(texts: &[&str]) -> FiniteMonoid {
        let words: Vec<Word> = texts.iter().map(|t| Word::lit(t)).collect();
        rees_quotient(&words).unwrap()
    }

    #[test]
    fn rees_sizes() {
        assert_eq!(s(&["xyx"]).size(), 7);
        assert_eq!(s(&["xzxyty"]).size(), 21);
        assert_eq!(s(&["x"]).size(), 3);
    }

    #[test]
    fn rees_structure() {
        let m = s(&["xyx"]);
        assert!(m.validate().is_empty());
        assert_eq!(
            m.elements,
            vec!["1", "x", "y", "xy", "yx", "xyx", "0"]
        );
        let idem: Vec<&str> = m.idempotents().iter().map(|&i| m.element_name(i)).collect();
        assert_eq!(idem, vec!["1", "0"]);
        assert!(m.idempotents_commute());
        assert!(m.is_aperiodic());
    }

    #[test]
    fn rees_products() {
        let m = s(&["xyx"]);
        let x = m.element_index("x").unwrap();
        let y = m.element_index("y").unwrap();
        let xy = m.element_index("xy").unwrap();
        let zero = m.zero.unwrap();
        assert_eq!(m.mul(x, y), xy);
        assert_eq!(m.mul(x, x), zero);
        assert_eq!(m.mul(m.identity, x), x);
    }

    #[test]
    fn group_is_not_aperiodic() {
        let z2 = FiniteMonoid {
            elements: vec!["1".into(), "g".into()],
            identity: 0,
            zero: None,
            table: vec![vec![0, 1], vec![1, 0]],
            zero_norm: None,
        };
        assert!(z2.validate().is_empty());
        assert!(!z2.is_aperiodic());
    }

    #[test]
    fn evaluate_examples() {
        let m = s(&["xyx"]);
        let x = Letter::new('x');
        let y = Letter::new('y');
        let sub: ElementSubstitution = [
            (x, m.element_index("x").unwrap()),
            (y, m.element_index("y").unwrap()),
        ]
        .into_iter()
        .collect();
        assert_eq!(
            evaluate(&m, &Word::lit("xyx"), &sub).unwrap(),
            m.element_index("xyx").unwrap()
        );
        assert_eq!(
            evaluate(&m, &Word::empty(), &ElementSubstitution::new()).unwrap(),
            m.identity
        );
        assert_eq!(evaluate(&m, &Word::lit("x^2"), &sub).unwrap(), m.zero.unwrap());
        assert!(evaluate(&m, &Word::lit("z"), &sub).is_err());
    }

    #[test]
    fn satisfies_examples() {
        let m = s(&["xyx"]);
        let r = satisfies(&m, &id_a());
        assert!(!r.holds);
        let witness = r.witness.unwrap();
        assert_eq!(witness[&Letter::new('x')], m.element_index("x").unwrap());
        assert_eq!(witness[&Letter::new('y')], m.element_index("y").unwrap());

        assert!(satisfies(&m, &id_g()).holds);
        assert!(satisfies(&m, &Identity::lit("uvu", "uvu")).holds);
    }

    #[test]
    fn tau_quotient_products() {
        let (set, _) = saturate_j_generator(2, 2);
        let m = tau_quotient(&set).unwrap();
        assert!(m.validate().is_empty());
        let x = m.element_index("x").unwrap();
        let xx = m.element_index("x^2").unwrap();
        assert_eq!(m.mul(x, x), xx, "x·x = x^2");
        assert_eq!(m.mul(xx, x), xx, "x^2·x reduces to x^2");
        let one = m.identity;
        let zy = m.element_index("zy").unwrap();
        assert_eq!(m.mul(one, zy), zy);
        // zy · x^2 = zyx^2 when present
        let zyxx = m.element_index("zyx^2").unwrap();
        assert_eq!(m.mul(zy, xx), zyxx);
    }

    #[test]
    fn tau_quotient_rejects_unreduced() {
        let mut set = BTreeSet::new();
        set.insert(Word::empty());
        set.insert(Word::lit("x"));
        set.insert(Word::lit("x^3"));
        assert!(matches!(
            tau_quotient(&set),
            Err(QuotientError::NotNormalForm(_))
        ));
    }

    #[test]
    fn tau_quotient_reports_closure_violation() {
        let mut set = BTreeSet::new();
        set.insert(Word::empty());
        set.insert(Word::lit("xy"));
        // missing the factors x and y
        let err = tau_quotient(&set).unwrap_err();
        assert!(matches!(err, QuotientError::NotClosed { .. }));
    }

    #[test]
    fn saturation_stabilizes() {
        let (set1, stab1) = saturate_j_generator(1, 1);
        assert!(!stab1);
        assert!(set1.contains(&Word::lit("xzyxty")));
        assert!(set1.iter().all(is_reduced));

        let (set3, stab3) = saturate_j_generator(3, 3);
        assert!(stab3, "exponents at least 3 reduce to at most 2");
        let (set2, _) = saturate_j_generator(2, 2);
        assert_eq!(set3, set2);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let m = s(&["xyx"]);
        let text = to_json(&m);
        let back = from_json(&text).unwrap();
        assert_eq!(back.elements, m.elements);
        assert_eq!(back.table, m.table);

        // break associativity: in S(xyx), set x·y = 1, so (x·y)·x = x while
        // x·(y·x) = xyx
        let mut raw: serde_json::Value = serde_json::from_str(&to_json(&m)).unwrap();
        raw["table"][1][2] = serde_json::json!(0);
        let err = from_json(&raw.to_string()).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");

        // break the identity row
        let small = s(&["x"]);
        let mut raw2: serde_json::Value = serde_json::from_str(&to_json(&small)).unwrap();
        raw2["table"][0][1] = serde_json::json!(0);
        let err2 = from_json(&raw2.to_string()).unwrap_err();
        assert!(err2.to_string().contains("identity"), "{err2}");
    }

    #[test]
    fn norm_pruning_matches_unpruned_search() {
        let m = s(&["xzxyty"]);
        let mut plain = m.clone();
        plain.zero_norm = None;
        for id in [
            id_a(),
            id_g(),
            Identity::lit("xyzxy", "yxzxy"),
            Identity::lit("xy", "yx"),
            Identity::lit("xzx", "xzx^2"),
        ] {
            let fast = satisfies(&m, &id);
            let slow = satisfies(&plain, &id);
            assert_eq!(fast, slow, "pruned and unpruned disagree on {id}");
        }
    }
}
