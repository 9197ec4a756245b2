//! Identities between words: named presets, identity families, structural
//! predicates (well-balanced, invertible) and the combinatorial decision
//! procedure for the join variety F∨E.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::words::{
    decompose, divider_query, letter_stats, occurrences, parse_word_auto, render, reverse,
    Decomposition, DividerRef, Letter, Word, WordParseError,
};

/// An unordered pair of words `u ≈ v`, optionally labelled.
///
/// Equality and hashing ignore the label and side order.
#[derive(Clone)]
pub struct Identity {
    lhs: Word,
    rhs: Word,
    label: Option<String>,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Identity {
        Identity {
            lhs,
            rhs,
            label: None,
        }
    }

    pub fn labelled(label: &str, lhs: Word, rhs: Word) -> Identity {
        Identity {
            lhs,
            rhs,
            label: Some(label.to_string()),
        }
    }

    /// Compact-grammar constructor for tests and presets.
    pub fn lit(lhs: &str, rhs: &str) -> Identity {
        Identity::new(Word::lit(lhs), Word::lit(rhs))
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: &str) -> Identity {
        self.label = Some(label.to_string());
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Both sides' letters.
    pub fn content(&self) -> BTreeSet<Letter> {
        let mut set = self.lhs.content();
        set.extend(self.rhs.content());
        set
    }

    /// Sides in shortlex order; the canonical form behind `Eq`/`Hash`.
    pub fn sorted_sides(&self) -> (&Word, &Word) {
        if self.lhs <= self.rhs {
            (&self.lhs, &self.rhs)
        } else {
            (&self.rhs, &self.lhs)
        }
    }

    /// Letter-reverses both sides.
    pub fn dual(&self) -> Identity {
        Identity {
            lhs: reverse(&self.lhs),
            rhs: reverse(&self.rhs),
            label: self.label.as_ref().map(|l| format!("dual({l})")),
        }
    }
}

impl PartialEq for Identity {
    fn eq(&self, other: &Identity) -> bool {
        self.sorted_sides() == other.sorted_sides()
    }
}

impl Eq for Identity {}

impl std::hash::Hash for Identity {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sorted_sides().hash(state);
    }
}

impl PartialOrd for Identity {
    fn partial_cmp(&self, other: &Identity) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Identity {
    fn cmp(&self, other: &Identity) -> std::cmp::Ordering {
        self.sorted_sides().cmp(&other.sorted_sides())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", render(&self.lhs), render(&self.rhs))
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{l}: {self}"),
            None => write!(f, "{self}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityParseError {
    #[error("expected \"<word> == <word>\", got {0:?}")]
    MissingSeparator(String),
    #[error("bad word: {0}")]
    Word(#[from] WordParseError),
}

/// Parses `"<word> == <word>"`; each side uses the auto word grammar.
pub fn parse_identity(text: &str) -> Result<Identity, IdentityParseError> {
    let (lhs, rhs) = text
        .split_once("==")
        .ok_or_else(|| IdentityParseError::MissingSeparator(text.to_string()))?;
    Ok(Identity::new(parse_word_auto(lhs)?, parse_word_auto(rhs)?))
}

/// Parses a one-identity-per-line listing; `#` starts a comment.
pub fn parse_identity_file(text: &str) -> Result<Vec<Identity>, IdentityParseError> {
    let mut ids = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        ids.push(parse_identity(line)?);
    }
    Ok(ids)
}

// --- named identities ---------------------------------------------------

pub fn id_a() -> Identity {
    Identity::lit("xyx", "xyx^2").with_label("ID-A")
}

pub fn id_b() -> Identity {
    Identity::lit("x^2y^2", "y^2x^2").with_label("ID-B")
}

pub fn id_c() -> Identity {
    Identity::lit("xyzxy", "yxzxy").with_label("ID-C")
}

pub fn id_d() -> Identity {
    Identity::lit("xyxztx", "xyxzxtx").with_label("ID-D")
}

pub fn id_e() -> Identity {
    Identity::lit("xzxyxty", "xzyxty").with_label("ID-E")
}

pub fn id_f() -> Identity {
    Identity::lit("xyx", "x^2yx").with_label("ID-F")
}

pub fn id_g() -> Identity {
    Identity::lit("x^2", "x^3").with_label("ID-G")
}

pub fn id_h() -> Identity {
    Identity::lit("xtyzxy", "xtyzyx").with_label("ID-H")
}

pub fn id_i() -> Identity {
    Identity::lit("x^2yzx^2", "x^2yxzx^2").with_label("ID-I")
}

pub fn id_k() -> Identity {
    Identity::lit("yx^2txy", "xyxtxy").with_label("ID-K")
}

pub fn id_l() -> Identity {
    Identity::lit("x^2ytxy", "xyxtxy").with_label("ID-L")
}

/// `x^2y ≈ x^2yx`, a basis member of presets K and F.
pub fn id_absorb_right() -> Identity {
    Identity::lit("x^2y", "x^2yx").with_label("XXY-XXYX")
}

/// `yx^2 ≈ xyx`, a basis member of preset E.
pub fn id_rotate_left() -> Identity {
    Identity::lit("yx^2", "xyx").with_label("YXX-XYX")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family index must be at least 1")]
    IndexOutOfRange,
    #[error("permutation {0:?} is not a bijection on 1..=n")]
    BadPermutation(Vec<usize>),
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

fn t_letter(i: u32) -> Letter {
    Letter::indexed('t', i)
}

fn z_letter(i: u32) -> Letter {
    Letter::indexed('z', i)
}

/// The alternating tail letter: `x` for odd `i`, `y` for even `i`.
fn e_letter(i: u32) -> Letter {
    if i % 2 == 1 {
        Letter::new('x')
    } else {
        Letter::new('y')
    }
}

/// Identity `J(n, π)`:
/// `x z_{1π}..z_{nπ} x (t_1 z_1)..(t_n z_n) ≈ x^2 z_{1π}..z_{nπ} (t_1 z_1)..(t_n z_n)`.
///
/// `perm` lists the images `1π, 2π, .., nπ` (1-based).
pub fn j_identity(n: u32, perm: &[usize]) -> Result<Identity, FamilyError> {
    if n == 0 {
        return Err(FamilyError::IndexOutOfRange);
    }
    let n_usize = n as usize;
    if perm.len() != n_usize {
        return Err(FamilyError::BadPermutation(perm.to_vec()));
    }
    let mut seen = vec![false; n_usize];
    for &p in perm {
        if p == 0 || p > n_usize || seen[p - 1] {
            return Err(FamilyError::BadPermutation(perm.to_vec()));
        }
        seen[p - 1] = true;
    }

    let x = Letter::new('x');
    let middle: Vec<Letter> = perm.iter().map(|&p| z_letter(p as u32)).collect();
    let tail: Vec<Letter> = (1..=n).flat_map(|i| [t_letter(i), z_letter(i)]).collect();

    let mut lhs = vec![x];
    lhs.extend(&middle);
    lhs.push(x);
    lhs.extend(&tail);

    let mut rhs = vec![x, x];
    rhs.extend(&middle);
    rhs.extend(&tail);

    let label = format!(
        "J({n};{})",
        perm.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(Identity::labelled(
        &label,
        Word::from_letters(lhs),
        Word::from_letters(rhs),
    ))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FamilyKind {
    Alpha,
    Beta,
    Gamma,
    GammaPrime,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Alpha => write!(f, "alpha"),
            FamilyKind::Beta => write!(f, "beta"),
            FamilyKind::Gamma => write!(f, "gamma"),
            FamilyKind::GammaPrime => write!(f, "gamma'"),
        }
    }
}

fn family_tail(from: u32, to: u32) -> Vec<Letter> {
    (from..=to).flat_map(|i| [t_letter(i), e_letter(i)]).collect()
}

/// The identity families `alpha_n`, `beta_n`, `gamma_n`, `gamma'_n`:
///
/// * `alpha_n`:  `xy (t_1 e_1)..(t_{n+1} e_{n+1}) ≈ yx (t_1 e_1)..(t_{n+1} e_{n+1})`
/// * `beta_n`:   `yx^2 (t_2 e_2)..(t_{n+1} e_{n+1}) ≈ xyx (t_2 e_2)..(t_{n+1} e_{n+1})`
/// * `gamma_n`:  `x^2y (t_1 e_1)..(t_{n+1} e_{n+1}) ≈ xyx (t_1 e_1)..(t_{n+1} e_{n+1})`
/// * `gamma'_n`: `x^2y (t_2 e_2)..(t_{n+1} e_{n+1}) ≈ xyx (t_2 e_2)..(t_{n+1} e_{n+1})`
///
/// with `e_i = x` for odd `i` and `y` for even `i`. Each family shares its
/// tail across both sides; a `beta`-like law with mismatched tail dividers
/// would equate two distinct single letters and so collapse everything.
pub fn family(kind: FamilyKind, n: u32) -> Result<Identity, FamilyError> {
    if n == 0 {
        return Err(FamilyError::IndexOutOfRange);
    }
    let x = Letter::new('x');
    let y = Letter::new('y');
    let (lhs, rhs) = match kind {
        FamilyKind::Alpha => {
            let tail = family_tail(1, n + 1);
            let mut lhs = vec![x, y];
            lhs.extend(&tail);
            let mut rhs = vec![y, x];
            rhs.extend(&tail);
            (lhs, rhs)
        }
        FamilyKind::Beta => {
            let tail = family_tail(2, n + 1);
            let mut lhs = vec![y, x, x];
            lhs.extend(&tail);
            let mut rhs = vec![x, y, x];
            rhs.extend(&tail);
            (lhs, rhs)
        }
        FamilyKind::Gamma => {
            let tail = family_tail(1, n + 1);
            let mut lhs = vec![x, x, y];
            lhs.extend(&tail);
            let mut rhs = vec![x, y, x];
            rhs.extend(&tail);
            (lhs, rhs)
        }
        FamilyKind::GammaPrime => {
            let tail = family_tail(2, n + 1);
            let mut lhs = vec![x, x, y];
            lhs.extend(&tail);
            let mut rhs = vec![x, y, x];
            rhs.extend(&tail);
            (lhs, rhs)
        }
    };
    Ok(Identity::labelled(
        &format!("{kind}_{n}"),
        Word::from_letters(lhs),
        Word::from_letters(rhs),
    ))
}

/// Named identity bases for the varieties used throughout.
pub fn preset(name: &str, j_bound: u32) -> Result<Vec<Identity>, FamilyError> {
    match name {
        "K" => Ok(vec![id_a(), id_b(), id_absorb_right()]),
        "Q" => Ok(vec![id_a(), id_b(), id_f()]),
        "E" => Ok(vec![id_b(), id_g(), id_rotate_left()]),
        "F" => Ok(vec![id_a(), id_b(), id_c(), id_absorb_right()]),
        "O" => Ok(vec![id_b(), id_e()]),
        "J" => {
            if j_bound == 0 {
                return Err(FamilyError::IndexOutOfRange);
            }
            let mut ids = vec![id_a(), id_b(), id_c(), id_d()];
            for n in 1..=j_bound {
                for perm in permutations(n as usize) {
                    ids.push(j_identity(n, &perm).expect("valid permutation"));
                }
            }
            Ok(ids)
        }
        other => Err(FamilyError::UnknownName(other.to_string())),
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (1..=n).collect();
    fn go(items: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if items.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..items.len() {
            let v = items.remove(i);
            prefix.push(v);
            go(items, prefix, out);
            prefix.pop();
            items.insert(i, v);
        }
    }
    go(&mut items, &mut Vec::new(), &mut out);
    out
}

/// Resolves a symbolic handle: `ID-A`..`ID-L`, `alpha_n`, `beta_n`,
/// `gamma_n`, `gamma'_n` (alias `gammap_n`), or `J(n;p1,..,pn)`.
pub fn resolve_handle(handle: &str) -> Result<Identity, FamilyError> {
    match handle {
        "ID-A" => return Ok(id_a()),
        "ID-B" => return Ok(id_b()),
        "ID-C" => return Ok(id_c()),
        "ID-D" => return Ok(id_d()),
        "ID-E" => return Ok(id_e()),
        "ID-F" => return Ok(id_f()),
        "ID-G" => return Ok(id_g()),
        "ID-H" => return Ok(id_h()),
        "ID-I" => return Ok(id_i()),
        "ID-K" => return Ok(id_k()),
        "ID-L" => return Ok(id_l()),
        _ => {}
    }
    for (prefix, kind) in [
        ("alpha_", FamilyKind::Alpha),
        ("beta_", FamilyKind::Beta),
        ("gamma'_", FamilyKind::GammaPrime),
        ("gammap_", FamilyKind::GammaPrime),
        ("gamma_", FamilyKind::Gamma),
    ] {
        if let Some(rest) = handle.strip_prefix(prefix) {
            let n: u32 = rest
                .parse()
                .map_err(|_| FamilyError::UnknownName(handle.to_string()))?;
            return family(kind, n);
        }
    }
    if let Some(body) = handle.strip_prefix("J(").and_then(|s| s.strip_suffix(')')) {
        let (n_text, perm_text) = body
            .split_once(';')
            .ok_or_else(|| FamilyError::UnknownName(handle.to_string()))?;
        let n: u32 = n_text
            .parse()
            .map_err(|_| FamilyError::UnknownName(handle.to_string()))?;
        let perm: Result<Vec<usize>, _> = perm_text.split(',').map(|p| p.trim().parse()).collect();
        let perm = perm.map_err(|_| FamilyError::UnknownName(handle.to_string()))?;
        return j_identity(n, &perm);
    }
    Err(FamilyError::UnknownName(handle.to_string()))
}

/// The stock of handles usable with [`resolve_handle`], for listings.
pub fn builtin_handles() -> Vec<&'static str> {
    vec![
        "ID-A", "ID-B", "ID-C", "ID-D", "ID-E", "ID-F", "ID-G", "ID-H", "ID-I", "ID-K", "ID-L",
    ]
}

// --- the F∨E decision procedure ------------------------------------------

/// One divider comparison for a letter, by divider name across the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividerClaim {
    pub letter: Letter,
    pub lhs: DividerRef,
    pub rhs: DividerRef,
}

impl DividerClaim {
    pub fn agrees(&self) -> bool {
        self.lhs.same_name(&self.rhs)
    }
}

/// The four claims deciding whether a non-trivial identity holds in F∨E:
/// equal simple and multiple letter sets, and per-letter agreement of the
/// `h_1`, `h_2` (where defined) and `t` dividers.
#[derive(Clone, Debug)]
pub struct Claims {
    pub c_sim: bool,
    pub c_h1: Vec<DividerClaim>,
    pub c_h2: Vec<DividerClaim>,
    pub c_t: Vec<DividerClaim>,
}

impl Claims {
    pub fn all_hold(&self) -> bool {
        self.c_sim
            && self
                .c_h1
                .iter()
                .chain(&self.c_h2)
                .chain(&self.c_t)
                .all(DividerClaim::agrees)
    }
}

pub fn claims_check(id: &Identity) -> Claims {
    let su = letter_stats(id.lhs());
    let sv = letter_stats(id.rhs());
    let c_sim = su.simple == sv.simple && su.multiple == sv.multiple;

    let common: Vec<Letter> = su
        .content
        .intersection(&sv.content)
        .copied()
        .collect();

    let mut c_h1 = Vec::new();
    let mut c_h2 = Vec::new();
    let mut c_t = Vec::new();
    for &x in &common {
        let h1_l = divider_query(id.lhs(), x, 1).expect("x in content");
        let h1_r = divider_query(id.rhs(), x, 1).expect("x in content");
        c_h1.push(DividerClaim {
            letter: x,
            lhs: h1_l,
            rhs: h1_r,
        });
        // h_2 is defined only where the letter occurs at least twice
        if occurrences(id.lhs(), x) >= 2 && occurrences(id.rhs(), x) >= 2 {
            let h2_l = divider_query(id.lhs(), x, 2).expect("occ >= 2");
            let h2_r = divider_query(id.rhs(), x, 2).expect("occ >= 2");
            c_h2.push(DividerClaim {
                letter: x,
                lhs: h2_l,
                rhs: h2_r,
            });
        }
        let t_l = crate::words::last_divider(id.lhs(), x).expect("x in content");
        let t_r = crate::words::last_divider(id.rhs(), x).expect("x in content");
        c_t.push(DividerClaim {
            letter: x,
            lhs: t_l,
            rhs: t_r,
        });
    }
    Claims {
        c_sim,
        c_h1,
        c_h2,
        c_t,
    }
}

/// Membership of `id` in the equational theory of F∨E.
pub fn fve_holds(id: &Identity) -> bool {
    id.is_trivial() || claims_check(id).all_hold()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlignError {
    #[error("divider sequences differ: {0:?} vs {1:?}")]
    DividerMismatch(Vec<Option<Letter>>, Vec<Option<Letter>>),
}

/// Decompositions of both sides, which carry the identical divider sequence
/// whenever the simple/multiple and `h_1` claims hold.
pub fn aligned_decompositions(
    id: &Identity,
) -> Result<(Decomposition, Decomposition), AlignError> {
    let du = decompose(id.lhs());
    let dv = decompose(id.rhs());
    if du.divider_names() != dv.divider_names() {
        return Err(AlignError::DividerMismatch(
            du.divider_names(),
            dv.divider_names(),
        ));
    }
    Ok((du, dv))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceCheck {
    Balanced,
    /// First offending letter/block found scanning blocks left to right.
    Unbalanced { letter: Letter, block: usize },
}

/// Well-balancedness: equal per-letter occurrence counts in every pair of
/// aligned blocks.
pub fn balance_check(id: &Identity) -> Result<BalanceCheck, AlignError> {
    let (du, dv) = aligned_decompositions(id)?;
    for (i, (bu, bv)) in du.blocks.iter().zip(&dv.blocks).enumerate() {
        let mut letters: BTreeSet<Letter> = bu.content();
        letters.extend(bv.content());
        for x in letters {
            if occurrences(bu, x) != occurrences(bv, x) {
                return Ok(BalanceCheck::Unbalanced { letter: x, block: i });
            }
        }
    }
    Ok(BalanceCheck::Balanced)
}

pub fn is_well_balanced(id: &Identity) -> Result<bool, AlignError> {
    Ok(balance_check(id)? == BalanceCheck::Balanced)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvertibilityError {
    #[error("alignment failed: {0}")]
    Align(#[from] AlignError),
    #[error("identity is not well-balanced at letter {letter} in block {block}")]
    NotWellBalanced { letter: Letter, block: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainSearch {
    /// `u = w_0, .., w_k = v`, consecutive words one admissible adjacent
    /// transposition apart. The length is not guaranteed minimal.
    Found(Vec<Word>),
    /// Budget exhausted: no claim either way.
    Unknown,
}

/// All words one admissible swap away: exchange adjacent distinct letters
/// that both occur elsewhere in the word.
pub fn swap_successors(w: &Word) -> Vec<Word> {
    let stats = letter_stats(w);
    let letters = w.letters();
    let mut out = Vec::new();
    for p in 0..letters.len().saturating_sub(1) {
        let (a, b) = (letters[p], letters[p + 1]);
        if a != b && stats.multiple.contains(&a) && stats.multiple.contains(&b) {
            let mut next = letters.to_vec();
            next.swap(p, p + 1);
            out.push(Word::from_letters(next));
        }
    }
    out
}

/// Breadth-first search for an invertibility chain from `lhs` to `rhs`;
/// requires the identity to be well-balanced.
pub fn invertibility_chain(
    id: &Identity,
    max_steps: usize,
) -> Result<ChainSearch, InvertibilityError> {
    match balance_check(id)? {
        BalanceCheck::Balanced => {}
        BalanceCheck::Unbalanced { letter, block } => {
            return Err(InvertibilityError::NotWellBalanced { letter, block })
        }
    }
    if id.is_trivial() {
        return Ok(ChainSearch::Found(vec![id.lhs().clone()]));
    }
    let start = id.lhs().clone();
    let goal = id.rhs().clone();
    let mut parents: std::collections::HashMap<Word, Word> = std::collections::HashMap::new();
    let mut frontier = vec![start.clone()];
    parents.insert(start.clone(), start.clone());
    for _ in 0..max_steps {
        let mut next_frontier = Vec::new();
        for w in &frontier {
            for succ in swap_successors(w) {
                if parents.contains_key(&succ) {
                    continue;
                }
                parents.insert(succ.clone(), w.clone());
                if succ == goal {
                    let mut chain = vec![succ.clone()];
                    let mut cur = succ;
                    while cur != start {
                        cur = parents[&cur].clone();
                        chain.push(cur.clone());
                    }
                    chain.reverse();
                    return Ok(ChainSearch::Found(chain));
                }
                next_frontier.push(succ);
            }
        }
        if next_frontier.is_empty() {
            // the swap graph component is exhausted; still report unknown,
            // bounded search never claims a negative
            return Ok(ChainSearch::Unknown);
        }
        frontier = next_frontier;
    }
    Ok(ChainSearch::Unknown)
}

pub fn dual_preset(ids: &[Identity]) -> Vec<Identity> {
    ids.iter().map(Identity::dual).collect()
}

/// Renames letters by first occurrence in `lhs` then `rhs` to the fixed
/// sequence `x, y, z1, t1, z2, t2, ..`. Deduplication helper; never applied
/// implicitly.
pub fn canonical_rename(id: &Identity) -> Identity {
    let mut mapping: std::collections::BTreeMap<Letter, Letter> = Default::default();
    let mut count = 0u32;
    let fresh = |count: &mut u32| -> Letter {
        let i = *count;
        *count += 1;
        match i {
            0 => Letter::new('x'),
            1 => Letter::new('y'),
            _ => {
                let pair = (i - 2) / 2 + 1;
                if (i - 2).is_multiple_of(2) {
                    Letter::indexed('z', pair)
                } else {
                    Letter::indexed('t', pair)
                }
            }
        }
    };
    for &l in id.lhs().letters().iter().chain(id.rhs().letters()) {
        mapping.entry(l).or_insert_with(|| fresh(&mut count));
    }
    let map_word =
        |w: &Word| -> Word { w.iter().map(|l| mapping[l]).collect() };
    Identity {
        lhs: map_word(id.lhs()),
        rhs: map_word(id.rhs()),
        label: id.label.clone(),
    }
}
