//! Combinatorics on words over an unbounded alphabet.
//!
//! Provides the word grammar (compact and token forms), letter statistics,
//! projections, factor tests, the divider/block decomposition with its
//! `h_i`/`t` divider queries, reversal, and the reduced normal form that
//! induces the congruence [`tau_equiv`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A letter: one lowercase base character plus an optional decimal index
/// (`x`, `z1`, `t3`). Letters compare by full name.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    base: char,
    index: Option<u32>,
}

impl Letter {
    pub fn new(base: char) -> Letter {
        assert!(base.is_ascii_lowercase(), "letter base must be a-z");
        Letter { base, index: None }
    }

    pub fn indexed(base: char, index: u32) -> Letter {
        assert!(base.is_ascii_lowercase(), "letter base must be a-z");
        Letter {
            base,
            index: Some(index),
        }
    }

    pub fn base(&self) -> char {
        self.base
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }

    /// True when the letter renders as a single character.
    pub fn is_plain(&self) -> bool {
        self.index.is_none()
    }

    pub fn parse(text: &str) -> Result<Letter, WordParseError> {
        let mut chars = text.chars();
        let base = chars.next().ok_or(WordParseError::EmptyLetter)?;
        if !base.is_ascii_lowercase() {
            return Err(WordParseError::BadLetter(text.to_string()));
        }
        let rest: String = chars.collect();
        if rest.is_empty() {
            return Ok(Letter::new(base));
        }
        if !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(WordParseError::BadLetter(text.to_string()));
        }
        let index: u32 = rest
            .parse()
            .map_err(|_| WordParseError::BadLetter(text.to_string()))?;
        Ok(Letter::indexed(base, index))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.base, i),
            None => write!(f, "{}", self.base),
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite word; the empty word is the monoid identity.
///
/// Words are ordered shortlex (by length, then letterwise), which is the
/// element order used everywhere a canonical choice is needed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        Word(letters.into_iter().collect())
    }

    /// Parses in compact mode; panics on malformed input. Test/constant helper.
    pub fn lit(text: &str) -> Word {
        parse_word(text, ParseMode::Compact).expect("literal word")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn repeat(letter: Letter, count: usize) -> Word {
        Word(vec![letter; count])
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    /// Maximal constant runs as (letter, exponent) pairs.
    pub fn max_powers(&self) -> Vec<(Letter, usize)> {
        let mut powers = Vec::new();
        for &l in &self.0 {
            match powers.last_mut() {
                Some((p, e)) if *p == l => *e += 1,
                _ => powers.push((l, 1usize)),
            }
        }
        powers
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParseMode {
    /// Each lowercase character is a letter; `^k` repeats the preceding
    /// letter; `1` is the empty word.
    Compact,
    /// Whitespace-separated letter names with optional `^k` suffix.
    Tokens,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("empty letter name")]
    EmptyLetter,
    #[error("bad letter name {0:?}")]
    BadLetter(String),
    #[error("unexpected character {ch:?} at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("malformed exponent at position {pos}")]
    BadExponent { pos: usize },
    #[error("exponent must be at least 1 (position {pos})")]
    ZeroExponent { pos: usize },
    #[error("exponent without a preceding letter at position {pos}")]
    DanglingExponent { pos: usize },
}

/// Parses a word. `"1"` denotes the empty word in both modes.
pub fn parse_word(text: &str, mode: ParseMode) -> Result<Word, WordParseError> {
    match mode {
        ParseMode::Compact => parse_compact(text.trim()),
        ParseMode::Tokens => parse_tokens(text.trim()),
    }
}

/// Picks tokens mode when the trimmed text contains whitespace or is a
/// single indexed-letter token (like `z1` or `t2^3`, which compact mode
/// would misread), compact mode otherwise.
pub fn parse_word_auto(text: &str) -> Result<Word, WordParseError> {
    let trimmed = text.trim();
    if trimmed.contains(char::is_whitespace) || is_indexed_token(trimmed) {
        parse_word(trimmed, ParseMode::Tokens)
    } else {
        parse_word(trimmed, ParseMode::Compact)
    }
}

fn is_indexed_token(text: &str) -> bool {
    let name = text.split_once('^').map_or(text, |(name, _)| name);
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && !chars.as_str().is_empty()
        && chars.as_str().bytes().all(|b| b.is_ascii_digit())
}

fn parse_exponent(chars: &[(usize, char)], at: &mut usize) -> Result<usize, WordParseError> {
    // chars[*at] is '^'
    let pos = chars[*at].0;
    *at += 1;
    let mut digits = String::new();
    while *at < chars.len() && chars[*at].1.is_ascii_digit() {
        digits.push(chars[*at].1);
        *at += 1;
    }
    if digits.is_empty() {
        return Err(WordParseError::BadExponent { pos });
    }
    let value: usize = digits
        .parse()
        .map_err(|_| WordParseError::BadExponent { pos })?;
    if value == 0 {
        return Err(WordParseError::ZeroExponent { pos });
    }
    Ok(value)
}

fn parse_compact(text: &str) -> Result<Word, WordParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut letters = Vec::new();
    let mut at = 0;
    while at < chars.len() {
        let (pos, ch) = chars[at];
        if ch.is_ascii_lowercase() {
            letters.push(Letter::new(ch));
            at += 1;
        } else if ch == '1' {
            // identity element; contributes nothing
            at += 1;
        } else if ch == '^' {
            let last = *letters.last().ok_or(WordParseError::DanglingExponent { pos })?;
            let e = parse_exponent(&chars, &mut at)?;
            for _ in 1..e {
                letters.push(last);
            }
        } else {
            return Err(WordParseError::UnexpectedChar { ch, pos });
        }
    }
    Ok(Word(letters))
}

fn parse_tokens(text: &str) -> Result<Word, WordParseError> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let (name, exponent) = match token.split_once('^') {
            Some((name, exp)) => {
                let value: usize = exp
                    .parse()
                    .map_err(|_| WordParseError::BadExponent { pos: 0 })?;
                if value == 0 {
                    return Err(WordParseError::ZeroExponent { pos: 0 });
                }
                (name, value)
            }
            None => (token, 1),
        };
        if name == "1" {
            continue;
        }
        let letter = Letter::parse(name)?;
        for _ in 0..exponent {
            letters.push(letter);
        }
    }
    Ok(Word(letters))
}

/// Renders a word, using compact form when every letter is single-character
/// and token form otherwise. Runs of length >= 2 print as `a^k`; the empty
/// word prints as `1`.
pub fn render(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let plain = w.iter().all(|l| l.is_plain());
    let mut out = String::new();
    for (i, (letter, e)) in w.max_powers().into_iter().enumerate() {
        if !plain && i > 0 {
            out.push(' ');
        }
        out.push_str(&letter.to_string());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    out
}

/// Letter statistics of a word: content, occurrence counts, and the
/// simple/multiple split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterStats {
    pub content: BTreeSet<Letter>,
    pub occ: BTreeMap<Letter, usize>,
    pub simple: BTreeSet<Letter>,
    pub multiple: BTreeSet<Letter>,
}

pub fn letter_stats(w: &Word) -> LetterStats {
    let mut occ: BTreeMap<Letter, usize> = BTreeMap::new();
    for &l in w.iter() {
        *occ.entry(l).or_insert(0) += 1;
    }
    let content: BTreeSet<Letter> = occ.keys().copied().collect();
    let simple = occ
        .iter()
        .filter(|(_, &n)| n == 1)
        .map(|(&l, _)| l)
        .collect();
    let multiple = occ
        .iter()
        .filter(|(_, &n)| n >= 2)
        .map(|(&l, _)| l)
        .collect();
    LetterStats {
        content,
        occ,
        simple,
        multiple,
    }
}

pub fn occurrences(w: &Word, x: Letter) -> usize {
    w.iter().filter(|&&l| l == x).count()
}

/// Deletes every letter outside `keep`.
pub fn project(w: &Word, keep: &BTreeSet<Letter>) -> Word {
    Word(w.iter().copied().filter(|l| keep.contains(l)).collect())
}

/// Contiguous-factor test: `u` occurs as a block of consecutive letters of `w`.
pub fn is_factor(u: &Word, w: &Word) -> bool {
    if u.is_empty() {
        return true;
    }
    if u.len() > w.len() {
        return false;
    }
    w.letters().windows(u.len()).any(|win| win == u.letters())
}

/// All distinct contiguous factors of `w`, including the empty word.
pub fn factors(w: &Word) -> BTreeSet<Word> {
    let mut set = BTreeSet::new();
    set.insert(Word::empty());
    for start in 0..w.len() {
        for end in start + 1..=w.len() {
            set.insert(w.slice(start, end));
        }
    }
    set
}

/// Reference to a divider of a word: index 0 is the leading sentinel with no
/// name; index i >= 1 names the i-th simple letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DividerRef {
    pub index: usize,
    pub name: Option<Letter>,
}

impl DividerRef {
    pub fn sentinel() -> DividerRef {
        DividerRef {
            index: 0,
            name: None,
        }
    }

    pub fn named(index: usize, letter: Letter) -> DividerRef {
        assert!(index >= 1);
        DividerRef {
            index,
            name: Some(letter),
        }
    }

    /// Cross-word comparison is by divider name, sentinel included.
    pub fn same_name(&self, other: &DividerRef) -> bool {
        self.name == other.name
    }
}

impl fmt::Display for DividerRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "⊥"),
        }
    }
}

impl fmt::Debug for DividerRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A word factored as alternating dividers and blocks
/// `t_0 w_0 t_1 w_1 ... t_m w_m`, with `t_0` the empty sentinel, the `t_i`
/// the simple letters in order of occurrence, and blocks over multiple
/// letters only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub dividers: Vec<DividerRef>,
    pub blocks: Vec<Word>,
}

impl Decomposition {
    /// Number of named dividers (`m`).
    pub fn m(&self) -> usize {
        self.dividers.len() - 1
    }

    /// Interleaves dividers and blocks back into the source word.
    pub fn reassemble(&self) -> Word {
        let mut letters = Vec::new();
        for (d, block) in self.dividers.iter().zip(&self.blocks) {
            if let Some(l) = d.name {
                letters.push(l);
            }
            letters.extend_from_slice(block.letters());
        }
        Word(letters)
    }

    pub fn divider_names(&self) -> Vec<Option<Letter>> {
        self.dividers.iter().map(|d| d.name).collect()
    }
}

pub fn decompose(w: &Word) -> Decomposition {
    let stats = letter_stats(w);
    let mut dividers = vec![DividerRef::sentinel()];
    let mut blocks = vec![Word::empty()];
    for &l in w.iter() {
        if stats.simple.contains(&l) {
            dividers.push(DividerRef::named(dividers.len(), l));
            blocks.push(Word::empty());
        } else {
            blocks.last_mut().expect("at least one block").push(l);
        }
    }
    Decomposition { dividers, blocks }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DividerQueryError {
    #[error("letter {0} does not occur in the word")]
    LetterAbsent(Letter),
    #[error("occurrence index {requested} out of range 1..={available} for letter {letter}")]
    OccurrenceOutOfRange {
        letter: Letter,
        requested: usize,
        available: usize,
    },
}

/// The right-most divider strictly preceding the `i`-th occurrence of `x`
/// (1-based). A simple letter does not count as its own predecessor.
pub fn divider_query(w: &Word, x: Letter, i: usize) -> Result<DividerRef, DividerQueryError> {
    let total = occurrences(w, x);
    if total == 0 {
        return Err(DividerQueryError::LetterAbsent(x));
    }
    if i == 0 || i > total {
        return Err(DividerQueryError::OccurrenceOutOfRange {
            letter: x,
            requested: i,
            available: total,
        });
    }
    let stats = letter_stats(w);
    let mut seen = 0usize;
    let mut last_divider = DividerRef::sentinel();
    let mut divider_index = 0usize;
    for &l in w.iter() {
        if l == x {
            seen += 1;
            if seen == i {
                return Ok(last_divider);
            }
        }
        if stats.simple.contains(&l) {
            divider_index += 1;
            last_divider = DividerRef::named(divider_index, l);
        }
    }
    unreachable!("occurrence counted above")
}

/// `divider_query` at the latest occurrence of `x`.
pub fn last_divider(w: &Word, x: Letter) -> Result<DividerRef, DividerQueryError> {
    let total = occurrences(w, x);
    if total == 0 {
        return Err(DividerQueryError::LetterAbsent(x));
    }
    divider_query(w, x, total)
}

pub fn reverse(w: &Word) -> Word {
    Word(w.iter().rev().copied().collect())
}

/// True when `w` contains no factor `a^2` whose left context already
/// contains `a`.
pub fn is_reduced(w: &Word) -> bool {
    let letters = w.letters();
    for p in 1..letters.len() {
        if letters[p] == letters[p - 1] && letters[..p - 1].contains(&letters[p]) {
            return false;
        }
    }
    true
}

/// The reduced form of `w`: scan maximal powers `a^e` left to right and emit
/// `a^2` when `a` is new and `e >= 2`, else a single `a`. The result is the
/// unique reduced word with the same simple letters and the same type as `w`.
pub fn reduce(w: &Word) -> Word {
    let mut seen: BTreeSet<Letter> = BTreeSet::new();
    let mut letters = Vec::new();
    for (l, e) in w.max_powers() {
        if seen.insert(l) && e >= 2 {
            letters.push(l);
            letters.push(l);
        } else {
            letters.push(l);
        }
    }
    Word(letters)
}

/// Type comparison: equal maximal-power letter sequences, and per letter the
/// same answer to "are the first two occurrences adjacent".
pub fn same_type(u: &Word, v: &Word) -> bool {
    let pu = u.max_powers();
    let pv = v.max_powers();
    if pu.len() != pv.len() {
        return false;
    }
    if pu.iter().zip(&pv).any(|((a, _), (b, _))| a != b) {
        return false;
    }
    first_power_doubled(&pu) == first_power_doubled(&pv)
}

fn first_power_doubled(powers: &[(Letter, usize)]) -> BTreeMap<Letter, bool> {
    let mut flags = BTreeMap::new();
    for &(l, e) in powers {
        flags.entry(l).or_insert(e >= 2);
    }
    flags
}

/// The congruence τ: equality of reduced forms.
pub fn tau_equiv(u: &Word, v: &Word) -> bool {
    reduce(u) == reduce(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letter(c: char) -> Letter {
        Letter::new(c)
    }

    #[test]
    fn parse_compact_examples() {
        assert_eq!(
            parse_word("xyx^2", ParseMode::Compact).unwrap(),
            Word::from_letters([letter('x'), letter('y'), letter('x'), letter('x')])
        );
        assert_eq!(parse_word("1", ParseMode::Compact).unwrap(), Word::empty());
        assert!(parse_word("xYz", ParseMode::Compact).is_err());
        assert!(parse_word("x^0", ParseMode::Compact).is_err());
        assert!(parse_word("^2", ParseMode::Compact).is_err());
        assert!(parse_word("x^", ParseMode::Compact).is_err());
    }

    #[test]
    fn parse_tokens_examples() {
        let w = parse_word("z1 x z1^2", ParseMode::Tokens).unwrap();
        assert_eq!(
            w,
            Word::from_letters([
                Letter::indexed('z', 1),
                letter('x'),
                Letter::indexed('z', 1),
                Letter::indexed('z', 1)
            ])
        );
        assert_eq!(parse_word("1", ParseMode::Tokens).unwrap(), Word::empty());
        assert!(parse_word("z1 2x", ParseMode::Tokens).is_err());
    }

    #[test]
    fn render_round_trips() {
        for text in ["1", "x", "xyx^2", "x^3y^2z", "xzxyty"] {
            let w = Word::lit(text);
            assert_eq!(parse_word(&render(&w), ParseMode::Compact).unwrap(), w);
        }
        let w = parse_word("z1 x z1^2", ParseMode::Tokens).unwrap();
        assert_eq!(render(&w), "z1 x z1^2");
        assert_eq!(parse_word(&render(&w), ParseMode::Tokens).unwrap(), w);
    }

    #[test]
    fn auto_mode_keeps_indexed_tokens_intact() {
        // a lone indexed letter is a token, not compact "letter then empty"
        let t2 = Word::from_letters([Letter::indexed('t', 2)]);
        assert_eq!(parse_word_auto("t2").unwrap(), t2);
        assert_eq!(parse_word_auto(&render(&t2)).unwrap(), t2);

        let z1_cubed = Word::repeat(Letter::indexed('z', 1), 3);
        assert_eq!(render(&z1_cubed), "z1^3");
        assert_eq!(parse_word_auto("z1^3").unwrap(), z1_cubed);

        // plain compact forms still parse as compact
        assert_eq!(parse_word_auto("xyx^2").unwrap(), Word::lit("xyx^2"));
        assert_eq!(parse_word_auto("x1y").unwrap(), Word::lit("xy"));
    }

    #[test]
    fn stats_examples() {
        let w = Word::lit("xzxyty");
        let s = letter_stats(&w);
        assert_eq!(s.content, Word::lit("xzyt").content());
        assert_eq!(s.simple, Word::lit("zt").content());
        assert_eq!(s.multiple, Word::lit("xy").content());
        assert_eq!(s.occ[&letter('x')], 2);

        let empty = letter_stats(&Word::empty());
        assert!(empty.content.is_empty() && empty.simple.is_empty() && empty.multiple.is_empty());

        let cube = letter_stats(&Word::lit("x^3"));
        assert!(cube.simple.is_empty());
        assert_eq!(cube.multiple, Word::lit("x").content());
        assert_eq!(cube.occ[&letter('x')], 3);
    }

    #[test]
    fn project_examples() {
        let w = Word::lit("xzxyty");
        assert_eq!(project(&w, &Word::lit("xy").content()), Word::lit("xxyy"));
        assert_eq!(project(&w, &w.content()), w);
        assert_eq!(
            project(&Word::lit("xyzxy"), &Word::lit("z").content()),
            Word::lit("z")
        );
    }

    #[test]
    fn factor_examples() {
        assert!(is_factor(&Word::lit("zx"), &Word::lit("xzxyty")));
        assert!(!is_factor(&Word::lit("xx"), &Word::lit("xyx")));
        assert_eq!(factors(&Word::lit("xyx")).len(), 6);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&Word::lit("xzxyty"));
        assert_eq!(
            d.divider_names(),
            vec![None, Some(letter('z')), Some(letter('t'))]
        );
        assert_eq!(d.blocks, vec![Word::lit("x"), Word::lit("xy"), Word::lit("y")]);
        assert_eq!(d.reassemble(), Word::lit("xzxyty"));

        let d = decompose(&Word::lit("xyzxy"));
        assert_eq!(d.divider_names(), vec![None, Some(letter('z'))]);
        assert_eq!(d.blocks, vec![Word::lit("xy"), Word::lit("xy")]);

        let d = decompose(&Word::empty());
        assert_eq!(d.divider_names(), vec![None]);
        assert_eq!(d.blocks, vec![Word::empty()]);
    }

    #[test]
    fn divider_query_examples() {
        let w = Word::lit("xzxyty");
        assert_eq!(
            divider_query(&w, letter('x'), 2).unwrap().name,
            Some(letter('z'))
        );
        assert_eq!(divider_query(&w, letter('x'), 1).unwrap(), DividerRef::sentinel());
        assert_eq!(
            last_divider(&w, letter('y')).unwrap().name,
            Some(letter('t'))
        );
        // a simple letter is not its own predecessor
        assert_eq!(divider_query(&w, letter('z'), 1).unwrap(), DividerRef::sentinel());
        assert_eq!(
            last_divider(&w, letter('t')).unwrap().name,
            Some(letter('z'))
        );

        assert!(divider_query(&w, letter('q'), 1).is_err());
        assert!(divider_query(&w, letter('x'), 3).is_err());
        assert!(divider_query(&w, letter('x'), 0).is_err());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&Word::lit("xzy")), Word::lit("yzx"));
        assert_eq!(reverse(&Word::empty()), Word::empty());
        let w = Word::lit("xzxyty");
        assert_eq!(reverse(&reverse(&w)), w);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&Word::lit("x^3")), Word::lit("x^2"));
        assert_eq!(reduce(&Word::lit("xzyx^3ty^2")), Word::lit("xzyxty"));
        assert_eq!(reduce(&Word::lit("xzyxty")), Word::lit("xzyxty"));
        assert!(is_reduced(&Word::lit("x^2")));
        assert!(!is_reduced(&Word::lit("x^3")));
        assert!(!is_reduced(&Word::lit("xyx^2")));
        assert!(is_reduced(&Word::lit("x^2yx")));
    }

    #[test]
    fn reduce_is_idempotent_and_type_preserving() {
        for text in ["x^3", "xzyx^3ty^2", "x^2y^2x^4", "abcabc", "aabb", "1"] {
            let w = Word::lit(text);
            let r = reduce(&w);
            assert!(is_reduced(&r), "{r} not reduced");
            assert_eq!(reduce(&r), r);
            assert!(same_type(&w, &r), "{w} vs {r}");
            assert_eq!(letter_stats(&w).simple, letter_stats(&r).simple);
        }
    }

    #[test]
    fn same_type_examples() {
        assert!(same_type(&Word::lit("xy^4xz^3x^5y"), &Word::lit("xy^3x^4z^2x^2y^2")));
        assert!(!same_type(&Word::lit("x"), &Word::lit("x^3")));
        assert!(!same_type(&Word::lit("xyx"), &Word::lit("xy")));
        assert!(same_type(&Word::lit("x^2yx^2y"), &Word::lit("x^4yx^3y^2")));
        // first two occurrences adjacent on one side only
        assert!(!same_type(&Word::lit("x^2yx"), &Word::lit("xyx")));
    }

    #[test]
    fn tau_examples() {
        assert!(tau_equiv(&Word::lit("x^3"), &Word::lit("x^2")));
        assert!(!tau_equiv(&Word::lit("x^2"), &Word::lit("x")));
        assert!(tau_equiv(&Word::lit("xzyx^3ty^2"), &Word::lit("xzyx^2ty^5")));
    }

    #[test]
    fn shortlex_order() {
        let mut words = vec![
            Word::lit("yx"),
            Word::lit("x"),
            Word::empty(),
            Word::lit("xy"),
            Word::lit("y"),
        ];
        words.sort();
        assert_eq!(
            words,
            vec![
                Word::empty(),
                Word::lit("x"),
                Word::lit("y"),
                Word::lit("xy"),
                Word::lit("yx"),
            ]
        );
    }
}
