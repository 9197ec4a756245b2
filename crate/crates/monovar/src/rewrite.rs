//! Equational rewriting: pattern matching with possibly-empty letter images,
//! one-step identity application, checked derivation traces (with a plain
//! text format), bounded bidirectional derivation search, and a relatively
//! free monoid oracle for exact identity checking over locally finite bases.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::identities::{resolve_handle, Identity, IdentityParseError};
use crate::monoids::FiniteMonoid;
use crate::words::{parse_word_auto, render, Letter, Word, WordParseError};

/// Assignment of words (possibly empty) to letters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSubstitution(pub BTreeMap<Letter, Word>);

impl WordSubstitution {
    pub fn get(&self, l: Letter) -> Option<&Word> {
        self.0.get(&l)
    }

    pub fn insert(&mut self, l: Letter, w: Word) {
        self.0.insert(l, w);
    }

    /// Image of `pattern`; panics when a letter is unmapped.
    pub fn apply(&self, pattern: &Word) -> Word {
        let mut letters = Vec::new();
        for &l in pattern.iter() {
            let image = self
                .0
                .get(&l)
                .unwrap_or_else(|| panic!("letter {l} unmapped in substitution"));
            letters.extend_from_slice(image.letters());
        }
        Word::from_letters(letters)
    }

    pub fn is_total_on(&self, letters: &BTreeSet<Letter>) -> bool {
        letters.iter().all(|l| self.0.contains_key(l))
    }

    /// Images in letter order; the lexicographic key used for match ordering.
    fn image_key(&self) -> Vec<Word> {
        self.0.values().cloned().collect()
    }
}

impl fmt::Display for WordSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(l, w)| format!("{l}={}", render(w)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Matches of a pattern inside a target word.
#[derive(Clone, Debug)]
pub struct MatchSet {
    /// `(substitution, start position)` pairs, ordered by position then
    /// lexicographically on the images.
    pub items: Vec<(WordSubstitution, usize)>,
    /// Set when the enumeration cap cut the listing short.
    pub truncated: bool,
}

/// Enumerates every way to write `target = p · σ(pattern) · q` with
/// consistent, possibly empty images. At most `cap` matches are returned.
pub fn match_pattern(pattern: &Word, target: &Word, cap: usize) -> MatchSet {
    let mut items = Vec::new();
    let mut truncated = false;
    let mut nodes_left: usize = cap.saturating_mul(64).max(4096);
    for pos in 0..=target.len() {
        let mut here: Vec<WordSubstitution> = Vec::new();
        let mut bindings = BTreeMap::new();
        let exhausted = !match_rec(
            pattern.letters(),
            target.letters(),
            pos,
            &mut bindings,
            &mut here,
            &mut nodes_left,
        );
        here.sort_by_key(WordSubstitution::image_key);
        for sub in here {
            if items.len() == cap {
                truncated = true;
                break;
            }
            items.push((sub, pos));
        }
        if exhausted {
            truncated = true;
        }
        if truncated {
            break;
        }
    }
    MatchSet { items, truncated }
}

fn match_rec(
    pattern: &[Letter],
    target: &[Letter],
    at: usize,
    bindings: &mut BTreeMap<Letter, Word>,
    out: &mut Vec<WordSubstitution>,
    nodes_left: &mut usize,
) -> bool {
    if *nodes_left == 0 {
        return false;
    }
    *nodes_left -= 1;
    let Some((&first, rest)) = pattern.split_first() else {
        out.push(WordSubstitution(bindings.clone()));
        return true;
    };
    if let Some(image) = bindings.get(&first) {
        let end = at + image.len();
        if end <= target.len() && &target[at..end] == image.letters() {
            let image_len = image.len();
            return match_rec(rest, target, at + image_len, bindings, out, nodes_left);
        }
        return true;
    }
    for len in 0..=(target.len() - at) {
        let end = at + len;
        bindings.insert(first, Word::from_letters(target[at..end].iter().copied()));
        let ok = match_rec(rest, target, end, bindings, out, nodes_left);
        bindings.remove(&first);
        if !ok {
            return false;
        }
    }
    true
}

/// Which side of the identity is matched; the other side replaces it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LhsToRhs,
    RhsToLhs,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::LhsToRhs => Direction::RhsToLhs,
            Direction::RhsToLhs => Direction::LhsToRhs,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::LhsToRhs => write!(f, "lhs->rhs"),
            Direction::RhsToLhs => write!(f, "rhs->lhs"),
        }
    }
}

/// One checked application of an identity at a fixed position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub identity: Identity,
    pub direction: Direction,
    pub substitution: WordSubstitution,
    pub position: usize,
}

impl RewriteStep {
    pub fn source_side(&self) -> &Word {
        match self.direction {
            Direction::LhsToRhs => self.identity.lhs(),
            Direction::RhsToLhs => self.identity.rhs(),
        }
    }

    pub fn target_side(&self) -> &Word {
        match self.direction {
            Direction::LhsToRhs => self.identity.rhs(),
            Direction::RhsToLhs => self.identity.lhs(),
        }
    }

    /// The step undoing this one at the same position.
    pub fn inverse(&self) -> RewriteStep {
        RewriteStep {
            identity: self.identity.clone(),
            direction: self.direction.flip(),
            substitution: self.substitution.clone(),
            position: self.position,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepError {
    #[error("substitution does not cover letter {0}")]
    Uncovered(Letter),
    #[error("pattern image {image} does not occur at position {position} of {word}")]
    NoMatch {
        word: String,
        image: String,
        position: usize,
    },
}

/// Applies `step` to `w`: the matched factor `σ(source)` at the declared
/// position is replaced by `σ(target)`.
pub fn apply_step(w: &Word, step: &RewriteStep) -> Result<Word, StepError> {
    for l in step.identity.content() {
        if step.substitution.get(l).is_none() {
            return Err(StepError::Uncovered(l));
        }
    }
    let image = step.substitution.apply(step.source_side());
    let start = step.position;
    let end = start + image.len();
    if end > w.len() || &w.letters()[start..end] != image.letters() {
        return Err(StepError::NoMatch {
            word: render(w),
            image: render(&image),
            position: start,
        });
    }
    let replacement = step.substitution.apply(step.target_side());
    let mut letters = w.letters()[..start].to_vec();
    letters.extend_from_slice(replacement.letters());
    letters.extend_from_slice(&w.letters()[end..]);
    Ok(Word::from_letters(letters))
}

/// A start word, a sequence of checked steps, and the target word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    pub start: Word,
    pub steps: Vec<RewriteStep>,
    pub end: Word,
}

impl DerivationTrace {
    pub fn trivial(w: Word) -> DerivationTrace {
        DerivationTrace {
            start: w.clone(),
            steps: Vec::new(),
            end: w,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every word visited, starting word first.
    pub fn words(&self) -> Result<Vec<Word>, StepError> {
        let mut words = vec![self.start.clone()];
        for step in &self.steps {
            let next = apply_step(words.last().expect("non-empty"), step)?;
            words.push(next);
        }
        Ok(words)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("step {step}: identity {identity} is not in the allowed set")]
    NotAllowed { step: usize, identity: String },
    #[error("step {step}: {source}")]
    Apply { step: usize, source: StepError },
    #[error("trace ends at {got}, expected {expected}")]
    EndMismatch { got: String, expected: String },
}

/// Replays a trace, requiring each step's identity to be in `allowed` and
/// the chain to connect start to end exactly.
pub fn verify_trace(trace: &DerivationTrace, allowed: &[Identity]) -> Result<(), TraceError> {
    let mut current = trace.start.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        if !allowed.contains(&step.identity) {
            return Err(TraceError::NotAllowed {
                step: i,
                identity: step.identity.to_string(),
            });
        }
        current = apply_step(&current, step).map_err(|source| TraceError::Apply {
            step: i,
            source,
        })?;
    }
    if current != trace.end {
        return Err(TraceError::EndMismatch {
            got: render(&current),
            expected: render(&trace.end),
        });
    }
    Ok(())
}

// --- trace text format ----------------------------------------------------

/// A trace plus the identities its file declared.
#[derive(Clone, Debug)]
pub struct ParsedTrace {
    pub trace: DerivationTrace,
    pub declared: Vec<Identity>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: bad word: {source}")]
    Word { line: usize, source: WordParseError },
    #[error("line {line}: bad identity: {source}")]
    Identity { line: usize, source: IdentityParseError },
    #[error("line {line}: unknown identity name {name:?}")]
    UnknownName { line: usize, name: String },
    #[error("missing {0} line")]
    MissingSection(&'static str),
}

/// Parses the trace text format:
///
/// ```text
/// # comment
/// identity A: xyx == xyx^2
/// start: xyx
/// step: A lhs->rhs at 0 with x=x, y=y
/// end: xyx^2
/// ```
///
/// Step names resolve against the file's declarations first, then against
/// the built-in identity handles.
pub fn parse_trace(text: &str) -> Result<ParsedTrace, TraceParseError> {
    let mut declared: Vec<(String, Identity)> = Vec::new();
    let mut start: Option<Word> = None;
    let mut end: Option<Word> = None;
    let mut steps: Vec<RewriteStep> = Vec::new();

    for (number, raw_line) in text.lines().enumerate() {
        let line = number + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("identity ") {
            let (name, body) = rest.split_once(':').ok_or(TraceParseError::Malformed {
                line,
                message: "expected \"identity <name>: <word> == <word>\"".to_string(),
            })?;
            let (name, body) = (name.trim(), body.trim());
            let id = crate::identities::parse_identity(body)
                .map_err(|source| TraceParseError::Identity { line, source })?;
            declared.push((name.to_string(), id.with_label(name)));
            continue;
        }
        let (keyword, rest) = content.split_once(':').ok_or_else(|| {
            TraceParseError::Malformed {
                line,
                message: "expected \"<keyword>: ...\"".to_string(),
            }
        })?;
        let rest = rest.trim();
        match keyword.trim() {
            "start" => {
                start = Some(
                    parse_word_auto(rest)
                        .map_err(|source| TraceParseError::Word { line, source })?,
                );
            }
            "end" => {
                end = Some(
                    parse_word_auto(rest)
                        .map_err(|source| TraceParseError::Word { line, source })?,
                );
            }
            "step" => {
                steps.push(parse_step_line(rest, line, &declared)?);
            }
            other => {
                return Err(TraceParseError::Malformed {
                    line,
                    message: format!("unknown keyword {other:?}"),
                })
            }
        }
    }

    let start = start.ok_or(TraceParseError::MissingSection("start"))?;
    let end = end.ok_or(TraceParseError::MissingSection("end"))?;
    Ok(ParsedTrace {
        trace: DerivationTrace { start, steps, end },
        declared: declared.into_iter().map(|(_, id)| id).collect(),
    })
}

fn parse_step_line(
    rest: &str,
    line: usize,
    declared: &[(String, Identity)],
) -> Result<RewriteStep, TraceParseError> {
    // <name> <direction> at <pos> [with l=w, l=w]
    let malformed = |message: &str| TraceParseError::Malformed {
        line,
        message: message.to_string(),
    };
    let (head, bindings_text) = match rest.split_once(" with ") {
        Some((h, b)) => (h.trim(), Some(b.trim())),
        None => (rest.trim(), None),
    };
    let mut parts = head.split_whitespace();
    let name = parts.next().ok_or_else(|| malformed("missing identity name"))?;
    let direction = match parts.next() {
        Some("lhs->rhs") => Direction::LhsToRhs,
        Some("rhs->lhs") => Direction::RhsToLhs,
        _ => return Err(malformed("expected direction lhs->rhs or rhs->lhs")),
    };
    if parts.next() != Some("at") {
        return Err(malformed("expected \"at <position>\""));
    }
    let position: usize = parts
        .next()
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| malformed("bad position"))?;
    if parts.next().is_some() {
        return Err(malformed("trailing tokens"));
    }

    let identity = declared
        .iter()
        .rev()
        .find(|(n, _)| n == name)
        .map(|(_, id)| id.clone())
        .or_else(|| resolve_handle(name).ok())
        .ok_or_else(|| TraceParseError::UnknownName {
            line,
            name: name.to_string(),
        })?;

    let mut substitution = WordSubstitution::default();
    if let Some(bindings_text) = bindings_text {
        for binding in bindings_text.split(',') {
            let (letter_text, word_text) = binding
                .split_once('=')
                .ok_or_else(|| malformed("expected <letter>=<word> binding"))?;
            let letter = Letter::parse(letter_text.trim())
                .map_err(|source| TraceParseError::Word { line, source })?;
            let image = parse_word_auto(word_text.trim())
                .map_err(|source| TraceParseError::Word { line, source })?;
            substitution.insert(letter, image);
        }
    }

    Ok(RewriteStep {
        identity,
        direction,
        substitution,
        position,
    })
}

/// Renders a trace in the text format; `declared` lists identities to embed
/// as `identity` lines (steps referring to built-in handles need none).
pub fn render_trace(trace: &DerivationTrace, declared: &[(String, Identity)]) -> String {
    let mut out = String::new();
    for (name, id) in declared {
        out.push_str(&format!("identity {name}: {id}\n"));
    }
    out.push_str(&format!("start: {}\n", render(&trace.start)));
    for step in &trace.steps {
        let name = step
            .identity
            .label()
            .map(str::to_string)
            .unwrap_or_else(|| step.identity.to_string());
        out.push_str(&format!(
            "step: {name} {} at {} with {}\n",
            step.direction, step.position, step.substitution
        ));
    }
    out.push_str(&format!("end: {}\n", render(&trace.end)));
    out
}

// --- bounded derivation search ---------------------------------------------

/// Budget for the bidirectional search.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Cap on intermediate word length; `None` means `max(|u|,|v|) + 4`.
    pub max_word_len: Option<usize>,
    /// Cap on total trace length.
    pub max_steps: usize,
    /// Cap on distinct words explored.
    pub max_states: usize,
    /// Image length cap for letters occurring only on the replacement side.
    pub free_image_len: usize,
    /// Per-call match enumeration cap.
    pub match_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_word_len: None,
            max_steps: 10,
            max_states: 200_000,
            free_image_len: 2,
            match_cap: 20_000,
        }
    }
}

/// Outcome of `derivable`: a verified trace, or exhaustion. A bounded search
/// never reports "not derivable".
#[derive(Clone, Debug)]
pub enum Derivability {
    Derivable(DerivationTrace),
    Unknown,
}

impl Derivability {
    pub fn trace(&self) -> Option<&DerivationTrace> {
        match self {
            Derivability::Derivable(t) => Some(t),
            Derivability::Unknown => None,
        }
    }

    pub fn is_derivable(&self) -> bool {
        matches!(self, Derivability::Derivable(_))
    }
}

/// All words over `alphabet` of length at most `max_len`, shortlex order.
pub fn words_up_to(alphabet: &BTreeSet<Letter>, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet.iter().copied().collect();
    let mut out = vec![Word::empty()];
    let mut layer: Vec<Word> = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut longer = w.clone();
                longer.push(l);
                next.push(longer);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// One-step successors of `w` under `basis`, in deterministic order:
/// basis index, direction, match order, then free-image order. Letters on
/// the replacement side that are absent from the matched side take every
/// image from `free_images`.
fn one_step_successors(
    w: &Word,
    basis: &[Identity],
    max_word_len: usize,
    match_cap: usize,
    free_images: &[Word],
    out: &mut Vec<(Word, RewriteStep)>,
) {
    out.clear();
    for id in basis {
        for direction in [Direction::LhsToRhs, Direction::RhsToLhs] {
            let (pattern, replacement) = match direction {
                Direction::LhsToRhs => (id.lhs(), id.rhs()),
                Direction::RhsToLhs => (id.rhs(), id.lhs()),
            };
            let free: Vec<Letter> = replacement
                .content()
                .difference(&pattern.content())
                .copied()
                .collect();
            let matches = match_pattern(pattern, w, match_cap);
            for (sub, position) in matches.items {
                let mut assignments = vec![sub];
                for &letter in &free {
                    let mut extended = Vec::with_capacity(assignments.len() * free_images.len());
                    for base in &assignments {
                        for image in free_images {
                            let mut next = base.clone();
                            next.insert(letter, image.clone());
                            extended.push(next);
                        }
                    }
                    assignments = extended;
                }
                for substitution in assignments {
                    let step = RewriteStep {
                        identity: id.clone(),
                        direction,
                        substitution,
                        position,
                    };
                    if let Ok(next) = apply_step(w, &step) {
                        if next.len() <= max_word_len && next != *w {
                            out.push((next, step));
                        }
                    }
                }
            }
        }
    }
}

/// Bounded bidirectional breadth-first search for a derivation of `u ≈ v`
/// from `basis`. Any returned trace re-verifies under [`verify_trace`].
pub fn derivable(u: &Word, v: &Word, basis: &[Identity], budget: &SearchBudget) -> Derivability {
    if u == v {
        return Derivability::Derivable(DerivationTrace::trivial(u.clone()));
    }
    let max_word_len = budget
        .max_word_len
        .unwrap_or_else(|| u.len().max(v.len()) + 4);
    let mut alphabet = u.content();
    alphabet.extend(v.content());
    let free_images = words_up_to(&alphabet, budget.free_image_len);

    // parent maps: child -> (parent, step applied to parent yielding child)
    let mut forward: HashMap<Word, Option<(Word, RewriteStep)>> = HashMap::new();
    let mut backward: HashMap<Word, Option<(Word, RewriteStep)>> = HashMap::new();
    forward.insert(u.clone(), None);
    backward.insert(v.clone(), None);
    let mut frontier_f = vec![u.clone()];
    let mut frontier_b = vec![v.clone()];
    let mut depth_f = 0usize;
    let mut depth_b = 0usize;
    let mut successors = Vec::new();

    while depth_f + depth_b < budget.max_steps
        && forward.len() + backward.len() < budget.max_states
    {
        let expand_forward = match (frontier_f.is_empty(), frontier_b.is_empty()) {
            (true, true) => return Derivability::Unknown,
            (false, true) => true,
            (true, false) => false,
            (false, false) => frontier_f.len() <= frontier_b.len(),
        };
        let (frontier, parents, other, depth) = if expand_forward {
            (&mut frontier_f, &mut forward, &backward, &mut depth_f)
        } else {
            (&mut frontier_b, &mut backward, &forward, &mut depth_b)
        };

        let mut next_frontier = Vec::new();
        let mut meets: Vec<Word> = Vec::new();
        let mut states_exceeded = false;
        'level: for w in frontier.iter() {
            one_step_successors(
                w,
                basis,
                max_word_len,
                budget.match_cap,
                &free_images,
                &mut successors,
            );
            for (next, step) in successors.drain(..) {
                if parents.contains_key(&next) {
                    continue;
                }
                parents.insert(next.clone(), Some((w.clone(), step)));
                if other.contains_key(&next) {
                    meets.push(next.clone());
                }
                next_frontier.push(next);
                if parents.len() + other.len() >= budget.max_states {
                    states_exceeded = true;
                    break 'level;
                }
            }
        }
        *frontier = next_frontier;
        *depth += 1;
        if states_exceeded && meets.is_empty() {
            return Derivability::Unknown;
        }

        if !meets.is_empty() {
            meets.sort();
            let meet = meets.remove(0);
            let trace = stitch(u, v, &meet, &forward, &backward);
            debug_assert!(verify_trace(&trace, basis).is_ok());
            return Derivability::Derivable(trace);
        }
    }
    Derivability::Unknown
}

fn stitch(
    u: &Word,
    v: &Word,
    meet: &Word,
    forward: &HashMap<Word, Option<(Word, RewriteStep)>>,
    backward: &HashMap<Word, Option<(Word, RewriteStep)>>,
) -> DerivationTrace {
    // u -> meet, following forward parents
    let mut steps = Vec::new();
    let mut cursor = meet.clone();
    let mut prefix = Vec::new();
    while let Some(Some((parent, step))) = forward.get(&cursor) {
        prefix.push(step.clone());
        cursor = parent.clone();
    }
    prefix.reverse();
    steps.extend(prefix);

    // meet -> v, inverting backward steps
    let mut cursor = meet.clone();
    while let Some(Some((parent, step))) = backward.get(&cursor) {
        steps.push(step.inverse());
        cursor = parent.clone();
    }
    DerivationTrace {
        start: u.clone(),
        steps,
        end: v.clone(),
    }
}

// --- relatively free monoid oracle -----------------------------------------

#[derive(Clone, Debug)]
pub struct FreeObjectCaps {
    /// Words up to this length are enumerated and closed under rewriting.
    pub max_len: usize,
    /// Stability requires the class count to stay at or below this.
    pub max_classes: usize,
    pub match_cap: usize,
    pub free_image_len: usize,
}

impl Default for FreeObjectCaps {
    fn default() -> FreeObjectCaps {
        FreeObjectCaps {
            max_len: 9,
            max_classes: 20_000,
            match_cap: 20_000,
            free_image_len: 2,
        }
    }
}

/// The free monoid of `var(basis)` on a finite letter set, when the bounded
/// closure stabilizes.
#[derive(Clone, Debug)]
pub struct FreeObject {
    pub stable: bool,
    pub class_count: usize,
    /// Present exactly when stable: elements are class representatives
    /// (shortest, lexicographically least), identity is the empty word's
    /// class, no zero.
    pub monoid: Option<FiniteMonoid>,
    /// Element index of each generator's class, when stable.
    pub generator_class: BTreeMap<Letter, usize>,
    pub caps: FreeObjectCaps,
}

impl FreeObject {
    /// Class (element index) of a word over the generators, by folding the
    /// right-multiplication table; `None` when unstable or on foreign letters.
    pub fn class_of(&self, w: &Word) -> Option<usize> {
        let monoid = self.monoid.as_ref()?;
        let mut acc = monoid.identity;
        for &l in w.iter() {
            let &g = self.generator_class.get(&l)?;
            acc = monoid.mul(acc, g);
        }
        Some(acc)
    }
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, a: u32) -> u32 {
        let mut root = a;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cursor = a;
        while self.parent[cursor as usize] != root {
            let next = self.parent[cursor as usize];
            self.parent[cursor as usize] = root;
            cursor = next;
        }
        root
    }

    /// Union keeping the smaller index as root; returns true when it merged.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (low, high) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[high as usize] = low;
        true
    }
}

/// Computes equivalence classes of words of length at most `caps.max_len`
/// over `letters` under the congruence generated by `basis`: one-step
/// rewrites merge classes, and merges propagate through one-letter contexts
/// until a fixpoint. Words are indexed in shortlex order, so each class root
/// is its shortest, lexicographically least member.
pub fn free_object(basis: &[Identity], letters: &BTreeSet<Letter>, caps: &FreeObjectCaps) -> FreeObject {
    let unstable = |caps: &FreeObjectCaps| FreeObject {
        stable: false,
        class_count: 0,
        monoid: None,
        generator_class: BTreeMap::new(),
        caps: caps.clone(),
    };

    // Guard against runaway enumeration.
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=caps.max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(letters.len().max(1));
        if total > 3_000_000 {
            return unstable(caps);
        }
    }

    let words = words_up_to(letters, caps.max_len);
    let index: HashMap<Word, u32> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i as u32))
        .collect();
    let mut dsu = Dsu::new(words.len());
    let free_images = words_up_to(letters, caps.free_image_len);

    // one-step rewrite closure
    let mut successors = Vec::new();
    for (i, w) in words.iter().enumerate() {
        one_step_successors(w, basis, caps.max_len, caps.match_cap, &free_images, &mut successors);
        for (next, _) in successors.drain(..) {
            let j = index[&next];
            dsu.union(i as u32, j);
        }
    }

    // compatibility closure: merges propagate through one-letter contexts
    let letter_list: Vec<Letter> = letters.iter().copied().collect();
    loop {
        let mut changed = false;
        for i in 0..words.len() {
            let root = dsu.find(i as u32);
            if root == i as u32 {
                continue;
            }
            let w = &words[i];
            let rep = &words[root as usize];
            if w.len() + 1 > caps.max_len {
                continue;
            }
            for &g in &letter_list {
                let mut wg = w.clone();
                wg.push(g);
                let mut rg = rep.clone();
                rg.push(g);
                changed |= dsu.union(index[&wg], index[&rg]);

                let mut gw = Word::from_letters([g]);
                gw = gw.concat(w);
                let gr = Word::from_letters([g]).concat(rep);
                changed |= dsu.union(index[&gw], index[&gr]);
            }
        }
        if !changed {
            break;
        }
    }

    // classes in shortlex order of representatives
    let mut roots: Vec<u32> = Vec::new();
    let mut class_of_root: HashMap<u32, usize> = HashMap::new();
    for i in 0..words.len() {
        let root = dsu.find(i as u32);
        if root == i as u32 {
            class_of_root.insert(root, roots.len());
            roots.push(root);
        }
    }
    let class_count = roots.len();

    if class_count > caps.max_classes {
        return FreeObject {
            stable: false,
            class_count,
            monoid: None,
            generator_class: BTreeMap::new(),
            caps: caps.clone(),
        };
    }

    // right multiplication by generators must stay inside the enumeration
    for &root in &roots {
        if words[root as usize].len() + 1 > caps.max_len && !letter_list.is_empty() {
            return FreeObject {
                stable: false,
                class_count,
                monoid: None,
                generator_class: BTreeMap::new(),
                caps: caps.clone(),
            };
        }
    }

    let right_mul: Vec<Vec<usize>> = roots
        .iter()
        .map(|&root| {
            let rep = &words[root as usize];
            letter_list
                .iter()
                .map(|&g| {
                    let mut rg = rep.clone();
                    rg.push(g);
                    class_of_root[&dsu.find(index[&rg])]
                })
                .collect()
        })
        .collect();

    let fold = |start: usize, w: &Word, right_mul: &[Vec<usize>]| -> usize {
        let mut acc = start;
        for &l in w.iter() {
            let g = letter_list.iter().position(|&x| x == l).expect("generator");
            acc = right_mul[acc][g];
        }
        acc
    };

    let n = class_count;
    let mut table = vec![vec![0usize; n]; n];
    #[allow(clippy::needless_range_loop)]
    for a in 0..n {
        for b in 0..n {
            table[a][b] = fold(a, &words[roots[b] as usize], &right_mul);
        }
    }

    let elements: Vec<String> = roots.iter().map(|&r| render(&words[r as usize])).collect();
    let generator_class: BTreeMap<Letter, usize> = letter_list
        .iter()
        .map(|&g| {
            let idx = index[&Word::from_letters([g])];
            (g, class_of_root[&dsu.find(idx)])
        })
        .collect();

    let monoid = FiniteMonoid::new(elements, class_of_root[&dsu.find(0)], None, table);

    FreeObject {
        stable: true,
        class_count,
        monoid: Some(monoid),
        generator_class,
        caps: caps.clone(),
    }
}

/// Verdict of the free-object oracle on an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietyVerdict {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for VarietyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyVerdict::Holds => write!(f, "holds"),
            VarietyVerdict::Fails => write!(f, "fails"),
            VarietyVerdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Decides `var(basis) ⊨ id` by comparing the classes of both sides in the
/// free object over the identity's letters.
pub fn holds_in_variety(id: &Identity, basis: &[Identity], caps: &FreeObjectCaps) -> VarietyVerdict {
    if id.is_trivial() {
        return VarietyVerdict::Holds;
    }
    let letters = id.content();
    let object = free_object(basis, &letters, caps);
    if !object.stable {
        return VarietyVerdict::Unknown;
    }
    match (object.class_of(id.lhs()), object.class_of(id.rhs())) {
        (Some(a), Some(b)) if a == b => VarietyVerdict::Holds,
        (Some(_), Some(_)) => VarietyVerdict::Fails,
        _ => VarietyVerdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{id_a, id_b, id_e, preset, Identity};

    #[test]
    fn match_examples() {
        // x^2 against aabb
        let matches = match_pattern(&Word::lit("x^2"), &Word::lit("aabb"), 100);
        assert!(!matches.truncated);
        let nonempty: Vec<_> = matches
            .items
            .iter()
            .filter(|(s, _)| !s.get(Letter::new('x')).unwrap().is_empty())
            .collect();
        // σ(x)=a at 0, σ(x)=b at 2
        assert_eq!(nonempty.len(), 2);
        assert_eq!(nonempty[0].1, 0);
        assert_eq!(nonempty[0].0.get(Letter::new('x')).unwrap(), &Word::lit("a"));
        assert_eq!(nonempty[1].1, 2);
        assert_eq!(nonempty[1].0.get(Letter::new('x')).unwrap(), &Word::lit("b"));

        // xyx against aba includes the exact match
        let matches = match_pattern(&Word::lit("xyx"), &Word::lit("aba"), 1000);
        assert!(matches.items.iter().any(|(s, p)| {
            *p == 0
                && s.get(Letter::new('x')).unwrap() == &Word::lit("a")
                && s.get(Letter::new('y')).unwrap() == &Word::lit("b")
        }));
        assert!(matches.items.iter().any(|(s, _)| {
            s.get(Letter::new('x')).unwrap().is_empty()
                && s.get(Letter::new('y')).unwrap() == &Word::lit("aba")
        }));

        // single letter against the empty word
        let matches = match_pattern(&Word::lit("x"), &Word::empty(), 10);
        assert_eq!(matches.items.len(), 1);
        assert_eq!(matches.items[0].1, 0);
        assert!(matches.items[0].0.get(Letter::new('x')).unwrap().is_empty());
    }

    #[test]
    fn match_cap_flags_truncation() {
        let matches = match_pattern(&Word::lit("xy"), &Word::lit("aaaaaaaa"), 3);
        assert!(matches.truncated);
        assert_eq!(matches.items.len(), 3);
    }

    fn step(id: Identity, direction: Direction, pairs: &[(&str, &str)], position: usize) -> RewriteStep {
        let mut substitution = WordSubstitution::default();
        for (l, w) in pairs {
            substitution.insert(Letter::parse(l).unwrap(), Word::lit(w));
        }
        RewriteStep {
            identity: id,
            direction,
            substitution,
            position,
        }
    }

    #[test]
    fn apply_step_examples() {
        // ID-B on a^2b^2 swaps the squares
        let s = step(id_b(), Direction::LhsToRhs, &[("x", "a"), ("y", "b")], 0);
        assert_eq!(apply_step(&Word::lit("a^2b^2"), &s).unwrap(), Word::lit("b^2a^2"));

        // ID-E with the identity substitution
        let s = step(
            id_e(),
            Direction::LhsToRhs,
            &[("x", "x"), ("z", "z"), ("y", "y"), ("t", "t")],
            0,
        );
        assert_eq!(apply_step(&Word::lit("xzxyxty"), &s).unwrap(), Word::lit("xzyxty"));

        // ID-E with empty images deletes a duplicate x
        let s = step(
            id_e(),
            Direction::LhsToRhs,
            &[("x", "x"), ("z", "z"), ("y", "1"), ("t", "1")],
            0,
        );
        assert_eq!(apply_step(&Word::lit("xzx^2"), &s).unwrap(), Word::lit("xzx"));

        // reversibility
        let s = step(id_b(), Direction::LhsToRhs, &[("x", "a"), ("y", "b")], 0);
        let forward = apply_step(&Word::lit("a^2b^2"), &s).unwrap();
        assert_eq!(apply_step(&forward, &s.inverse()).unwrap(), Word::lit("a^2b^2"));

        // declared position must match
        let bad = step(id_b(), Direction::LhsToRhs, &[("x", "a"), ("y", "b")], 1);
        assert!(apply_step(&Word::lit("a^2b^2"), &bad).is_err());
    }

    #[test]
    fn derivable_examples() {
        let base = [id_e()];
        let budget = SearchBudget::default();
        let r = derivable(&Word::lit("xzx^2"), &Word::lit("xzx"), &base, &budget);
        assert_eq!(r.trace().unwrap().len(), 1);

        let r = derivable(&Word::lit("x^3"), &Word::lit("x^2"), &base, &budget);
        assert_eq!(r.trace().unwrap().len(), 1);

        let r = derivable(&Word::lit("u"), &Word::lit("u"), &[], &budget);
        assert_eq!(r.trace().unwrap().len(), 0);
    }

    #[test]
    fn derived_traces_verify() {
        let base = preset("O", 1).unwrap();
        let budget = SearchBudget::default();
        for (u, v) in [("xyx", "xyx^2"), ("xtyzxy", "xtyzyx"), ("x^3", "x^2")] {
            let r = derivable(&Word::lit(u), &Word::lit(v), &base, &budget);
            let trace = r.trace().unwrap_or_else(|| panic!("{u} -> {v} not derived"));
            verify_trace(trace, &base).unwrap();
        }
    }

    #[test]
    fn unknown_on_tight_budget() {
        let base = [id_a()];
        let budget = SearchBudget {
            max_steps: 1,
            ..SearchBudget::default()
        };
        let r = derivable(&Word::lit("xy"), &Word::lit("yx"), &base, &budget);
        assert!(!r.is_derivable());
    }

    #[test]
    fn trace_format_round_trip() {
        let text = "\
# doubling then shrinking
identity H: xyx == x^2yx^2
start: xyx
step: H lhs->rhs at 0 with x=x, y=y
step: ID-G lhs->rhs at 3 with x=x
step: H rhs->lhs at 0 with x=x, y=y
end: xyx^2
";
        let parsed = parse_trace(text).unwrap();
        assert_eq!(parsed.trace.start, Word::lit("xyx"));
        assert_eq!(parsed.trace.end, Word::lit("xyx^2"));
        assert_eq!(parsed.trace.steps.len(), 3);
        let mut allowed = parsed.declared.clone();
        allowed.push(crate::identities::id_g());
        verify_trace(&parsed.trace, &allowed).unwrap();

        let rendered = render_trace(
            &parsed.trace,
            &[("H".to_string(), Identity::lit("xyx", "x^2yx^2"))],
        );
        let reparsed = parse_trace(&rendered).unwrap();
        assert_eq!(reparsed.trace, parsed.trace);
    }

    #[test]
    fn verify_rejects_missing_identity() {
        let text = "\
start: xyx
step: ID-A lhs->rhs at 0 with x=x, y=y
end: xyx^2
";
        let parsed = parse_trace(text).unwrap();
        verify_trace(&parsed.trace, &[id_a()]).unwrap();
        let err = verify_trace(&parsed.trace, &[id_b()]).unwrap_err();
        assert!(matches!(err, TraceError::NotAllowed { step: 0, .. }));
    }

    #[test]
    fn free_object_single_letter() {
        let caps = FreeObjectCaps {
            max_len: 6,
            ..FreeObjectCaps::default()
        };
        let letters = Word::lit("x").content();

        let e = free_object(&preset("E", 1).unwrap(), &letters, &caps);
        assert!(e.stable);
        assert_eq!(e.class_count, 3); // 1, x, x^2

        let idem = free_object(&[Identity::lit("x", "x^2")], &letters, &caps);
        assert!(idem.stable);
        assert_eq!(idem.class_count, 2);

        let f = free_object(&preset("F", 1).unwrap(), &letters, &caps);
        assert!(f.stable);
        assert_eq!(f.class_count, 3);
    }

    #[test]
    fn holds_in_variety_examples() {
        let caps = FreeObjectCaps {
            max_len: 8,
            ..FreeObjectCaps::default()
        };
        assert_eq!(
            holds_in_variety(&Identity::lit("x^2", "x^3"), &preset("E", 1).unwrap(), &caps),
            VarietyVerdict::Holds
        );
        assert_eq!(
            holds_in_variety(&Identity::lit("xy", "yx"), &preset("F", 1).unwrap(), &caps),
            VarietyVerdict::Fails
        );
        assert_eq!(
            holds_in_variety(&Identity::lit("uvu", "uvu"), &[], &caps),
            VarietyVerdict::Holds
        );
    }

    #[test]
    fn free_object_tables_validate() {
        let caps = FreeObjectCaps {
            max_len: 8,
            ..FreeObjectCaps::default()
        };
        let letters = Word::lit("xy").content();
        for name in ["E", "F"] {
            let object = free_object(&preset(name, 1).unwrap(), &letters, &caps);
            assert!(object.stable, "{name} free object on two letters");
            let monoid = object.monoid.as_ref().unwrap();
            assert!(monoid.validate().is_empty(), "{name}: {:?}", monoid.validate());
            // the defining identities hold under the generator substitution
            for id in preset(name, 1).unwrap() {
                if id.content().len() <= 2 {
                    let renamed = rename_into_xy(&id);
                    assert_eq!(
                        object.class_of(renamed.lhs()),
                        object.class_of(renamed.rhs()),
                        "{name} basis identity {renamed}"
                    );
                }
            }
        }
    }

    fn rename_into_xy(id: &Identity) -> Identity {
        crate::identities::canonical_rename(id)
    }
}
