//! Finite alphabets, words, and monomial patterns.
//!
//! Words are finite sequences over a fixed, totally ordered alphabet of
//! single-character symbols. Positions are 1-based in all public
//! documentation; the empty word is allowed wherever a `Word` is accepted,
//! and operations that require nonempty input say so explicitly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from alphabet and pattern construction and word-level queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol '{0}' in alphabet")]
    DuplicateSymbol(char),
    #[error("symbol '{0}' does not belong to the alphabet")]
    ForeignSymbol(char),
    #[error("the empty word has no image in a semigroup over nonempty words")]
    EmptyWord,
    #[error("factor length must be at least 1")]
    ZeroFactorLength,
    #[error("monomial pattern needs at least one anchor")]
    NoAnchors,
    #[error("monomial anchors must be nonempty")]
    EmptyAnchor,
}

/// A fixed, totally ordered set of symbols.
///
/// The symbol order is the order given at construction; it is used for every
/// canonical ordering downstream (state numbering, generator numbering,
/// enumeration order), so two alphabets with the same symbols in different
/// orders are deliberately distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from symbols in the given order.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, WordError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for &c in &symbols {
            if !seen.insert(c) {
                return Err(WordError::DuplicateSymbol(c));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Builds the alphabet of all symbols occurring in `text`, sorted.
    pub fn from_occurring(text: impl IntoIterator<Item = char>) -> Result<Self, WordError> {
        let set: BTreeSet<char> = text.into_iter().collect();
        Alphabet::new(set)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.contains(&c)
    }

    /// Position of a symbol in the fixed order.
    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// Checks that every symbol of `w` belongs to this alphabet.
    pub fn validate(&self, w: &Word) -> Result<(), WordError> {
        match w.symbols().iter().find(|&&c| !self.contains(c)) {
            Some(&c) => Err(WordError::ForeignSymbol(c)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A finite word; possibly empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<char>);

impl Word {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Self {
        Word(symbols.into_iter().collect())
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    /// Symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<char> {
        if i == 0 {
            None
        } else {
            self.0.get(i - 1).copied()
        }
    }

    /// The factor spanning 1-based positions `from..=to` (empty if `from > to`).
    pub fn factor(&self, from: usize, to: usize) -> Word {
        if from > to || from == 0 || to > self.len() {
            return Word::empty();
        }
        Word(self.0[from - 1..to].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl FromStr for Word {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Word(s.chars().collect()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The set of length-`k` factors of `u`; empty when `k > |u|`.
pub fn factor_alphabet(u: &Word, k: usize) -> Result<BTreeSet<Word>, WordError> {
    if k == 0 {
        return Err(WordError::ZeroFactorLength);
    }
    let mut out = BTreeSet::new();
    if k <= u.len() {
        for w in u.symbols().windows(k) {
            out.insert(Word(w.to_vec()));
        }
    }
    Ok(out)
}

/// The prefix of `u` of length `min(k, |u|)`.
pub fn bounded_prefix(u: &Word, k: usize) -> Word {
    Word(u.symbols()[..k.min(u.len())].to_vec())
}

/// The suffix of `u` of length `min(k, |u|)`.
pub fn bounded_suffix(u: &Word, k: usize) -> Word {
    let n = u.len();
    Word(u.symbols()[n - k.min(n)..].to_vec())
}

/// Whether interior (and flagged boundary) gaps require at least one letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gap {
    /// Gaps stand for arbitrary nonempty words.
    Plus,
    /// Gaps stand for arbitrary, possibly empty words.
    Star,
}

/// A pattern `w_1 gap w_2 gap ... w_l`, optionally with a gap before `w_1`
/// and/or after `w_l`.
///
/// All gaps in one pattern have the same kind. Without a leading gap the
/// pattern is anchored at the start (`w_1` must be a prefix); without a
/// trailing gap it is anchored at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPattern {
    anchors: Vec<Word>,
    gap: Gap,
    leading_gap: bool,
    trailing_gap: bool,
}

impl MonomialPattern {
    pub fn new(
        anchors: Vec<Word>,
        gap: Gap,
        leading_gap: bool,
        trailing_gap: bool,
    ) -> Result<Self, WordError> {
        if anchors.is_empty() {
            return Err(WordError::NoAnchors);
        }
        if anchors.iter().any(Word::is_empty) {
            return Err(WordError::EmptyAnchor);
        }
        Ok(MonomialPattern { anchors, gap, leading_gap, trailing_gap })
    }

    pub fn anchors(&self) -> &[Word] {
        &self.anchors
    }

    pub fn gap(&self) -> Gap {
        self.gap
    }

    pub fn leading_gap(&self) -> bool {
        self.leading_gap
    }

    pub fn trailing_gap(&self) -> bool {
        self.trailing_gap
    }
}

/// Decides `u ∈ pattern` by dynamic programming over (position, anchor).
///
/// `ends[j]` collects the positions where anchor `j` can end; any completed
/// match that satisfies the trailing boundary condition is accepted.
pub fn monomial_member(u: &Word, pattern: &MonomialPattern) -> bool {
    let n = u.len();
    let us = u.symbols();
    let min_gap = match pattern.gap {
        Gap::Plus => 1,
        Gap::Star => 0,
    };

    let matches_at = |start: usize, w: &Word| -> bool {
        let ws = w.symbols();
        start + ws.len() <= n && &us[start..start + ws.len()] == ws
    };

    // Positions here are 0-based offsets: an anchor "ends at e" when it
    // occupies us[e - |w| .. e].
    let first = &pattern.anchors[0];
    let starts: Vec<usize> = if pattern.leading_gap {
        (min_gap..=n).collect()
    } else {
        vec![0]
    };
    let mut ends = vec![false; n + 1];
    for s in starts {
        if matches_at(s, first) {
            ends[s + first.len()] = true;
        }
    }

    for w in &pattern.anchors[1..] {
        let mut next = vec![false; n + 1];
        for e in 0..=n {
            if !ends[e] {
                continue;
            }
            for s in e + min_gap..=n {
                if matches_at(s, w) {
                    next[s + w.len()] = true;
                }
            }
        }
        ends = next;
    }

    match (pattern.trailing_gap, pattern.gap) {
        (false, _) => ends[n],
        (true, Gap::Star) => ends.iter().any(|&b| b),
        (true, Gap::Plus) => ends[..n].iter().any(|&b| b),
    }
}

/// All anchor tuples `(w_1, ..., w_l)` with `Σ|w_i| ≤ n` such that
/// `u ∈ w_1 A⁺ w_2 ... A⁺ w_l` with `u` starting in `w_1` and ending in
/// `w_l` (for `l = 1` this means `u = w_1`; the empty tuple `l = 0` is the
/// empty product, the language `{ε}`, and belongs to the profile exactly
/// when `u` is empty).
///
/// Without the empty product the empty word would share a profile with
/// every word too long to match an anchored pattern, and comparing profiles
/// would not be stable under appending a letter.
///
/// Only factors of `u` can appear as anchors, so the result does not depend
/// on any ambient alphabet.
pub fn monomial_profile(u: &Word, n: usize) -> BTreeSet<Vec<Word>> {
    let mut out = BTreeSet::new();
    if n == 0 {
        return out;
    }
    if u.is_empty() {
        out.insert(Vec::new());
        return out;
    }

    let mut factors: Vec<Word> = Vec::new();
    for k in 1..=n.min(u.len()) {
        if let Ok(set) = factor_alphabet(u, k) {
            factors.extend(set);
        }
    }

    let mut stack: Vec<Vec<Word>> = vec![Vec::new()];
    while let Some(tuple) = stack.pop() {
        let used: usize = tuple.iter().map(Word::len).sum();
        if !tuple.is_empty() {
            let pattern =
                MonomialPattern::new(tuple.clone(), Gap::Plus, false, false).expect("nonempty");
            if monomial_member(u, &pattern) {
                out.insert(tuple.clone());
            }
        }
        for w in &factors {
            if used + w.len() <= n {
                let mut next = tuple.clone();
                next.push(w.clone());
                stack.push(next);
            }
        }
    }
    out
}
