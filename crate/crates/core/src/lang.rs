//! Bounded trace languages over state-pair letters.
//!
//! A [`Lang`] is a finite set of words together with the length bound `L`
//! under which it is exhaustive: it holds exactly the words of length `≤ L`
//! of the (possibly infinite) language it stands for. Every operation that
//! builds longer words drops those longer than the requested bound, and all
//! comparisons require matching bounds. Because every operation is
//! coherent under truncation, an inclusion checked at bound `L` is an exact
//! statement about all words of length at most `L`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::StateId;

/// A single transition `(σ, σ′)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub pre: StateId,
    pub post: StateId,
}

impl Letter {
    pub const fn new(pre: StateId, post: StateId) -> Self {
        Letter { pre, post }
    }

    /// Whether `self` followed by `next` chains.
    pub fn chains(self, next: Letter) -> bool {
        self.post == next.pre
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pre, self.post)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pre, self.post)
    }
}

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_pairs(pairs: &[(StateId, StateId)]) -> Self {
        Word(pairs.iter().map(|&(a, b)| Letter::new(a, b)).collect())
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

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Adjacent letters chain; `ε` is consistent.
    pub fn is_consistent(&self) -> bool {
        self.0.windows(2).all(|w| w[0].chains(w[1]))
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Letters as `"(i,j)"` strings, the wire form used in reports.
    pub fn to_letter_strings(&self) -> Vec<String> {
        self.0.iter().map(|l| l.to_string()).collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Maximum word length, always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bound(usize);

impl Bound {
    pub fn new(max_len: usize) -> Result<Self> {
        if max_len == 0 {
            Err(Error::ZeroBound)
        } else {
            Ok(Bound(max_len))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The letters words are drawn from when a residual needs the whole
/// bounded universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet(Vec<Letter>);

impl Alphabet {
    /// All `n²` pairs over `n` states.
    pub fn full(states: usize) -> Self {
        let n = states as StateId;
        Alphabet(
            (0..n)
                .flat_map(|a| (0..n).map(move |b| Letter::new(a, b)))
                .collect(),
        )
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let set: BTreeSet<Letter> = letters.into_iter().collect();
        Alphabet(set.into_iter().collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Every word of length `≤ bound` over this alphabet.
    pub fn universe(&self, bound: Bound) -> Lang {
        let mut words = BTreeSet::new();
        let mut layer = vec![Word::empty()];
        words.insert(Word::empty());
        for _ in 0..bound.get() {
            let mut next = Vec::with_capacity(layer.len() * self.0.len());
            for w in &layer {
                for l in &self.0 {
                    let mut v = w.0.clone();
                    v.push(*l);
                    next.push(Word(v));
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        Lang { words, bound }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lang {
    words: BTreeSet<Word>,
    bound: Bound,
}

impl fmt::Debug for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lang[L={}]", self.bound)?;
        f.debug_set().entries(self.words.iter()).finish()
    }
}

impl Lang {
    /// Build a language, dropping words longer than the bound.
    pub fn new(words: impl IntoIterator<Item = Word>, bound: Bound) -> Self {
        Lang {
            words: words
                .into_iter()
                .filter(|w| w.len() <= bound.get())
                .collect(),
            bound,
        }
    }

    pub fn zero(bound: Bound) -> Self {
        Lang {
            words: BTreeSet::new(),
            bound,
        }
    }

    pub fn one(bound: Bound) -> Self {
        Lang {
            words: std::iter::once(Word::empty()).collect(),
            bound,
        }
    }

    /// Length-one words, one per letter.
    pub fn letters(letters: impl IntoIterator<Item = Letter>, bound: Bound) -> Self {
        Lang::new(letters.into_iter().map(|l| Word(vec![l])), bound)
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn contains_empty(&self) -> bool {
        self.words.contains(&Word::empty())
    }

    /// Restrict to words of length `≤ bound` (which may also enlarge the
    /// declared bound; the result is then only exhaustive up to the old one).
    pub fn with_bound(&self, bound: Bound) -> Lang {
        Lang::new(self.words.iter().cloned(), bound)
    }

    /// Every letter occurring in some word.
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::from_letters(self.words.iter().flat_map(|w| w.0.iter().copied()))
    }

    fn check_bounds(&self, other: &Lang) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch {
                left: self.bound.get(),
                right: other.bound.get(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &Lang) -> Result<Lang> {
        self.check_bounds(other)?;
        Ok(Lang {
            words: self.words.union(&other.words).cloned().collect(),
            bound: self.bound,
        })
    }

    pub fn meet(&self, other: &Lang) -> Result<Lang> {
        self.check_bounds(other)?;
        Ok(Lang {
            words: self.words.intersection(&other.words).cloned().collect(),
            bound: self.bound,
        })
    }

    pub fn leq(&self, other: &Lang) -> Result<bool> {
        self.check_bounds(other)?;
        Ok(self.words.is_subset(&other.words))
    }

    /// First word of `self` missing from `other`.
    pub fn leq_witness(&self, other: &Lang) -> Result<Option<Word>> {
        self.check_bounds(other)?;
        Ok(self.words.difference(&other.words).next().cloned())
    }

    pub fn retain(&self, mut keep: impl FnMut(&Word) -> bool) -> Lang {
        Lang {
            words: self.words.iter().filter(|w| keep(w)).cloned().collect(),
            bound: self.bound,
        }
    }

    /// One word per line, letters as `(i,j)`, lines sorted.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

pub fn concat(x: &Lang, y: &Lang, bound: Bound) -> Lang {
    let l = bound.get();
    let mut words = BTreeSet::new();
    for a in x.iter().filter(|a| a.len() <= l) {
        for b in y.iter().filter(|b| a.len() + b.len() <= l) {
            words.insert(a.concat(b));
        }
    }
    Lang { words, bound }
}

/// All order-preserving interleavings of `u` and `v`.
pub fn word_shuffle(u: &Word, v: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    interleave(u.letters(), v.letters(), &mut buf, &mut out);
    out
}

fn interleave(u: &[Letter], v: &[Letter], buf: &mut Vec<Letter>, out: &mut BTreeSet<Word>) {
    match (u.split_first(), v.split_first()) {
        (None, _) => {
            let mut w = buf.clone();
            w.extend_from_slice(v);
            out.insert(Word(w));
        }
        (_, None) => {
            let mut w = buf.clone();
            w.extend_from_slice(u);
            out.insert(Word(w));
        }
        (Some((a, s)), Some((b, t))) => {
            buf.push(*a);
            interleave(s, v, buf, out);
            buf.pop();
            buf.push(*b);
            interleave(u, t, buf, out);
            buf.pop();
        }
    }
}

pub fn shuffle(x: &Lang, y: &Lang, bound: Bound) -> Lang {
    let l = bound.get();
    let mut words = BTreeSet::new();
    for a in x.iter() {
        for b in y.iter().filter(|b| a.len() + b.len() <= l) {
            words.extend(word_shuffle(a, b));
        }
    }
    Lang { words, bound }
}

/// Least fixpoint of `S ↦ {ε} ∪ X·S` within the bounded universe.
pub fn star(x: &Lang, bound: Bound) -> Lang {
    let l = bound.get();
    let mut words: BTreeSet<Word> = std::iter::once(Word::empty()).collect();
    let mut frontier: Vec<Word> = vec![Word::empty()];
    let nonempty: Vec<&Word> = x.iter().filter(|w| !w.is_empty() && w.len() <= l).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &nonempty {
            for s in &frontier {
                if a.len() + s.len() <= l {
                    let w = a.concat(s);
                    if !words.contains(&w) {
                        words.insert(w.clone());
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    Lang { words, bound }
}

pub fn plus(x: &Lang, bound: Bound) -> Lang {
    concat(x, &star(x, bound), bound)
}

/// `z ← y`: the largest bounded `X` with `X·Y ≤ Z`.
pub fn residual_left(z: &Lang, y: &Lang, alphabet: &Alphabet, bound: Bound) -> Lang {
    let l = bound.get();
    let z = z.with_bound(bound);
    let ok = |w: &Word| {
        y.iter()
            .filter(|v| w.len() + v.len() <= l)
            .all(|v| z.contains(&w.concat(v)))
    };
    residual_candidates(&z, y.contains_empty(), alphabet, bound, ok)
}

/// `x → z`: the largest bounded `Y` with `X·Y ≤ Z`.
pub fn residual_right(x: &Lang, z: &Lang, alphabet: &Alphabet, bound: Bound) -> Lang {
    let l = bound.get();
    let z = z.with_bound(bound);
    let ok = |w: &Word| {
        x.iter()
            .filter(|u| u.len() + w.len() <= l)
            .all(|u| z.contains(&u.concat(w)))
    };
    residual_candidates(&z, x.contains_empty(), alphabet, bound, ok)
}

/// `x → Z` for a target given by a membership test rather than a word set;
/// scans the whole bounded universe.
pub fn residual_right_with(
    x: &Lang,
    member: impl Fn(&Word) -> bool,
    alphabet: &Alphabet,
    bound: Bound,
) -> Lang {
    let l = bound.get();
    let words = alphabet
        .universe(bound)
        .words
        .into_iter()
        .filter(|w| {
            x.iter()
                .filter(|u| u.len() + w.len() <= l)
                .all(|u| member(&u.concat(w)))
        })
        .collect();
    Lang { words, bound }
}

/// `x / z`: the largest bounded `Y` with `X ∥ Y ≤ Z`.
pub fn residual_par(x: &Lang, z: &Lang, alphabet: &Alphabet, bound: Bound) -> Lang {
    let l = bound.get();
    let z = z.with_bound(bound);
    let ok = |w: &Word| {
        x.iter()
            .filter(|u| u.len() + w.len() <= l)
            .all(|u| word_shuffle(u, w).iter().all(|s| z.contains(s)))
    };
    residual_candidates(&z, x.contains_empty(), alphabet, bound, ok)
}

/// When the other operand contains `ε`, every residual word must itself lie
/// in `Z`, so only `Z` needs scanning; otherwise the whole universe does.
fn residual_candidates(
    z: &Lang,
    unit_in_operand: bool,
    alphabet: &Alphabet,
    bound: Bound,
    ok: impl Fn(&Word) -> bool,
) -> Lang {
    let words = if unit_in_operand {
        z.iter().filter(|w| ok(w)).cloned().collect()
    } else {
        alphabet
            .universe(bound)
            .words
            .into_iter()
            .filter(|w| ok(w))
            .collect()
    };
    Lang { words, bound }
}
