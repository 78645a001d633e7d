//! Finite state spaces, state sets and binary relations over states.
//!
//! A state is a valuation of an ordered list of variables, each ranging over
//! `0..N`. States are numbered in mixed radix with the first variable as the
//! least significant digit, so a [`StateId`] is a plain index into the
//! enumeration of all valuations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type StateId = u32;

/// Default refusal threshold for `N^|vars|`.
pub const DEFAULT_STATE_CEILING: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSpace {
    variables: Vec<String>,
    domain: u32,
    size: usize,
}

impl StateSpace {
    pub fn new<S: AsRef<str>>(variables: &[S], domain: u32) -> Result<Self> {
        Self::with_ceiling(variables, domain, DEFAULT_STATE_CEILING)
    }

    pub fn with_ceiling<S: AsRef<str>>(
        variables: &[S],
        domain: u32,
        ceiling: usize,
    ) -> Result<Self> {
        if domain < 2 {
            return Err(Error::DomainTooSmall(domain));
        }
        let mut names: Vec<String> = Vec::with_capacity(variables.len());
        for v in variables {
            let v = v.as_ref().to_string();
            if names.contains(&v) {
                return Err(Error::DuplicateVariable(v));
            }
            names.push(v);
        }
        let states = (domain as u128).checked_pow(names.len() as u32);
        match states {
            Some(s) if s <= ceiling as u128 => Ok(StateSpace {
                variables: names,
                domain,
                size: s as usize,
            }),
            Some(s) => Err(Error::StateSpaceTooLarge { states: s, ceiling }),
            None => Err(Error::StateSpaceTooLarge {
                states: u128::MAX,
                ceiling,
            }),
        }
    }

    /// A space with `n` anonymous states and no variables to speak of; used
    /// for purely language-level work where states are just labels.
    pub fn anonymous(n: usize) -> Self {
        StateSpace {
            variables: Vec::new(),
            domain: n.max(1) as u32,
            size: n,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> u32 {
        self.domain
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        0..self.size as StateId
    }

    fn radix(&self, var: usize) -> u32 {
        self.domain.pow(var as u32)
    }

    pub fn value(&self, state: StateId, var: usize) -> u32 {
        (state / self.radix(var)) % self.domain
    }

    /// `σ[var ↦ value]`.
    pub fn with_value(&self, state: StateId, var: usize, value: u32) -> StateId {
        let r = self.radix(var);
        let old = (state / r) % self.domain;
        state - old * r + (value % self.domain) * r
    }

    pub fn valuation(&self, state: StateId) -> Vec<u32> {
        (0..self.variables.len())
            .map(|i| self.value(state, i))
            .collect()
    }

    pub fn state_of(&self, values: &[u32]) -> StateId {
        values
            .iter()
            .enumerate()
            .fold(0, |acc, (i, v)| acc + (v % self.domain) * self.radix(i))
    }

    /// Render a state as `{x=1, y=0}`; anonymous spaces print `s3`.
    pub fn describe(&self, state: StateId) -> String {
        if self.variables.is_empty() {
            return format!("s{state}");
        }
        let parts: Vec<String> = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{v}={}", self.value(state, i)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    n: usize,
    bits: Vec<u64>,
}

impl StateSet {
    pub fn empty(n: usize) -> Self {
        StateSet {
            n,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i as StateId);
        }
        s
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(StateId) -> bool) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n as StateId {
            if f(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, s: StateId) {
        let s = s as usize;
        assert!(s < self.n, "state {s} out of range {}", self.n);
        self.bits[s / 64] |= 1 << (s % 64);
    }

    pub fn contains(&self, s: StateId) -> bool {
        let s = s as usize;
        s < self.n && self.bits[s / 64] & (1 << (s % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.n as StateId).filter(move |s| self.contains(*s))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.zip(self, |a, _| !a);
        out.clear_tail();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "state sets over different spaces");
        StateSet {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation on the states of one space, stored as a dense bit
/// matrix (row = pre-state).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    row_words: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        let row_words = n.div_ceil(64);
        Relation {
            n,
            row_words,
            bits: vec![0; row_words * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(StateId, StateId) -> bool) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n as StateId {
            for b in 0..n as StateId {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (StateId, StateId)>) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairs(n, (0..n as StateId).map(|s| (s, s)))
    }

    pub fn top(n: usize) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n as StateId {
            for b in 0..n as StateId {
                r.insert(a, b);
            }
        }
        r
    }

    /// `Id_P`.
    pub fn identity_on(set: &StateSet) -> Self {
        Self::from_pairs(set.universe_size(), set.iter().map(|s| (s, s)))
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    fn index(&self, a: StateId, b: StateId) -> (usize, u64) {
        let (a, b) = (a as usize, b as usize);
        assert!(a < self.n && b < self.n, "pair ({a},{b}) out of range {}", self.n);
        (a * self.row_words + b / 64, 1 << (b % 64))
    }

    pub fn insert(&mut self, a: StateId, b: StateId) {
        let (i, m) = self.index(a, b);
        self.bits[i] |= m;
    }

    pub fn contains(&self, a: StateId, b: StateId) -> bool {
        if a as usize >= self.n || b as usize >= self.n {
            return false;
        }
        let (i, m) = self.index(a, b);
        self.bits[i] & m != 0
    }

    pub fn successors(&self, a: StateId) -> impl Iterator<Item = StateId> + '_ {
        let start = a as usize * self.row_words;
        let row = &self.bits[start..start + self.row_words];
        row.iter().enumerate().flat_map(|(w, word)| {
            let mut word = *word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let tz = word.trailing_zeros();
                word &= word - 1;
                Some((w * 64) as StateId + tz)
            })
        })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        (0..self.n as StateId).flat_map(move |a| self.successors(a).map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "relations over different spaces");
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Image of a state set.
    pub fn image(&self, set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.n);
        for a in set.iter() {
            for b in self.successors(a) {
                out.insert(b);
            }
        }
        out
    }

    /// Least superset of `set` closed under the relation.
    pub fn closure_of(&self, set: &StateSet) -> StateSet {
        let mut seen = set.clone();
        let mut stack: Vec<StateId> = set.iter().collect();
        while let Some(a) = stack.pop() {
            for b in self.successors(a) {
                if !seen.contains(b) {
                    seen.insert(b);
                    stack.push(b);
                }
            }
        }
        seen
    }

    /// Whether `b` is reachable from `a` in one or more steps.
    pub fn reaches(&self, a: StateId, b: StateId) -> bool {
        let mut start = StateSet::empty(self.n);
        for s in self.successors(a) {
            start.insert(s);
        }
        self.closure_of(&start).contains(b)
    }

    /// `R⁺`, by Warshall's algorithm over bit rows.
    pub fn transitive_closure(&self) -> Self {
        let mut out = self.clone();
        let rw = self.row_words;
        for k in 0..self.n {
            let row_k: Vec<u64> = out.bits[k * rw..(k + 1) * rw].to_vec();
            let (word, mask) = (k / 64, 1u64 << (k % 64));
            for i in 0..self.n {
                if out.bits[i * rw + word] & mask != 0 {
                    for (dst, src) in out.bits[i * rw..(i + 1) * rw].iter_mut().zip(&row_k) {
                        *dst |= src;
                    }
                }
            }
        }
        out
    }

    /// `{(a, c). ∃b. (a, b) ∈ self ∧ (b, c) ∈ other}`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "relations over different spaces");
        let rw = self.row_words;
        let mut out = Relation::empty(self.n);
        for a in 0..self.n {
            for b in self.successors(a as StateId) {
                let b = b as usize;
                for j in 0..rw {
                    out.bits[a * rw + j] |= other.bits[b * rw + j];
                }
            }
        }
        out
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "relations over different spaces");
        Relation {
            n: self.n,
            row_words: self.row_words,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
