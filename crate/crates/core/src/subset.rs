//! Subsets of the simple-root index set and words in the simple reflections.
//!
//! Internally indices are 0-based. Everything that crosses an I/O boundary
//! (JSON, CSV, CLI flags, `Display`) is 1-based, matching the usual
//! Bourbaki labelling.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Maximum rank representable by [`IndexSubset`].
pub const MAX_RANK: usize = 64;

/// A subset of the simple indices, stored as a bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubset(u64);

impl IndexSubset {
    pub const EMPTY: IndexSubset = IndexSubset(0);

    pub fn full(rank: usize) -> Self {
        assert!(rank <= MAX_RANK);
        if rank == MAX_RANK {
            IndexSubset(u64::MAX)
        } else {
            IndexSubset((1u64 << rank) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        IndexSubset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = IndexSubset::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a subset from 1-based labels, checking them against `rank`.
    pub fn from_labels(labels: &[usize], rank: usize) -> Result<Self> {
        let mut s = IndexSubset::EMPTY;
        for &l in labels {
            if l == 0 || l > rank {
                return Err(Error::Word { letter: l, rank });
            }
            s.insert(l - 1);
        }
        Ok(s)
    }

    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_RANK && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_RANK, "index {i} exceeds maximum rank");
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < MAX_RANK {
            self.0 &= !(1 << i);
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: IndexSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: IndexSubset) -> Self {
        IndexSubset(self.0 & other.0)
    }

    pub fn union(self, other: IndexSubset) -> Self {
        IndexSubset(self.0 | other.0)
    }

    pub fn difference(self, other: IndexSubset) -> Self {
        IndexSubset(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_RANK).filter(move |i| bits >> i & 1 == 1)
    }

    /// Image under a permutation of the index set given as `perm[i] = image of i`.
    pub fn permuted(self, perm: &[usize]) -> Self {
        IndexSubset::from_indices(self.iter().map(|i| perm[i]))
    }

    /// All subsets of `self`, in increasing order of their bit patterns.
    pub fn subsets(self) -> impl Iterator<Item = IndexSubset> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(IndexSubset(cur))
        })
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for IndexSubset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        if labels.iter().any(|&l| l == 0 || l > MAX_RANK) {
            return Err(serde::de::Error::custom("subset labels must lie in 1..=64"));
        }
        Ok(IndexSubset::from_indices(labels.into_iter().map(|l| l - 1)))
    }
}

/// A word in the simple reflections, 0-based letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// From 1-based letters. Range is checked when the word is evaluated.
    pub fn from_labels(labels: &[usize]) -> Self {
        Word(labels.iter().map(|&l| l.wrapping_sub(1)).collect())
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Accepts `e`, the empty string, or a comma/space separated list of 1-based letters.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() || t == "e" {
            return Ok(Word::empty());
        }
        let mut labels = Vec::new();
        for part in t.split(|c: char| c == ',' || c.is_whitespace()) {
            if part.is_empty() {
                continue;
            }
            let l: usize = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {part:?} in word {s:?}")))?;
            if l == 0 {
                return Err(Error::Parse(format!("letters are 1-based, got 0 in {s:?}")));
            }
            labels.push(l);
        }
        Ok(Word::from_labels(&labels))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        if labels.contains(&0) {
            return Err(serde::de::Error::custom("word letters are 1-based"));
        }
        Ok(Word::from_labels(&labels))
    }
}
