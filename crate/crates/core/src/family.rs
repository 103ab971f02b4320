//! Sets of distinct equal-length strings, with line-per-member and JSON
//! array encodings.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// A set of distinct [`BitString`]s sharing one length. Iteration is in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    len: usize,
    members: BTreeSet<BitString>,
}

impl Family {
    pub fn new(len: usize) -> Result<Self> {
        BitString::zeros(len)?;
        Ok(Family { len, members: BTreeSet::new() })
    }

    /// Fails on a length mismatch or a repeated member.
    pub fn from_members(len: usize, members: impl IntoIterator<Item = BitString>) -> Result<Self> {
        let mut family = Family::new(len)?;
        for m in members {
            if !family.insert(m)? {
                return Err(Error::invalid(format!("duplicate member {m}")));
            }
        }
        Ok(family)
    }

    /// Adds `x`, returning whether it was new.
    pub fn insert(&mut self, x: BitString) -> Result<bool> {
        if x.len() != self.len {
            return Err(Error::LengthMismatch { left: self.len, right: x.len() });
        }
        Ok(self.members.insert(x))
    }

    pub fn string_len(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &BitString) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &BitString> + DoubleEndedIterator {
        self.members.iter()
    }

    pub fn to_vec(&self) -> Vec<BitString> {
        self.members.iter().copied().collect()
    }

    pub fn is_subset(&self, other: &Family) -> bool {
        self.len == other.len && self.members.is_subset(&other.members)
    }

    /// Members that also belong to `other`.
    pub fn intersection(&self, other: &Family) -> Family {
        Family {
            len: self.len,
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    /// One literal per line, each followed by `\n`.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            writeln!(out, "{m}").unwrap();
        }
        out
    }

    /// Parses the line format. Blank lines are skipped. An empty input
    /// carries no length, so `len` must then be supplied.
    pub fn from_lines(text: &str, len: Option<usize>) -> Result<Self> {
        let members = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<BitString>>>()?;
        Self::from_parsed(members, len)
    }

    /// A JSON array of literals, e.g. `["01","10"]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.members).expect("string array always serializes")
    }

    pub fn from_json(text: &str, len: Option<usize>) -> Result<Self> {
        let members: Vec<BitString> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_parsed(members, len)
    }

    fn from_parsed(members: Vec<BitString>, len: Option<usize>) -> Result<Self> {
        let len = match (len, members.first()) {
            (Some(l), _) => l,
            (None, Some(m)) => m.len(),
            (None, None) => {
                return Err(Error::invalid("cannot infer the string length of an empty family"))
            }
        };
        Family::from_members(len, members)
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a BitString;
    type IntoIter = std::collections::btree_set::Iter<'a, BitString>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
