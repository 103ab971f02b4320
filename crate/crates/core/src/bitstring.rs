//! Fixed-length binary strings and the elementary predicates on them.
//!
//! Positions are 1-based: position `i` of a string of length `n` is stored
//! in bit `i - 1` of the backing word. The textual form puts position 1
//! first, so `"110"` has ones at positions 1 and 2.
//!
//! Ordering is lexicographic on the textual form, which is the same as
//! comparing the strings as big-endian numbers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest string that fits the backing word.
pub const MAX_LEN: usize = 64;

#[inline]
pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString {
    len: u8,
    bits: u64,
}

impl BitString {
    /// The all-zero string of length `len`.
    pub fn zeros(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(BitString { len: len as u8, bits: 0 })
    }

    /// The all-one string of length `len`.
    pub fn ones(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(BitString { len: len as u8, bits: mask(len) })
    }

    /// Builds a string from its raw word, bit `i - 1` holding position `i`.
    pub fn from_bits(len: usize, bits: u64) -> Result<Self> {
        check_len(len)?;
        if bits & !mask(len) != 0 {
            return Err(Error::invalid(format!(
                "bits {bits:#x} set beyond length {len}"
            )));
        }
        Ok(BitString { len: len as u8, bits })
    }

    /// Builds the string whose big-endian reading (position 1 most
    /// significant) is `value`. Enumerating `0..2^len` through this yields
    /// all strings in lexicographic order.
    pub fn from_lex_value(len: usize, value: u64) -> Result<Self> {
        check_len(len)?;
        if value & !mask(len) != 0 {
            return Err(Error::invalid(format!(
                "value {value} does not fit in {len} positions"
            )));
        }
        Ok(BitString { len: len as u8, bits: reverse_within(value, len) })
    }

    /// Unchecked constructor for hot loops; `len` and the mask are the
    /// caller's responsibility.
    #[inline]
    pub(crate) fn raw(len: usize, bits: u64) -> Self {
        debug_assert!((1..=MAX_LEN).contains(&len) && bits & !mask(len) == 0);
        BitString { len: len as u8, bits }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Big-endian numeric value; the inverse of [`BitString::from_lex_value`].
    #[inline]
    pub fn lex_value(&self) -> u64 {
        reverse_within(self.bits, self.len())
    }

    /// Value at 1-based position `pos`.
    pub fn get(&self, pos: usize) -> bool {
        assert!(
            pos >= 1 && pos <= self.len(),
            "position {pos} out of range 1..={}",
            self.len
        );
        self.bits >> (pos - 1) & 1 == 1
    }

    /// Copy with the value at 1-based position `pos` flipped.
    pub fn flipped(&self, pos: usize) -> Self {
        assert!(
            pos >= 1 && pos <= self.len(),
            "position {pos} out of range 1..={}",
            self.len
        );
        BitString { len: self.len, bits: self.bits ^ (1 << (pos - 1)) }
    }

    /// Support set S(x): the 1-based positions holding a one, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.len()).filter(move |&p| self.get(p))
    }

    /// Number of ones.
    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The influence string: position `j` is set iff position `j - 1` or
    /// `j + 1` of `self` is set. Neighbors outside `1..=n` count as zero.
    #[inline]
    pub fn influence(&self) -> Self {
        let n = self.len();
        BitString { len: self.len, bits: ((self.bits << 1) | (self.bits >> 1)) & mask(n) }
    }

    /// `weight(x) + weight(influence(x))`, in `0..=2n`.
    #[inline]
    pub fn gamma(&self) -> usize {
        self.weight() + self.influence().weight()
    }

    /// True iff some `i` in `1..n` has `x_i = y_{i+1} = 1` or
    /// `x_{i+1} = y_i = 1`.
    pub fn skewincident(&self, other: &Self) -> Result<bool> {
        self.same_len(other)?;
        Ok(self.skewincident_unchecked(other))
    }

    #[inline]
    pub(crate) fn skewincident_unchecked(&self, other: &Self) -> bool {
        self.bits & ((other.bits << 1) | (other.bits >> 1)) != 0
    }

    /// Coordinatewise `self <= other`.
    pub fn dominated_by(&self, other: &Self) -> Result<bool> {
        self.same_len(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    /// True iff one of the two strings dominates the other coordinatewise.
    pub fn comparable(&self, other: &Self) -> Result<bool> {
        self.same_len(other)?;
        let common = self.bits & other.bits;
        Ok(common == self.bits || common == other.bits)
    }

    /// No two consecutive ones.
    #[inline]
    pub fn is_fibonacci(&self) -> bool {
        self.bits & (self.bits >> 1) == 0
    }

    /// Reads the string back to front.
    pub fn reversed(&self) -> Self {
        BitString { len: self.len, bits: reverse_within(self.bits, self.len()) }
    }

    /// Drops the last position; `None` for a length-1 string.
    pub fn without_last(&self) -> Option<Self> {
        let n = self.len();
        (n > 1).then(|| BitString { len: self.len - 1, bits: self.bits & mask(n - 1) })
    }

    fn same_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }
}

#[inline]
fn reverse_within(word: u64, len: usize) -> u64 {
    word.reverse_bits() >> (64 - len)
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 || len > MAX_LEN {
        return Err(Error::invalid(format!(
            "string length {len} is outside 1..={MAX_LEN}"
        )));
    }
    Ok(())
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.lex_value().cmp(&other.lex_value()))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (1..=self.len())
            .map(|p| if self.get(p) { '1' } else { '0' })
            .collect();
        f.pad(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > MAX_LEN {
            return Err(Error::Parse(format!(
                "bit literal {s:?} must have 1..={MAX_LEN} characters"
            )));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("bad character {c:?} in bit literal {s:?}"))),
            }
        }
        Ok(BitString { len: s.len() as u8, bits })
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All strings of length `len` in lexicographic order.
pub fn all_strings(len: usize) -> Result<impl Iterator<Item = BitString>> {
    check_len(len)?;
    if len > 32 {
        return Err(Error::invalid(format!("refusing to enumerate 2^{len} strings")));
    }
    Ok((0..1u64 << len).map(move |v| BitString::raw(len, reverse_within(v, len))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    /// Position-by-position reading of the influence definition.
    fn influence_by_scan(x: &BitString) -> BitString {
        let n = x.len();
        let mut out = BitString::zeros(n).unwrap();
        for j in 1..=n {
            let left = j > 1 && x.get(j - 1);
            let right = j < n && x.get(j + 1);
            if left || right {
                out = out.flipped(j);
            }
        }
        out
    }

    fn skewincident_by_scan(x: &BitString, y: &BitString) -> bool {
        (1..x.len()).any(|i| (x.get(i) && y.get(i + 1)) || (x.get(i + 1) && y.get(i)))
    }

    #[test]
    fn weight_examples() {
        assert_eq!(b("000").weight(), 0);
        assert_eq!(b("111").weight(), 3);
        assert_eq!(b("0101").weight(), 2);
    }

    #[test]
    fn influence_examples() {
        assert_eq!(b("010").influence(), b("101"));
        assert_eq!(b("000").influence(), b("000"));
        assert_eq!(b("100").influence(), b("010"));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(b("000").gamma(), 0);
        assert_eq!(b("111").gamma(), 6);
        assert_eq!(b("110").gamma(), 5);
    }

    #[test]
    fn skewincident_examples() {
        assert!(b("10").skewincident(&b("01")).unwrap());
        assert!(!b("10").skewincident(&b("10")).unwrap());
        assert!(b("11").skewincident(&b("11")).unwrap());
        assert!(!b("1").skewincident(&b("1")).unwrap());
    }

    #[test]
    fn comparable_examples() {
        assert!(b("010").comparable(&b("110")).unwrap());
        assert!(!b("010").comparable(&b("100")).unwrap());
        let x = b("1011");
        assert!(x.comparable(&x).unwrap());
    }

    #[test]
    fn fibonacci_examples() {
        assert!(b("0101").is_fibonacci());
        assert!(!b("0110").is_fibonacci());
        assert!(b("0000").is_fibonacci());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert_eq!(
            b("10").skewincident(&b("100")),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        );
        assert!(b("10").comparable(&b("1")).is_err());
    }

    #[test]
    fn literal_round_trip_and_order() {
        for s in ["0", "1", "0110", "1000000000000000000000000000000000000000000000000000000000000001"] {
            assert_eq!(b(s).to_string(), s);
        }
        assert!(b("011") < b("100"));
        assert_eq!(b("011").lex_value(), 3);
        assert_eq!(BitString::from_lex_value(3, 6).unwrap(), b("110"));
        assert!("01a".parse::<BitString>().is_err());
        assert!("".parse::<BitString>().is_err());
        assert!(BitString::zeros(65).is_err());
        assert!(BitString::from_bits(2, 0b100).is_err());
    }

    #[test]
    fn full_width_strings() {
        let ones = BitString::ones(64).unwrap();
        assert_eq!(ones.weight(), 64);
        assert_eq!(ones.gamma(), 128);
        let x = BitString::from_lex_value(64, 1 << 63).unwrap();
        assert_eq!(x.to_string().chars().next(), Some('1'));
        assert_eq!(x.influence(), BitString::from_lex_value(64, 1 << 62).unwrap());
    }

    #[test]
    fn influence_matches_scan_exhaustively() {
        for n in 1..=12 {
            for x in all_strings(n).unwrap() {
                assert_eq!(x.influence(), influence_by_scan(&x), "x = {x}");
            }
        }
    }

    #[test]
    fn skewincidence_characterised_by_influence_exhaustively() {
        for n in 1..=8 {
            let all: Vec<_> = all_strings(n).unwrap().collect();
            for x in &all {
                let ix = x.influence();
                for y in &all {
                    let by_scan = skewincident_by_scan(x, y);
                    let iy = y.influence();
                    assert_eq!(x.skewincident(y).unwrap(), by_scan);
                    assert_eq!(x.bits() & iy.bits() != 0, by_scan);
                    assert_eq!(y.bits() & ix.bits() != 0, by_scan);
                }
            }
        }
    }

    #[test]
    fn self_skewincidence_means_adjacent_ones() {
        for x in all_strings(10).unwrap() {
            assert_eq!(x.skewincident(&x).unwrap(), !x.is_fibonacci());
        }
    }

    #[test]
    fn one_bit_flip_changes_gamma_by_at_most_three() {
        for n in 3..=12 {
            let mut max = 0;
            for x in all_strings(n).unwrap() {
                for p in 1..=n {
                    max = max.max(x.gamma().abs_diff(x.flipped(p).gamma()));
                }
            }
            assert_eq!(max, 3, "n = {n}");
        }
        assert_eq!(b("010").gamma() - b("000").gamma(), 3);
    }

    #[test]
    fn drop_last_position() {
        assert_eq!(b("1011").without_last(), Some(b("101")));
        assert_eq!(b("1").without_last(), None);
    }
}
