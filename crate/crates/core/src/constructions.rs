//! Materialized families: the lower-bound set C_n, the Fibonacci strings
//! F_n, and greedy maximal extensions.

use crate::bitstring::{all_strings, BitString};
use crate::error::{check_range, Error, Result};
use crate::family::Family;

/// Largest length for which families are materialized (2^24 strings).
pub const MAX_ENUM_LEN: usize = 24;

/// Outcome of a pairwise check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// The lexicographically first pair of distinct members that fails.
    Counterexample(BitString, BitString),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

/// C_n = { x : γ(x) > n }.
pub fn enumerate_c(n: usize) -> Result<Family> {
    check_range("n", n, 1, MAX_ENUM_LEN)?;
    Family::from_members(n, all_strings(n)?.filter(|x| x.gamma() > n))
}

/// F_n: strings with no two consecutive ones.
pub fn enumerate_fibonacci(n: usize) -> Result<Family> {
    check_range("n", n, 1, MAX_ENUM_LEN)?;
    Family::from_members(n, all_strings(n)?.filter(BitString::is_fibonacci))
}

/// Checks that every two distinct members are skewincident. Self-pairs are
/// not examined.
pub fn verify_pairwise_skewincident(family: &Family) -> Verdict {
    let members = family.to_vec();
    for (i, x) in members.iter().enumerate() {
        let ix = x.influence().bits();
        if let Some(y) = members[i + 1..].iter().find(|y| y.bits() & ix == 0) {
            return Verdict::Counterexample(*x, *y);
        }
    }
    Verdict::Ok
}

/// The counting step of the lower-bound argument on one pair: when
/// γ(x) + γ(y) > 2n the pair must be skewincident. Returns whether that
/// implication holds (vacuously true when the premise fails).
pub fn verify_disjointness_argument(x: &BitString, y: &BitString) -> Result<bool> {
    let skew = x.skewincident(y)?;
    let premise = x.gamma() + y.gamma() > 2 * x.len();
    Ok(!premise || skew)
}

/// Adds, in lexicographic order, every string skewincident with all
/// current members until no further string qualifies.
///
/// Admissibility only shrinks as members are added, so one ascending pass
/// adds the same strings as repeatedly picking the smallest candidate.
pub fn greedy_maximal_extension(family: &Family) -> Result<Family> {
    if let Verdict::Counterexample(x, y) = verify_pairwise_skewincident(family) {
        return Err(Error::NotSkewincident(x, y));
    }
    let n = family.string_len();
    check_range("string length", n, 1, MAX_ENUM_LEN)?;
    let mut out = family.clone();
    let mut influences: Vec<u64> = family.iter().map(|x| x.influence().bits()).collect();
    for s in all_strings(n)? {
        if out.contains(&s) {
            continue;
        }
        if influences.iter().all(|&inf| s.bits() & inf != 0) {
            out.insert(s)?;
            influences.push(s.influence().bits());
        }
    }
    Ok(out)
}

/// True when no string outside the family can be added.
pub fn is_maximal(family: &Family) -> Result<bool> {
    let n = family.string_len();
    check_range("string length", n, 1, MAX_ENUM_LEN)?;
    let influences: Vec<u64> = family.iter().map(|x| x.influence().bits()).collect();
    Ok(all_strings(n)?
        .filter(|s| !family.contains(s))
        .all(|s| influences.iter().any(|&inf| s.bits() & inf == 0)))
}

/// True when no member dominates another.
pub fn is_antichain(family: &Family) -> bool {
    let members = family.to_vec();
    members.iter().enumerate().all(|(i, x)| {
        members[i + 1..]
            .iter()
            .all(|y| !x.comparable(y).expect("family members share a length"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(items: &[&str]) -> Family {
        let len = items[0].len();
        Family::from_members(len, items.iter().map(|s| s.parse().unwrap())).unwrap()
    }

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn c_examples() {
        assert_eq!(enumerate_c(2).unwrap(), fam(&["11"]));
        assert_eq!(enumerate_c(3).unwrap(), fam(&["111", "110", "011"]));
        assert!(enumerate_c(1).unwrap().is_empty());
        assert!(enumerate_c(0).is_err());
        assert!(enumerate_c(25).is_err());
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(enumerate_fibonacci(1).unwrap(), fam(&["0", "1"]));
        assert_eq!(enumerate_fibonacci(2).unwrap(), fam(&["00", "01", "10"]));
        assert_eq!(
            enumerate_fibonacci(3).unwrap(),
            fam(&["000", "001", "010", "100", "101"])
        );
    }

    #[test]
    fn pairwise_verdicts() {
        assert!(verify_pairwise_skewincident(&fam(&["10", "01", "11"])).is_ok());
        assert_eq!(
            verify_pairwise_skewincident(&fam(&["10", "00"])),
            Verdict::Counterexample(b("00"), b("10"))
        );
        assert!(verify_pairwise_skewincident(&Family::new(4).unwrap()).is_ok());
        assert!(verify_pairwise_skewincident(&fam(&["0000"])).is_ok());
        for n in 1..=10 {
            assert!(verify_pairwise_skewincident(&enumerate_c(n).unwrap()).is_ok());
        }
    }

    #[test]
    fn first_counterexample_is_lexicographic() {
        let f = fam(&["1000", "0100", "0010", "0001"]);
        // (0001, 0010) is skewincident; (0001, 0100) is the first failure.
        assert_eq!(
            verify_pairwise_skewincident(&f),
            Verdict::Counterexample(b("0001"), b("0100"))
        );
    }

    #[test]
    fn disjointness_examples() {
        assert!(verify_disjointness_argument(&b("111"), &b("111")).unwrap());
        assert!(verify_disjointness_argument(&b("110"), &b("011")).unwrap());
        assert!(verify_disjointness_argument(&b("101"), &b("010")).unwrap());
        assert!(verify_disjointness_argument(&b("10"), &b("101")).is_err());
    }

    #[test]
    fn disjointness_holds_on_all_pairs() {
        for n in 1..=9 {
            let all: Vec<_> = all_strings(n).unwrap().collect();
            for x in &all {
                for y in &all {
                    assert!(verify_disjointness_argument(x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn greedy_examples() {
        let ext = greedy_maximal_extension(&enumerate_c(2).unwrap()).unwrap();
        assert_eq!(ext, fam(&["01", "10", "11"]));
        assert_eq!(greedy_maximal_extension(&ext).unwrap(), ext);
        assert!(is_maximal(&ext).unwrap());
        let err = greedy_maximal_extension(&fam(&["10", "00"])).unwrap_err();
        assert_eq!(err, Error::NotSkewincident(b("00"), b("10")));
    }

    #[test]
    fn greedy_extension_strictly_grows_c() {
        let grew = (1..=6).any(|n| {
            let c = enumerate_c(n).unwrap();
            greedy_maximal_extension(&c).unwrap().len() > c.len()
        });
        assert!(grew);
        for n in 1..=8 {
            let c = enumerate_c(n).unwrap();
            let ext = greedy_maximal_extension(&c).unwrap();
            assert!(c.is_subset(&ext));
            assert!(verify_pairwise_skewincident(&ext).is_ok());
            assert!(is_maximal(&ext).unwrap());
        }
    }

    #[test]
    fn skewincident_families_meet_fibonacci_in_antichains() {
        for n in 1..=12 {
            let f = enumerate_fibonacci(n).unwrap();
            let c = enumerate_c(n).unwrap();
            assert!(is_antichain(&c.intersection(&f)));
            let ext = greedy_maximal_extension(&c).unwrap();
            assert!(is_antichain(&ext.intersection(&f)));
        }
    }
}
