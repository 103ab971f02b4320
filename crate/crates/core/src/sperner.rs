//! Largest antichains (Sperner families) among the Fibonacci strings.
//!
//! The order is coordinatewise dominance. The maximum antichain size m_n
//! equals the minimum number of chains covering the poset, and a minimum
//! chain cover of a transitively closed order is a minimum path cover of
//! its comparability DAG: `f_n − ν`, where `ν` is a maximum matching in
//! the split graph with an edge `x → y` for every `x < y`. The antichain
//! itself is read off a König cover of that matching.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::bitstring::BitString;
use crate::clique::{max_clique, CliqueInstance};
use crate::constructions::enumerate_fibonacci;
use crate::counting::fibonacci_count;
use crate::error::{check_range, Result};
use crate::family::Family;
use crate::matching::{alternating_reach, hopcroft_karp};

pub const MAX_POSET_LEN: usize = 20;
pub const MAX_ORACLE_LEN: usize = 10;

/// The Fibonacci strings of one length under dominance.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    elements: Vec<BitString>,
    /// `above[i]`: indices of elements strictly dominating element `i`,
    /// ascending.
    above: Vec<Vec<usize>>,
}

impl Poset {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Lexicographic order; index 0 is the all-zero string.
    pub fn elements(&self) -> &[BitString] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `elements[i] ≤ elements[j]`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.elements[i].bits(), self.elements[j].bits());
        a & !b == 0
    }

    pub fn strictly_above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    pub fn relation_count(&self) -> usize {
        self.above.iter().map(Vec::len).sum()
    }
}

pub fn build_fibonacci_poset(n: usize) -> Result<Poset> {
    check_range("n", n, 1, MAX_POSET_LEN)?;
    let elements = enumerate_fibonacci(n)?.to_vec();
    let index: HashMap<u64, usize> =
        elements.iter().enumerate().map(|(i, x)| (x.bits(), i)).collect();
    let mut above = vec![Vec::new(); elements.len()];
    for (j, y) in elements.iter().enumerate() {
        // Proper submasks of y; each is Fibonacci because y is.
        let full = y.bits();
        let mut s = full;
        while s != 0 {
            s = (s - 1) & full;
            above[index[&s]].push(j);
        }
    }
    Ok(Poset { n, elements, above })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antichain {
    pub n: usize,
    pub size: usize,
    pub witness: Family,
    /// A minimum chain cover, each chain ascending; chains listed by their
    /// least element.
    pub chains: Vec<Vec<BitString>>,
}

/// Maximum antichain and minimum chain cover of `poset`.
pub fn max_antichain_of(poset: &Poset) -> Antichain {
    let count = poset.len();
    let matching = hopcroft_karp(&poset.above, count);
    let (reach_l, reach_r) = alternating_reach(&poset.above, &matching);

    let members = (0..count)
        .filter(|&i| reach_l[i] && !reach_r[i])
        .map(|i| poset.elements[i]);
    let witness = Family::from_members(poset.n, members).expect("distinct poset elements");

    let chains: Vec<Vec<BitString>> = (0..count)
        .filter(|&i| matching.right[i].is_none())
        .map(|head| {
            let mut chain = vec![poset.elements[head]];
            let mut cur = head;
            while let Some(next) = matching.left[cur] {
                chain.push(poset.elements[next]);
                cur = next;
            }
            chain
        })
        .collect();

    let size = count - matching.size();
    debug_assert_eq!(witness.len(), size);
    debug_assert_eq!(chains.len(), size);
    Antichain { n: poset.n, size, witness, chains }
}

/// m_n with a witness antichain and a chain cover of the same size.
pub fn max_antichain(n: usize) -> Result<Antichain> {
    Ok(max_antichain_of(&build_fibonacci_poset(n)?))
}

/// m_n as a maximum clique of the incomparability relation.
pub fn max_antichain_oracle(n: usize) -> Result<usize> {
    check_range("n", n, 1, MAX_ORACLE_LEN)?;
    let elements = enumerate_fibonacci(n)?.to_vec();
    let inst = CliqueInstance::from_relation(elements.len(), |i, j| {
        let (a, b) = (elements[i].bits(), elements[j].bits());
        a & !b != 0 && b & !a != 0
    })?;
    Ok(max_clique(&inst).size())
}

/// The projection step of the upper bound at one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionReport {
    pub n: usize,
    pub m_n: usize,
    /// f_{n−1}.
    pub f_prev: BigUint,
    pub f_n: BigUint,
    /// The antichain stays pairwise distinct once its last position is
    /// dropped.
    pub projections_distinct: bool,
    /// Every shortened string lies in F_{n−1}.
    pub projections_fibonacci: bool,
}

impl ProjectionReport {
    /// m_n ≤ f_{n−1}.
    pub fn antichain_bound(&self) -> bool {
        BigUint::from(self.m_n) <= self.f_prev
    }

    /// f_{n−1} ≤ (2/3)·f_n.
    pub fn ratio_bound(&self) -> bool {
        &self.f_prev * 3u8 <= &self.f_n * 2u8
    }

    pub fn holds(&self) -> bool {
        self.antichain_bound()
            && self.ratio_bound()
            && self.projections_distinct
            && self.projections_fibonacci
    }
}

pub fn projection_bound_check(n: usize) -> Result<ProjectionReport> {
    check_range("n", n, 2, MAX_POSET_LEN)?;
    let antichain = max_antichain(n)?;
    let shortened: Vec<BitString> = antichain
        .witness
        .iter()
        .map(|x| x.without_last().expect("n >= 2"))
        .collect();
    let mut sorted = shortened.clone();
    sorted.sort();
    sorted.dedup();
    Ok(ProjectionReport {
        n,
        m_n: antichain.size,
        f_prev: fibonacci_count(n - 1),
        f_n: fibonacci_count(n),
        projections_distinct: sorted.len() == shortened.len(),
        projections_fibonacci: shortened.iter().all(BitString::is_fibonacci),
    })
}
