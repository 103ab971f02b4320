//! Exact extremal values: M(n) for skewincident strings, M(G) for
//! pairwise-neighbor vertex subsets, and the largest pairwise-attractive
//! family of mappings. Each is a maximum clique over the relation on
//! distinct elements; whether an element is related to itself never
//! matters.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::bitstring::BitString;
use crate::clique::{max_clique_enumeration, max_clique_scheduled, CliqueInstance, Method, Schedule};
use crate::counting::{count_c, fibonacci_count};
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::sperner::max_antichain;

/// Default cap on `n` for [`exact_m`].
pub const MAX_M_LEN: usize = 8;
/// Hard cap with `allow_large` (2^12 elements).
pub const MAX_M_LEN_OVERRIDE: usize = 12;
pub const MAX_MG_VERTICES: usize = 12;
pub const MAX_MAPPINGS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub method: Method,
    pub schedule: Schedule,
    /// Lifts the default size caps to the hard ones.
    pub allow_large: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { method: Method::BranchAndBound, schedule: Schedule::Sequential, allow_large: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub size: usize,
    /// Members in element order, as text.
    pub witness: Vec<String>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    /// Element indices behind `witness`.
    #[serde(skip)]
    pub members: Vec<usize>,
}

impl ExtremalResult {
    /// `{elapsed_ms, method, size, witness}` with sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data");
        serde_json::to_string_pretty(&value).expect("plain data")
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

fn solve(
    inst: &CliqueInstance,
    label: impl Fn(usize) -> String,
    opts: &SolveOptions,
    started: Instant,
) -> Result<ExtremalResult> {
    let clique = match opts.method {
        Method::BranchAndBound => max_clique_scheduled(inst, opts.schedule),
        Method::Enumeration => max_clique_enumeration(inst)?,
    };
    Ok(ExtremalResult {
        size: clique.size(),
        witness: clique.members.iter().map(|&i| label(i)).collect(),
        method: clique.method,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
        members: clique.members,
    })
}

/// M(n): the largest family of length-`n` strings whose distinct members
/// are pairwise skewincident.
pub fn exact_m(n: usize, opts: &SolveOptions) -> Result<ExtremalResult> {
    let cap = if opts.allow_large { MAX_M_LEN_OVERRIDE } else { MAX_M_LEN };
    if n == 0 || n > cap {
        return Err(Error::invalid(format!(
            "n = {n} is outside 1..={cap}{}",
            if opts.allow_large { "" } else { " (pass the large-instance override to go further)" }
        )));
    }
    let started = Instant::now();
    let strings: Vec<BitString> = (0..1u64 << n)
        .map(|v| BitString::from_lex_value(n, v))
        .collect::<Result<_>>()?;
    let inst = CliqueInstance::from_relation(strings.len(), |i, j| {
        strings[i].skewincident_unchecked(&strings[j])
    })?;
    solve(&inst, |i| strings[i].to_string(), opts, started)
}

/// Subset of `0..vertex_count` encoded by element index `k`: the
/// characteristic string read big-endian, vertex `v` at position `v + 1`.
fn subset_of_index(vertex_count: usize, k: usize) -> BitString {
    BitString::from_lex_value(vertex_count, k as u64).expect("index below 2^vertex_count")
}

/// M(G): the largest family of distinct vertex subsets, every two of which
/// contain a pair of adjacent vertices. Witness members are characteristic
/// strings (position `v + 1` for vertex `v`).
pub fn exact_mg(g: &Graph, opts: &SolveOptions) -> Result<ExtremalResult> {
    let v = g.vertex_count();
    if v > MAX_MG_VERTICES {
        return Err(Error::invalid(format!(
            "graph has {v} vertices; at most {MAX_MG_VERTICES} are supported"
        )));
    }
    let started = Instant::now();
    let neighbor_mask: Vec<u64> = (0..v)
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, w| m | 1 << w))
        .collect();
    let subsets: Vec<BitString> = (0..1usize << v).map(|k| subset_of_index(v, k)).collect();
    let reach: Vec<u64> = subsets
        .iter()
        .map(|s| s.support().fold(0u64, |m, p| m | neighbor_mask[p - 1]))
        .collect();
    let inst = CliqueInstance::from_relation(subsets.len(), |i, j| {
        reach[i] & subsets[j].bits() != 0
    })?;
    solve(&inst, |i| subsets[i].to_string(), opts, started)
}

/// Closed form for complete multipartite graphs:
/// `2^{Σ n_i} − Σ 2^{n_i} + 2r − 1`.
pub fn multipartite_m(p: &Partition) -> BigUint {
    let total: BigInt = BigInt::one() << p.total();
    let parts: BigInt = p.parts().iter().map(|&k| BigInt::one() << k).sum();
    let r = BigInt::from(p.parts().len());
    let value: BigInt = total - parts + r * 2u8 - 1u8;
    value.to_biguint().expect("formula is positive")
}

/// `(2^m − 1)(2^n − 1) + 2`.
pub fn bipartite_m(m: usize, n: usize) -> BigUint {
    let one = BigUint::one();
    ((&one << m) - 1u8) * ((&one << n) - 1u8) + 2u8
}

/// For each part, how many witness subsets lie entirely inside it.
pub fn witness_subsets_per_part(result: &ExtremalResult, p: &Partition) -> Result<Vec<usize>> {
    let total = p.total();
    let subsets = result
        .witness
        .iter()
        .map(|w| w.parse::<BitString>())
        .collect::<Result<Vec<_>>>()?;
    Ok(p.ranges()
        .into_iter()
        .map(|r| {
            let part_mask = r.fold(0u64, |m, v| m | 1 << v);
            subsets
                .iter()
                .filter(|s| s.len() == total && s.bits() & !part_mask == 0)
                .count()
        })
        .collect())
}

/// Largest family of mappings `[n] → V(g_graph)` in which every two are an
/// attractive couple: some positions `i, j` adjacent in `f_graph` (a loop
/// gives `i = j`) have `a(i)` adjacent to `b(j)` in `g_graph`. Positions
/// `1..=n` are vertices `0..n` of `f_graph`.
pub fn exact_attractive(
    f_graph: &Graph,
    g_graph: &Graph,
    n: usize,
    opts: &SolveOptions,
) -> Result<ExtremalResult> {
    if n == 0 || f_graph.vertex_count() < n {
        return Err(Error::invalid(format!(
            "n = {n} needs 1..={} positions in the position graph",
            f_graph.vertex_count()
        )));
    }
    let q = g_graph.vertex_count();
    let count = (0..n)
        .try_fold(1usize, |acc, _| acc.checked_mul(q).filter(|&c| c <= MAX_MAPPINGS))
        .ok_or_else(|| {
            Error::invalid(format!("{q}^{n} mappings exceed the cap of {MAX_MAPPINGS}"))
        })?;
    let started = Instant::now();
    let positions = f_graph.induced_prefix(n)?;
    // Mapping k lists its values most significant position first.
    let mappings: Vec<Vec<usize>> = (0..count)
        .map(|mut k| {
            let mut vals = vec![0; n];
            for slot in vals.iter_mut().rev() {
                *slot = k % q;
                k /= q;
            }
            vals
        })
        .collect();
    // For mapping a and position j: values b(j) that make (a, b) attractive.
    let attracts: Vec<Vec<BitSet>> = mappings
        .iter()
        .map(|a| {
            (0..n)
                .map(|j| {
                    let mut allowed = BitSet::new(q);
                    for i in positions.neighbors(j).iter() {
                        for w in g_graph.neighbors(a[i]).iter() {
                            allowed.insert(w);
                        }
                    }
                    allowed
                })
                .collect()
        })
        .collect();
    let inst = CliqueInstance::from_relation(count, |x, y| {
        (0..n).any(|j| attracts[x][j].contains(mappings[y][j]))
    })?;
    let label = |k: usize| {
        let vals = &mappings[k];
        if q <= 10 {
            vals.iter().map(|v| v.to_string()).collect::<String>()
        } else {
            vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        }
    };
    solve(&inst, label, opts, started)
}

/// |C_n| ≤ M(n) ≤ 2^n − (f_n − m_n) at one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport {
    pub n: usize,
    pub count_c: BigUint,
    pub exact_m: usize,
    pub f_n: BigUint,
    pub m_n: usize,
    /// 2^n − (f_n − m_n).
    pub upper: BigUint,
}

impl SandwichReport {
    pub fn lower_holds(&self) -> bool {
        self.count_c <= BigUint::from(self.exact_m)
    }

    pub fn upper_holds(&self) -> bool {
        BigUint::from(self.exact_m) <= self.upper
    }

    pub fn holds(&self) -> bool {
        self.lower_holds() && self.upper_holds()
    }
}

pub fn sandwich_check(n: usize, opts: &SolveOptions) -> Result<SandwichReport> {
    let exact = exact_m(n, opts)?;
    let f_n = fibonacci_count(n);
    let m_n = max_antichain(n)?.size;
    let upper = (BigUint::one() << n) + BigUint::from(m_n) - &f_n;
    Ok(SandwichReport { n, count_c: count_c(n)?, exact_m: exact.size, f_n, m_n, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::verify_pairwise_skewincident;
    use crate::family::Family;
    use crate::graph::{all_loops, complete, complete_multipartite, path, skew_alphabet};

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    /// Largest pairwise-skewincident family by trying every subset of
    /// strings.
    fn brute_force_m(n: usize) -> usize {
        let strings: Vec<BitString> = crate::bitstring::all_strings(n).unwrap().collect();
        let k = strings.len();
        (0u32..1 << k)
            .filter(|mask| {
                let chosen: Vec<_> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                chosen.iter().enumerate().all(|(a, &i)| {
                    chosen[a + 1..].iter().all(|&j| strings[i].skewincident(&strings[j]).unwrap())
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn m_small_values() {
        assert_eq!(exact_m(1, &opts()).unwrap().size, 1);
        let m2 = exact_m(2, &opts()).unwrap();
        assert_eq!(m2.size, 3);
        assert_eq!(m2.witness, vec!["01", "10", "11"]);
        let m3 = exact_m(3, &opts()).unwrap();
        assert_eq!(m3.size, 5);
        for n in 1..=3 {
            assert_eq!(exact_m(n, &opts()).unwrap().size, brute_force_m(n));
        }
    }

    #[test]
    fn m_witness_is_skewincident() {
        for n in 1..=6 {
            let r = exact_m(n, &opts()).unwrap();
            let fam = Family::from_members(n, r.witness.iter().map(|w| w.parse().unwrap())).unwrap();
            assert_eq!(fam.len(), r.size);
            assert!(verify_pairwise_skewincident(&fam).is_ok());
        }
    }

    #[test]
    fn m_caps() {
        assert!(exact_m(0, &opts()).is_err());
        assert!(exact_m(9, &opts()).is_err());
        let large = SolveOptions { allow_large: true, ..opts() };
        assert!(exact_m(13, &large).is_err());
    }

    #[test]
    fn mg_examples() {
        let k11 = complete(2).unwrap();
        assert_eq!(exact_mg(&k11, &opts()).unwrap().size, 3);
        assert_eq!(exact_mg(&complete(3).unwrap(), &opts()).unwrap().size, 7);
        for n in 1..=4 {
            let a = exact_mg(&path(n).unwrap(), &opts()).unwrap();
            let b = exact_m(n, &opts()).unwrap();
            assert_eq!((a.size, &a.witness), (b.size, &b.witness));
        }
        assert!(exact_mg(&Graph::empty(13).unwrap(), &opts()).is_err());
    }

    #[test]
    fn multipartite_formulas() {
        let p = |v: Vec<usize>| Partition::new(v).unwrap();
        assert_eq!(multipartite_m(&p(vec![2, 2])), BigUint::from(11u8));
        assert_eq!(multipartite_m(&p(vec![1, 1, 1])), BigUint::from(7u8));
        for m in 1..=8 {
            for n in 1..=8 {
                assert_eq!(multipartite_m(&p(vec![m, n])), bipartite_m(m, n));
            }
        }
        assert_eq!(multipartite_m(&p(vec![5])), BigUint::one());
    }

    #[test]
    fn multipartite_witness_has_one_subset_per_part() {
        let part = Partition::new(vec![2, 2]).unwrap();
        let r = exact_mg(&complete_multipartite(&part).unwrap(), &opts()).unwrap();
        assert_eq!(r.size, 11);
        assert!(witness_subsets_per_part(&r, &part).unwrap().iter().all(|&c| c <= 1));
    }

    #[test]
    fn attractive_examples() {
        for n in 1..=3 {
            let a = exact_attractive(&path(n).unwrap(), &skew_alphabet(), n, &opts()).unwrap();
            assert_eq!(a.size, exact_m(n, &opts()).unwrap().size);
            let b = exact_attractive(&all_loops(n).unwrap(), &complete(2).unwrap(), n, &opts()).unwrap();
            assert_eq!(b.size, 1 << n);
        }
        let edgeless = Graph::empty(3).unwrap();
        let r = exact_attractive(&edgeless, &complete(3).unwrap(), 3, &opts()).unwrap();
        assert_eq!(r.size, 1);
        assert!(exact_attractive(&path(2).unwrap(), &skew_alphabet(), 3, &opts()).is_err());
        assert!(exact_attractive(&path(13).unwrap(), &skew_alphabet(), 13, &opts()).is_err());
        let wide = Graph::empty(11).unwrap();
        let r = exact_attractive(&all_loops(2).unwrap(), &wide, 2, &opts()).unwrap();
        assert_eq!(r.witness[0], "0,0");
    }

    #[test]
    fn enumeration_method_agrees() {
        let en = SolveOptions { method: Method::Enumeration, ..opts() };
        for n in 1..=5 {
            let a = exact_m(n, &en).unwrap();
            assert_eq!(a.method, Method::Enumeration);
            assert_eq!(a.members, exact_m(n, &opts()).unwrap().members);
        }
        assert!(exact_m(6, &en).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let r3 = sandwich_check(3, &opts()).unwrap();
        assert_eq!((r3.count_c.clone(), r3.exact_m, r3.upper.clone()), (BigUint::from(3u8), 5, BigUint::from(6u8)));
        let r2 = sandwich_check(2, &opts()).unwrap();
        assert_eq!((r2.count_c.clone(), r2.exact_m, r2.upper.clone()), (BigUint::from(1u8), 3, BigUint::from(3u8)));
        let r1 = sandwich_check(1, &opts()).unwrap();
        assert_eq!((r1.count_c.clone(), r1.exact_m, r1.upper.clone()), (BigUint::from(0u8), 1, BigUint::from(1u8)));
        assert!(r1.holds() && r2.holds() && r3.holds());
    }

    #[test]
    fn json_shape() {
        let r = exact_m(2, &opts()).unwrap().without_timing();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["size"], 3);
        assert_eq!(v["method"], "branch-and-bound");
        assert_eq!(v["witness"][2], "11");
        assert!(v.get("elapsed_ms").is_none());
    }
}
