//! Exact maximum clique search.
//!
//! Branch-and-bound over bitset adjacency rows. Vertices are renumbered by
//! descending degree (ties by index); each node greedily colors its
//! candidate set and branches from the highest color down, pruning when the
//! color count cannot beat the incumbent. Only vertices whose color could
//! still matter are branched on; the rest stay in the candidate set.
//!
//! Before searching, elements related to everything are taken and
//! unrelated ones dropped, repeatedly.
//!
//! The reported witness is the lexicographically first maximum clique in
//! element-index order. It is found after the size is known, by fixing
//! members one at a time in ascending order and asking the same search
//! whether the remaining slots can still be filled.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{check_range, Error, Result};
use crate::graph::Graph;

pub const MAX_ELEMENTS: usize = 4096;

/// Largest instance accepted by [`max_clique_enumeration`].
pub const MAX_ENUMERATION_ELEMENTS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumeration,
    BranchAndBound,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Enumeration => "enumeration",
            Method::BranchAndBound => "branch-and-bound",
        })
    }
}

/// How the branch-and-bound explores its top level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    #[default]
    Sequential,
    /// Top-level branches run on the current rayon pool and share one
    /// incumbent size.
    Parallel,
}

/// A symmetric relation on `0..element_count`. The diagonal is ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueInstance {
    adj: Vec<BitSet>,
}

impl CliqueInstance {
    /// Evaluates `relation` on every ordered pair of distinct elements and
    /// rejects it if it is not symmetric.
    pub fn from_relation<F>(element_count: usize, relation: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        check_range("element count", element_count, 1, MAX_ELEMENTS)?;
        let adj: Vec<BitSet> = (0..element_count)
            .into_par_iter()
            .map(|i| {
                let mut row = BitSet::new(element_count);
                for j in 0..element_count {
                    if i != j && relation(i, j) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        for (i, row) in adj.iter().enumerate() {
            if let Some(j) = row.iter().find(|&j| !adj[j].contains(i)) {
                return Err(Error::invalid(format!(
                    "relation is not symmetric: ({i}, {j}) related but ({j}, {i}) not"
                )));
            }
        }
        Ok(CliqueInstance { adj })
    }

    /// Loops in `g` are ignored.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        Self::from_relation(g.vertex_count(), |i, j| g.adjacent(i, j))
    }

    pub fn element_count(&self) -> usize {
        self.adj.len()
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    /// Related pairs over all pairs; 0 for a single element.
    pub fn density(&self) -> f64 {
        let n = self.element_count();
        if n < 2 {
            return 0.0;
        }
        let edges: usize = self.adj.iter().map(BitSet::len).sum::<usize>() / 2;
        edges as f64 / (n * (n - 1) / 2) as f64
    }

    /// The complementary relation on distinct pairs.
    pub fn complement(&self) -> CliqueInstance {
        let n = self.element_count();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut c = BitSet::full(n);
                c.difference_with(row);
                c.remove(i);
                c
            })
            .collect();
        CliqueInstance { adj }
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(a, &i)| {
            members[a + 1..].iter().all(|&j| i != j && self.related(i, j))
        })
    }
}

/// A maximum clique, members ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clique {
    pub members: Vec<usize>,
    pub method: Method,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The instance renumbered by descending degree.
struct Ordered {
    adj: Vec<BitSet>,
    position: Vec<usize>,
}

impl Ordered {
    fn new(inst: &CliqueInstance) -> Self {
        let n = inst.element_count();
        let mut original: Vec<usize> = (0..n).collect();
        original.sort_by_key(|&v| (std::cmp::Reverse(inst.adj[v].len()), v));
        let mut position = vec![0; n];
        for (k, &v) in original.iter().enumerate() {
            position[v] = k;
        }
        let adj = original
            .iter()
            .map(|&v| {
                let mut row = BitSet::new(n);
                inst.adj[v].iter().for_each(|u| row.insert(position[u]));
                row
            })
            .collect();
        Ordered { adj, position }
    }

    fn to_ordered(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.adj.len());
        set.iter().for_each(|v| out.insert(self.position[v]));
        out
    }
}

struct Search<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    /// Sizes at or below this never count as improvements.
    floor: usize,
    /// Stop as soon as a clique of this size is recorded.
    target: usize,
    shared: Option<&'a AtomicUsize>,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [BitSet]) -> Self {
        Search { adj, best: Vec::new(), floor: 0, target: usize::MAX, shared: None, done: false }
    }

    fn bound(&self) -> usize {
        let shared = self.shared.map_or(0, |s| s.load(Ordering::Relaxed));
        self.best.len().max(self.floor).max(shared)
    }

    /// Greedy sequential coloring of `cand`. Returns the vertices whose
    /// color reaches `min_color`, ordered by color, with their colors.
    fn color_sort(&self, cand: &BitSet, min_color: usize) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.adj[v]);
                uncolored.remove(v);
                if color >= min_color {
                    order.push(v);
                    colors.push(color);
                }
            }
        }
        (order, colors)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: BitSet) {
        let min_color = (self.bound() + 1).saturating_sub(current.len());
        let (order, colors) = self.color_sort(&cand, min_color);
        for idx in (0..order.len()).rev() {
            if self.done || current.len() + colors[idx] <= self.bound() {
                return;
            }
            let v = order[idx];
            current.push(v);
            let next = cand.intersection(&self.adj[v]);
            if next.is_empty() {
                self.record(current);
            } else {
                self.expand(current, next);
            }
            current.pop();
            cand.remove(v);
        }
    }

    fn record(&mut self, current: &[usize]) {
        if current.len() > self.bound() {
            self.best = current.to_vec();
            if let Some(s) = self.shared {
                s.fetch_max(current.len(), Ordering::Relaxed);
            }
            if current.len() >= self.target {
                self.done = true;
            }
        }
    }
}

fn max_size_sequential(ordered: &Ordered) -> usize {
    let n = ordered.adj.len();
    let mut search = Search::new(&ordered.adj);
    search.expand(&mut Vec::new(), BitSet::full(n));
    search.best.len()
}

fn max_size_parallel(ordered: &Ordered) -> usize {
    let n = ordered.adj.len();
    let shared = AtomicUsize::new(0);
    let root = Search::new(&ordered.adj);
    let (order, colors) = root.color_sort(&BitSet::full(n), 1);
    // Candidate set of the k-th branch from the top: everything not yet
    // branched on, exactly as the sequential loop would see it.
    let mut cands = Vec::with_capacity(order.len());
    let mut cand = BitSet::full(n);
    for &v in order.iter().rev() {
        cands.push(cand.clone());
        cand.remove(v);
    }
    let best = Mutex::new(0usize);
    (0..order.len()).into_par_iter().for_each(|k| {
        let idx = order.len() - 1 - k;
        if colors[idx] <= shared.load(Ordering::Relaxed) {
            return;
        }
        let v = order[idx];
        let mut search = Search::new(&ordered.adj);
        search.shared = Some(&shared);
        let mut current = vec![v];
        let next = cands[k].intersection(&ordered.adj[v]);
        if next.is_empty() {
            search.record(&current);
        } else {
            search.expand(&mut current, next);
        }
        let mut b = best.lock().unwrap();
        *b = (*b).max(search.best.len());
    });
    let size = best.into_inner().unwrap();
    size.max(shared.load(Ordering::Relaxed))
}

/// Whether the ordered-space candidate set holds a clique of `k` elements.
fn has_clique(ordered: &Ordered, cand: BitSet, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if cand.len() < k {
        return false;
    }
    let mut search = Search::new(&ordered.adj);
    search.floor = k - 1;
    search.target = k;
    search.expand(&mut Vec::new(), cand);
    search.best.len() >= k
}

/// Splits off elements whose membership is decided without search: a
/// universal element lies in every maximum clique, and an isolated one in
/// none once some pair is related. Returns the forced elements and the
/// rest, both ascending. Adding the same elements to two cliques keeps
/// their lexicographic order, so the witness survives the reduction.
fn reduce(inst: &CliqueInstance) -> (Vec<usize>, Vec<usize>) {
    let n = inst.element_count();
    let mut alive = BitSet::full(n);
    let mut forced = Vec::new();
    loop {
        let count = alive.len();
        let degrees: Vec<(usize, usize)> =
            alive.iter().map(|v| (v, inst.adj[v].intersection_len(&alive))).collect();
        let has_edge = degrees.iter().any(|&(_, d)| d > 0);
        for &(v, d) in &degrees {
            if d + 1 == count && count > 1 {
                forced.push(v);
                alive.remove(v);
            } else if d == 0 && has_edge {
                alive.remove(v);
            }
        }
        if alive.len() == count {
            break;
        }
    }
    forced.sort_unstable();
    (forced, alive.iter().collect())
}

impl CliqueInstance {
    fn restrict(&self, keep: &[usize]) -> CliqueInstance {
        let mut index = vec![usize::MAX; self.element_count()];
        keep.iter().enumerate().for_each(|(k, &v)| index[v] = k);
        let adj = keep
            .iter()
            .map(|&v| {
                let mut row = BitSet::new(keep.len());
                self.adj[v].iter().filter(|&u| index[u] != usize::MAX).for_each(|u| row.insert(index[u]));
                row
            })
            .collect();
        CliqueInstance { adj }
    }
}

fn search_size(ordered: &Ordered, schedule: Schedule) -> usize {
    match schedule {
        Schedule::Sequential => max_size_sequential(ordered),
        Schedule::Parallel => max_size_parallel(ordered),
    }
}

/// Clique number only, skipping the witness search.
pub fn max_clique_size(inst: &CliqueInstance, schedule: Schedule) -> usize {
    let (forced, rest) = reduce(inst);
    if rest.is_empty() {
        return forced.len();
    }
    let ordered = Ordered::new(&inst.restrict(&rest));
    forced.len() + search_size(&ordered, schedule)
}

/// Lexicographically first clique of `size` elements, where `size` is the
/// clique number of `inst`.
fn lex_first(inst: &CliqueInstance, size: usize) -> Vec<usize> {
    let mut chosen = Vec::with_capacity(size);
    // Original index of each element of the current sub-instance.
    let mut labels: Vec<usize> = (0..inst.element_count()).collect();
    let mut current = inst.clone();
    let mut need = size;
    while need > 0 {
        // `need` is the clique number of `current`.
        let (forced, rest) = reduce(&current);
        chosen.extend(forced.iter().map(|&v| labels[v]));
        need -= forced.len();
        if need == 0 {
            break;
        }
        let sub = current.restrict(&rest);
        labels = rest.iter().map(|&v| labels[v]).collect();
        if need == 1 {
            chosen.push(labels[0]);
            break;
        }
        let ordered = Ordered::new(&sub);
        let (v, next) = (0..sub.element_count())
            .find_map(|v| {
                let mut next = sub.adj[v].clone();
                next.remove_through(v);
                (next.len() >= need - 1 && has_clique(&ordered, ordered.to_ordered(&next), need - 1))
                    .then_some((v, next))
            })
            .expect("a clique of the optimal size exists");
        chosen.push(labels[v]);
        need -= 1;
        let keep: Vec<usize> = next.iter().collect();
        if keep.is_empty() {
            break;
        }
        current = sub.restrict(&keep);
        labels = keep.iter().map(|&k| labels[k]).collect();
    }
    chosen.sort_unstable();
    chosen
}

/// Maximum clique with the lexicographically first optimum as witness.
pub fn max_clique(inst: &CliqueInstance) -> Clique {
    max_clique_scheduled(inst, Schedule::Sequential)
}

/// Like [`max_clique`]; with [`Schedule::Parallel`] the size search runs
/// on the current rayon pool. Size and witness do not depend on the
/// schedule.
pub fn max_clique_scheduled(inst: &CliqueInstance, schedule: Schedule) -> Clique {
    let size = max_clique_size(inst, schedule);
    let members = lex_first(inst, size);
    debug_assert!(inst.is_clique(&members));
    Clique { members, method: Method::BranchAndBound }
}

/// Exhaustive include/exclude search in index order, bounded only by the
/// number of remaining candidates. Small instances only.
pub fn max_clique_enumeration(inst: &CliqueInstance) -> Result<Clique> {
    let n = inst.element_count();
    check_range("element count", n, 1, MAX_ENUMERATION_ELEMENTS)?;
    fn go(inst: &CliqueInstance, cand: BitSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if current.len() + cand.len() <= best.len() {
            return;
        }
        let Some(v) = cand.first() else {
            *best = current.clone();
            return;
        };
        let mut rest = cand.clone();
        rest.remove(v);
        current.push(v);
        go(inst, rest.intersection(&inst.adj[v]), current, best);
        current.pop();
        go(inst, rest, current, best);
    }
    let mut best = Vec::new();
    go(inst, BitSet::full(n), &mut Vec::new(), &mut best);
    Ok(Clique { members: best, method: Method::Enumeration })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::graph::{complete, path, Graph};

    /// Every subset, largest first; first hit in lexicographic order of
    /// sorted member lists.
    fn brute_force(inst: &CliqueInstance) -> Vec<usize> {
        let n = inst.element_count();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..1 << n {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if !inst.is_clique(&members) {
                continue;
            }
            best = match best {
                Some(b) if b.len() > members.len() || (b.len() == members.len() && b < members) => Some(b),
                _ => Some(members),
            };
        }
        best.unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn small_graphs() {
        let tri = CliqueInstance::from_graph(&complete(3).unwrap()).unwrap();
        assert_eq!(max_clique(&tri).members, vec![0, 1, 2]);
        let edgeless = CliqueInstance::from_graph(&Graph::empty(5).unwrap()).unwrap();
        assert_eq!(max_clique(&edgeless).members, vec![0]);
        let c5 = CliqueInstance::from_graph(&cycle(5)).unwrap();
        assert_eq!(max_clique(&c5).members, vec![0, 1]);
        let p4 = CliqueInstance::from_graph(&path(4).unwrap()).unwrap();
        assert_eq!(max_clique(&p4).size(), 2);
    }

    #[test]
    fn star_with_isolated_elements() {
        let g = Graph::from_edges(6, &[(2, 0), (2, 1), (2, 4), (4, 5)]).unwrap();
        let inst = CliqueInstance::from_graph(&g).unwrap();
        assert_eq!(max_clique(&inst).members, vec![0, 2]);
        let k = CliqueInstance::from_graph(&complete(4).unwrap()).unwrap();
        assert_eq!(max_clique(&k).members, vec![0, 1, 2, 3]);
        assert_eq!(max_clique_size(&k, Schedule::Parallel), 4);
    }

    #[test]
    fn loops_are_ignored() {
        let g = Graph::from_edges(3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        let inst = CliqueInstance::from_graph(&g).unwrap();
        assert_eq!(max_clique(&inst).size(), 1);
    }

    #[test]
    fn asymmetric_relation_rejected() {
        assert!(CliqueInstance::from_relation(3, |i, j| i < j).is_err());
        assert!(CliqueInstance::from_relation(0, |_, _| true).is_err());
        assert!(CliqueInstance::from_relation(4097, |_, _| true).is_err());
    }

    #[test]
    fn complement_and_density() {
        let inst = CliqueInstance::from_graph(&cycle(5)).unwrap();
        assert_eq!(inst.density(), 0.5);
        let co = inst.complement();
        assert_eq!(co.density(), 0.5);
        assert_eq!(max_clique(&co).size(), 2);
        assert_eq!(co.complement(), inst);
    }

    fn instance_from_bits(n: usize, bits: &[bool]) -> CliqueInstance {
        let mut k = 0;
        let mut m = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                m[i][j] = bits[k % bits.len()];
                m[j][i] = m[i][j];
                k += 1;
            }
        }
        CliqueInstance::from_relation(n, |i, j| m[i][j]).unwrap()
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..=14, bits in proptest::collection::vec(any::<bool>(), 1..120)) {
            let inst = instance_from_bits(n, &bits);
            let expected = brute_force(&inst);
            prop_assert_eq!(&max_clique(&inst).members, &expected);
            prop_assert_eq!(&max_clique_enumeration(&inst).unwrap().members, &expected);
            prop_assert_eq!(&max_clique_scheduled(&inst, Schedule::Parallel).members, &expected);
        }

        #[test]
        fn planted_universal_and_isolated(
            n in 2usize..=13,
            bits in proptest::collection::vec(any::<bool>(), 1..80),
            roles in proptest::collection::vec(0u8..4, 13),
        ) {
            // Role 0 makes an element universal, role 1 isolated.
            let base = instance_from_bits(n, &bits);
            let rel = |i: usize, j: usize| match (roles[i], roles[j]) {
                (1, _) | (_, 1) => false,
                (0, _) | (_, 0) => true,
                _ => base.related(i, j),
            };
            let inst = CliqueInstance::from_relation(n, rel).unwrap();
            let expected = brute_force(&inst);
            prop_assert_eq!(&max_clique(&inst).members, &expected);
            prop_assert_eq!(max_clique_size(&inst, Schedule::Sequential), expected.len());
            prop_assert_eq!(max_clique_size(&inst, Schedule::Parallel), expected.len());
        }

        #[test]
        fn dense_random_instances(n in 20usize..=60, seed in any::<u64>()) {
            // Roughly 80% density from a cheap hash.
            let rel = |i: usize, j: usize| {
                let (a, b) = (i.min(j) as u64, i.max(j) as u64);
                let h = (a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xC2B2_AE3D_27D4_EB4F) ^ seed)
                    .wrapping_mul(0x1656_67B1_9E37_79F9);
                (h >> 32) % 10 < 8
            };
            let inst = CliqueInstance::from_relation(n, rel).unwrap();
            let seq = max_clique(&inst);
            prop_assert!(inst.is_clique(&seq.members));
            prop_assert_eq!(&max_clique_scheduled(&inst, Schedule::Parallel), &seq);
            if n <= 30 {
                prop_assert_eq!(&max_clique_enumeration(&inst).unwrap().members, &seq.members);
            }
        }
    }
}
