//! Finite undirected graphs with loops, and the generators used for
//! neighbor families and attractive couples.
//!
//! Vertices are `0..vertex_count`. A loop at `v` makes `v` adjacent to
//! itself.
//!
//! Text format: the first non-comment line is the vertex count, then one
//! `u v` pair per line for each edge (`u == v` is a loop). Blank lines and
//! lines starting with `#` are ignored. Each line is an undirected edge, so
//! listing a pair in both orientations is the same as listing it once.

use std::fmt::Write as _;

use crate::bitset::BitSet;
use crate::error::{check_range, Error, Result};

pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph.
    pub fn empty(vertex_count: usize) -> Result<Self> {
        check_range("vertex count", vertex_count, 1, MAX_VERTICES)?;
        Ok(Graph { rows: vec![BitSet::new(vertex_count); vertex_count] })
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(vertex_count)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows.get(u).is_some_and(|r| r.contains(v))
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    /// Undirected edges `(u, v)` with `u <= v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v >= u).map(move |v| (u, v)))
            .collect()
    }

    /// Loops count once.
    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.adjacent(v, v))
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loops()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|u| self.rows[u].iter().all(|v| self.adjacent(v, u)))
    }

    /// No two vertices of `set` adjacent (loops included).
    pub fn is_stable(&self, set: &BitSet) -> bool {
        set.iter().all(|v| !self.rows[v].intersects(set))
    }

    /// Subgraph induced on vertices `0..count`.
    pub fn induced_prefix(&self, count: usize) -> Result<Graph> {
        check_range("prefix size", count, 1, self.vertex_count())?;
        let mut g = Graph::empty(count)?;
        for (u, v) in self.edges() {
            if v < count {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("graph text is missing the vertex count".into()))?;
        let count: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count {header:?}")))?;
        let mut g = Graph::empty(count)?;
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = fields.as_slice() else {
                return Err(Error::Parse(format!("line {lineno}: expected \"u v\", got {line:?}")));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {lineno}: bad vertex {s:?}")))
            };
            let (u, v) = (parse(u)?, parse(v)?);
            if u >= count || v >= count {
                return Err(Error::Parse(format!(
                    "line {lineno}: edge ({u}, {v}) out of range for {count} vertices"
                )));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// Sizes `n_1, ..., n_r` of the parts of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::invalid(format!(
                "partition {parts:?} needs at least one part and positive parts"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Every partition of `total` into non-increasing parts.
    pub fn all_of(total: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if total > 0 {
            go(total, total, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Vertex ranges of the parts, in order.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.parts
            .iter()
            .map(|&p| {
                let r = start..start + p;
                start += p;
                r
            })
            .collect()
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Comma-separated part sizes, e.g. `2,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part {p:?} in partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for i in 1..n {
        g.add_edge(i - 1, i)?;
    }
    Ok(g)
}

/// Parts occupy consecutive vertex ranges; vertices are adjacent iff they
/// lie in different parts.
pub fn complete_multipartite(p: &Partition) -> Result<Graph> {
    let mut g = Graph::empty(p.total())?;
    let ranges = p.ranges();
    for (i, a) in ranges.iter().enumerate() {
        for b in &ranges[i + 1..] {
            for u in a.clone() {
                for v in b.clone() {
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph> {
    complete_multipartite(&Partition::new(vec![1; n])?)
}

/// A loop at every vertex and nothing else.
pub fn all_loops(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for v in 0..n {
        g.add_edge(v, v)?;
    }
    Ok(g)
}

/// Vertices `{0, 1}` with a loop at 1 as the only edge.
pub fn skew_alphabet() -> Graph {
    Graph::from_edges(2, &[(1, 1)]).expect("fixed small graph")
}
