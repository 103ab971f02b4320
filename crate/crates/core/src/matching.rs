//! Hopcroft–Karp maximum bipartite matching and the König vertex cover.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left.iter().flatten().count()
    }
}

/// `adj[u]` lists the right vertices adjacent to left vertex `u`.
/// Adjacency lists are scanned in order, so the result is deterministic.
pub fn hopcroft_karp(adj: &[Vec<usize>], right_count: usize) -> Matching {
    let left_count = adj.len();
    let mut mate_l = vec![FREE; left_count];
    let mut mate_r = vec![FREE; right_count];
    let mut dist = vec![usize::MAX; left_count];
    let mut next_edge = vec![0usize; left_count];

    loop {
        // Layer the free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left_count {
            if mate_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }

        // Vertex-disjoint shortest augmenting paths, iterative DFS.
        next_edge.iter_mut().for_each(|e| *e = 0);
        for root in 0..left_count {
            if mate_l[root] != FREE {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if next_edge[u] == adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][next_edge[u]];
                next_edge[u] += 1;
                let w = mate_r[v];
                if w == FREE {
                    // Flip the path recorded on the stack.
                    let mut v = v;
                    while let Some(u) = stack.pop() {
                        let prev = mate_l[u];
                        mate_l[u] = v;
                        mate_r[v] = u;
                        v = prev;
                    }
                    break;
                } else if dist[w] == dist[u] + 1 {
                    stack.push(w);
                }
            }
        }
    }

    let wrap = |m: Vec<usize>| m.into_iter().map(|x| (x != FREE).then_some(x)).collect();
    Matching { left: wrap(mate_l), right: wrap(mate_r) }
}

/// Vertices reachable from free left vertices along alternating paths
/// (any edge left to right, matched edges right to left). The König cover
/// is the unreached left vertices plus the reached right vertices.
pub fn alternating_reach(adj: &[Vec<usize>], matching: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut left = vec![false; adj.len()];
    let mut right = vec![false; matching.right.len()];
    let mut queue: VecDeque<usize> = (0..adj.len()).filter(|&u| matching.left[u].is_none()).collect();
    queue.iter().for_each(|&u| left[u] = true);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if right[v] {
                continue;
            }
            right[v] = true;
            if let Some(w) = matching.right[v] {
                if !left[w] {
                    left[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (left, right)
}
