//! Simple graphs, the 4-valent quotient `Δ_ℓ`, its invariant 2-factor, the
//! split graph `Γ_ℓ`, and the checks that certify `Γ_ℓ` flexible.

mod aut;
mod certify;
mod delta;
mod graph6;

pub use aut::{small_aut, AutSummary, DEFAULT_MAX_N};
pub use certify::{certify_flexible, certify_graph, FlexCertificate, FlexibleBuild, ProfileClass};
pub use delta::{action_orbits, build_delta, two_factor, ActionOrbits, Delta};
pub use graph6::{from_graph6, to_graph6};

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted edge list and per-vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<[u32; 2]>,
    labels: Vec<String>,
    adj: Vec<Vec<u32>>,
}

impl LabeledGraph {
    /// Rejects loops and repeated edges; `labels` may be empty.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, labels: Vec<String>) -> Result<Self> {
        assert!(labels.is_empty() || labels.len() == n, "one label per vertex");
        let mut list: Vec<[u32; 2]> = Vec::new();
        for (u, v) in edges {
            assert!(u < n && v < n, "edge endpoint out of range");
            if u == v {
                return Err(Error::MultiEdge { vertex: u });
            }
            list.push([u.min(v) as u32, u.max(v) as u32]);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MultiEdge { vertex: w[0][0] as usize });
        }
        let mut adj = vec![Vec::new(); n];
        for &[u, v] in &list {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let labels = if labels.is_empty() { (0..n).map(|i| i.to_string()).collect() } else { labels };
        Ok(LabeledGraph { n, edges: list, labels, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let e = [u.min(v) as u32, u.max(v) as u32];
        self.edges.binary_search(&e).ok()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.distances_from(0).iter().all(|&d| d != u32::MAX)
    }

    fn distances_from(&self, s: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u] + 1;
                    queue.push_back(w as usize);
                }
            }
        }
        dist
    }

    /// `true` when `perm` maps edges onto edges.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        perm.len() == self.n
            && self.edges.iter().all(|&[u, v]| self.has_edge(perm[u as usize] as usize, perm[v as usize] as usize))
    }
}

/// Edge-disjoint cycles, each a cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDecomp {
    pub cycles: Vec<Vec<u32>>,
}

impl CycleDecomp {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }

    /// Checks that the cycles are genuine cycles of `g` partitioning its
    /// edges, with every vertex on exactly two of them.
    pub fn check_cover(&self, g: &LabeledGraph) -> Result<()> {
        let mut used = vec![false; g.edges().len()];
        let mut on = vec![0usize; g.n()];
        for (ci, c) in self.cycles.iter().enumerate() {
            if c.len() < 3 {
                return Err(Error::NotACycleCover(format!("cycle {ci} has length {}", c.len())));
            }
            let mut seen = std::collections::HashSet::new();
            for (k, &v) in c.iter().enumerate() {
                if !seen.insert(v) {
                    return Err(Error::NotACycleCover(format!("cycle {ci} repeats vertex {v}")));
                }
                on[v as usize] += 1;
                let w = c[(k + 1) % c.len()];
                let e = g
                    .edge_index(v as usize, w as usize)
                    .ok_or_else(|| Error::NotACycleCover(format!("cycle {ci} uses non-edge {v}-{w}")))?;
                if std::mem::replace(&mut used[e], true) {
                    return Err(Error::NotACycleCover(format!("edge {v}-{w} lies on two cycles")));
                }
            }
        }
        if let Some(e) = used.iter().position(|&u| !u) {
            let [u, v] = g.edges()[e];
            return Err(Error::NotACycleCover(format!("edge {u}-{v} is on no cycle")));
        }
        if let Some(v) = on.iter().position(|&k| k != 2) {
            return Err(Error::NotACycleCover(format!("vertex {v} lies on {} cycles", on[v])));
        }
        Ok(())
    }
}

/// Rotation/reflection-canonical form of a cyclic sequence.
pub(crate) fn canonical_cycle(c: &[u32]) -> Vec<u32> {
    let n = c.len();
    let mut best: Option<Vec<u32>> = None;
    for start in 0..n {
        for dir in [1isize, -1] {
            let seq: Vec<u32> =
                (0..n as isize).map(|k| c[(start as isize + dir * k).rem_euclid(n as isize) as usize]).collect();
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    best.unwrap_or_default()
}

/// Splits a 4-valent graph along a cycle decomposition: each vertex `α`
/// becomes `(α, c)` and `(α, d)` for its two cycles, joined by a matching
/// edge, and consecutive vertices of a cycle `c` are joined in copy `c`.
///
/// Vertex `2α` is the copy on the lower-numbered cycle at `α`. Returns the
/// split graph and the cycles re-expressed on its vertices.
pub fn split(delta: &LabeledGraph, c: &CycleDecomp) -> Result<(LabeledGraph, CycleDecomp)> {
    if let Some(v) = (0..delta.n()).find(|&v| delta.degree(v) != 4) {
        return Err(Error::NotFourValent(v));
    }
    c.check_cover(delta)?;
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); delta.n()];
    for (ci, cyc) in c.cycles.iter().enumerate() {
        for &v in cyc {
            at[v as usize].push(ci);
        }
    }
    let copy = |v: u32, ci: usize| 2 * v as usize + at[v as usize].iter().position(|&d| d == ci).expect("on cycle");
    let mut edges = Vec::new();
    for v in 0..delta.n() {
        edges.push((2 * v, 2 * v + 1));
    }
    let mut cycles = Vec::new();
    for (ci, cyc) in c.cycles.iter().enumerate() {
        for k in 0..cyc.len() {
            edges.push((copy(cyc[k], ci), copy(cyc[(k + 1) % cyc.len()], ci)));
        }
        cycles.push(cyc.iter().map(|&v| copy(v, ci) as u32).collect());
    }
    let labels =
        (0..2 * delta.n()).map(|x| format!("({},{})", delta.labels()[x / 2], at[x / 2][x % 2])).collect();
    Ok((LabeledGraph::new(2 * delta.n(), edges, labels)?, CycleDecomp { cycles }))
}

/// Length of a shortest cycle, by BFS from every vertex with early exit.
pub fn girth(g: &LabeledGraph) -> Result<usize> {
    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; g.n()];
    let mut parent = vec![u32::MAX; g.n()];
    for s in 0..g.n() {
        let mut touched = vec![s];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] as usize + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u as u32;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] as usize != w {
                    best = best.min((dist[u] + dist[w] + 1) as usize);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        for v in touched {
            dist[v] = u32::MAX;
            parent[v] = u32::MAX;
        }
    }
    if best == usize::MAX {
        Err(Error::Acyclic)
    } else {
        Ok(best)
    }
}

/// For each edge (in `g.edges()` order), the number of cycles of length
/// `girth` through it.
pub fn edge_girth_profile(g: &LabeledGraph, girth: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(g.edges().len());
    let mut on_path = vec![false; g.n()];
    for &[u, v] in g.edges() {
        let (u, v) = (u as usize, v as usize);
        // simple paths v → u of length girth − 1; the edge uv itself is length 1
        let mut count = 0u64;
        on_path[v] = true;
        count_paths(g, v, u, girth - 1, &mut on_path, &mut count);
        on_path[v] = false;
        out.push(count);
    }
    out
}

fn count_paths(g: &LabeledGraph, at: usize, target: usize, left: usize, on_path: &mut [bool], count: &mut u64) {
    if left == 0 {
        return;
    }
    for &w in g.neighbors(at) {
        let w = w as usize;
        if w == target {
            if left == 1 && at != target {
                *count += 1;
            }
            continue;
        }
        if !on_path[w] && left > 1 {
            on_path[w] = true;
            count_paths(g, w, target, left - 1, on_path, count);
            on_path[w] = false;
        }
    }
}

/// `{"n", "edges", "labels", "two_factor"}`.
#[derive(Debug, Clone, Serialize)]
pub struct GraphJson<'a> {
    pub n: usize,
    pub edges: &'a [[u32; 2]],
    pub labels: &'a [String],
    pub two_factor: &'a [Vec<u32>],
}

impl LabeledGraph {
    pub fn to_json<'a>(&'a self, two_factor: &'a CycleDecomp) -> GraphJson<'a> {
        GraphJson { n: self.n, edges: &self.edges, labels: &self.labels, two_factor: &two_factor.cycles }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::LabeledGraph;

    pub fn cycle(n: usize) -> LabeledGraph {
        LabeledGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)), vec![]).unwrap()
    }

    pub fn complete(n: usize) -> LabeledGraph {
        LabeledGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))), vec![]).unwrap()
    }

    pub fn petersen() -> LabeledGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        LabeledGraph::new(10, e, vec![]).unwrap()
    }

    pub fn cube() -> LabeledGraph {
        let e = (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v);
        LabeledGraph::new(8, e, vec![]).unwrap()
    }

    pub fn prism() -> LabeledGraph {
        LabeledGraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)], vec![]).unwrap()
    }

    /// Octahedron on `1,2,3,1',2',3'` = `0..6`, where `i` and `i'` are
    /// the non-adjacent pairs.
    pub fn octahedron() -> LabeledGraph {
        let e = (0..6usize).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| j != i + 3);
        LabeledGraph::new(6, e, vec![]).unwrap()
    }
}
