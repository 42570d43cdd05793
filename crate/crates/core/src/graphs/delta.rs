use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::{canonical_cycle, CycleDecomp, LabeledGraph};
use crate::amalgam::Sym;
use crate::error::{Error, Result};
use crate::nilq::QuotientMachine;

/// `Δ_ℓ`: vertices are the cosets `D4·u` of machine elements.
#[derive(Debug, Clone)]
pub struct Delta {
    pub graph: LabeledGraph,
    /// Machine element → vertex.
    pub vertex_of: Vec<u32>,
    /// Least machine element of each vertex.
    pub reps: Vec<u32>,
    /// The 8 machine images of `D4`.
    pub d4: Vec<u32>,
}

fn d4_images(m: &QuotientMachine) -> Vec<u32> {
    let gens = [m.of_sym(Sym::A), m.of_sym(Sym::B)];
    let mut out = vec![m.identity()];
    let mut i = 0;
    while i < out.len() {
        for &g in &gens {
            let h = m.mul(out[i], g);
            if !out.contains(&h) {
                out.push(h);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Builds `Δ_ℓ`: `[u]` is adjacent to `[z a^e u]` for `e = 0..3`.
pub fn build_delta(m: &QuotientMachine) -> Result<Delta> {
    let d4 = d4_images(m);
    if d4.len() != 8 {
        return Err(Error::NotAPartition(format!("D4 has {} images in the machine", d4.len())));
    }
    let n = m.order();
    let mut vertex_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for u in 0..n as u32 {
        if vertex_of[u as usize] == u32::MAX {
            for &d in &d4 {
                vertex_of[m.mul(d, u) as usize] = reps.len() as u32;
            }
            reps.push(u);
        }
    }
    let [a, z] = [m.of_sym(Sym::A), m.of_sym(Sym::Z)];
    let mut za = vec![z];
    for e in 1..4 {
        za.push(m.mul(za[e - 1], a));
    }
    let mut edges = Vec::new();
    for (v, &u) in reps.iter().enumerate() {
        let mut nbrs: Vec<u32> = za.iter().map(|&g| vertex_of[m.mul(g, u) as usize]).collect();
        nbrs.sort_unstable();
        if nbrs.windows(2).any(|w| w[0] == w[1]) || nbrs.contains(&(v as u32)) {
            return Err(Error::MultiEdge { vertex: v });
        }
        edges.extend(nbrs.into_iter().filter(|&w| w as usize > v).map(|w| (v, w as usize)));
    }
    let labels = reps.iter().map(|u| format!("g{u}")).collect();
    let graph = LabeledGraph::new(reps.len(), edges, labels)?;
    if !graph.is_regular(4) {
        return Err(Error::NotAPartition("neighbour relation is not symmetric".into()));
    }
    Ok(Delta { graph, vertex_of, reps, d4 })
}

impl Delta {
    /// `[u]·h = [u h]`.
    pub fn act(&self, m: &QuotientMachine, v: u32, h: u32) -> u32 {
        self.vertex_of[m.mul(self.reps[v as usize], h) as usize]
    }
}

/// The cycles `j ↦ [(za²)^j u]` and `j ↦ [(za²)^j a u]` over all vertex
/// representatives `u`, deduplicated and checked to partition the edges.
pub fn two_factor(m: &QuotientMachine, delta: &Delta) -> Result<CycleDecomp> {
    let [a, z] = [m.of_sym(Sym::A), m.of_sym(Sym::Z)];
    let step = m.mul(m.mul(z, a), a);
    let mut seen = HashMap::new();
    let mut cycles = Vec::new();
    for &u in &delta.reps {
        for start in [u, m.mul(a, u)] {
            let mut cyc = Vec::new();
            let mut g = start;
            loop {
                cyc.push(delta.vertex_of[g as usize]);
                g = m.mul(step, g);
                if g == start {
                    break;
                }
            }
            let key = canonical_cycle(&cyc);
            if let Entry::Vacant(e) = seen.entry(key) {
                e.insert(cycles.len());
                cycles.push(cyc);
            }
        }
    }
    let c = CycleDecomp { cycles };
    c.check_cover(&delta.graph).map_err(|e| Error::NotAPartition(e.to_string()))?;
    Ok(c)
}

/// Orbit data of the machine's right action.
#[derive(Debug, Clone)]
pub struct ActionOrbits {
    pub vertex_orbits: Vec<Vec<u32>>,
    /// Edge orbits as lists of edge indices.
    pub edge_orbits: Vec<Vec<usize>>,
    /// Machine elements fixing vertex 0.
    pub stabilizer_order: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut k = x;
        while self.0[k] != r {
            let next = self.0[k];
            self.0[k] = r;
            k = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut map: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.0.len() {
            let r = self.find(x);
            let k = *map.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(x);
        }
        out
    }
}

pub(crate) fn orbits_under(g: &LabeledGraph, perms: &[Vec<u32>]) -> (Vec<Vec<u32>>, Vec<Vec<usize>>) {
    let mut vu = UnionFind((0..g.n()).collect());
    let mut eu = UnionFind((0..g.edges().len()).collect());
    for p in perms {
        for (v, &w) in p.iter().enumerate() {
            vu.union(v, w as usize);
        }
        for (i, &[u, v]) in g.edges().iter().enumerate() {
            let j = g.edge_index(p[u as usize] as usize, p[v as usize] as usize).expect("automorphism");
            eu.union(i, j);
        }
    }
    let vo = vu.classes().into_iter().map(|c| c.into_iter().map(|v| v as u32).collect()).collect();
    (vo, eu.classes())
}

/// Orbits of the machine acting on a graph whose vertices are described by
/// `act(vertex, machine element)`; generators `a, b, z` suffice. The
/// stabilizer is counted among the `D4` images, which is where the
/// stabilizer of vertex 0 lives whenever vertex 0 lies over `[1]`.
pub fn action_orbits(
    g: &LabeledGraph,
    m: &QuotientMachine,
    d4: &[u32],
    act: impl Fn(u32, u32) -> Result<u32>,
) -> Result<ActionOrbits> {
    let mut perms = Vec::new();
    for h in m.generators() {
        let p = (0..g.n() as u32).map(|v| act(v, h)).collect::<Result<Vec<u32>>>()?;
        if !g.is_automorphism(&p) {
            return Err(Error::ActionNotByAutomorphisms(format!("generator image {h}")));
        }
        perms.push(p);
    }
    let (vertex_orbits, edge_orbits) = orbits_under(g, &perms);
    let mut stabilizer_order = 0;
    for &d in d4 {
        if act(0, d)? == 0 {
            stabilizer_order += 1;
        }
    }
    Ok(ActionOrbits { vertex_orbits, edge_orbits, stabilizer_order })
}
