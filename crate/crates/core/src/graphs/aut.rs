//! Automorphism groups of small graphs by individualization and refinement.
//!
//! The group order is the product of basic orbit lengths along a base; the
//! automorphisms found on the way generate the group and give edge orbits.

use std::collections::HashMap;

use serde::Serialize;

use super::delta::orbits_under;
use super::LabeledGraph;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_N: usize = 2000;

#[derive(Debug, Clone, Serialize)]
pub struct AutSummary {
    pub order: u128,
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    /// `order / |orbit of vertex 0|`.
    pub stabilizer_order: u128,
    #[serde(skip)]
    pub generators: Vec<Vec<u32>>,
    #[serde(skip)]
    pub edge_orbit_of: Vec<usize>,
}

/// Refines two colourings of `g` together until stable, naming colours by
/// their signatures so the names agree across both sides. Returns `false`
/// if some colour has different multiplicities on the two sides.
fn refine(g: &LabeledGraph, left: &mut [u32], right: &mut [u32]) -> bool {
    let n = g.n();
    let mut classes = count_classes(left, right);
    loop {
        let sig = |colors: &[u32], v: usize| {
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w as usize]).collect();
            nb.sort_unstable();
            (colors[v], nb)
        };
        let sl: Vec<_> = (0..n).map(|v| sig(left, v)).collect();
        let sr: Vec<_> = (0..n).map(|v| sig(right, v)).collect();
        let mut all: Vec<&(u32, Vec<u32>)> = sl.iter().chain(sr.iter()).collect();
        all.sort_unstable();
        all.dedup();
        let rank: HashMap<&(u32, Vec<u32>), u32> = all.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
        for v in 0..n {
            left[v] = rank[&sl[v]];
            right[v] = rank[&sr[v]];
        }
        let now = count_classes(left, right);
        if !balanced(left, right) {
            return false;
        }
        if now == classes {
            return true;
        }
        classes = now;
    }
}

fn count_classes(left: &[u32], right: &[u32]) -> usize {
    let mut c: Vec<u32> = left.iter().chain(right).copied().collect();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn balanced(left: &[u32], right: &[u32]) -> bool {
    let mut l = left.to_vec();
    let mut r = right.to_vec();
    l.sort_unstable();
    r.sort_unstable();
    l == r
}

/// First colour (by name) with more than one vertex.
fn target_cell(colors: &[u32]) -> Option<u32> {
    let mut count: HashMap<u32, usize> = HashMap::new();
    for &c in colors {
        *count.entry(c).or_default() += 1;
    }
    count.into_iter().filter(|&(_, k)| k > 1).map(|(c, _)| c).min()
}

fn individualize(colors: &mut [u32], v: usize) {
    let fresh = colors.iter().max().map_or(0, |m| m + 1);
    colors[v] = fresh;
}

/// Searches for an automorphism mapping the left colouring onto the right.
fn search(g: &LabeledGraph, mut left: Vec<u32>, mut right: Vec<u32>) -> Option<Vec<u32>> {
    if !refine(g, &mut left, &mut right) {
        return None;
    }
    match target_cell(&left) {
        None => {
            let pos: HashMap<u32, u32> = right.iter().enumerate().map(|(v, &c)| (c, v as u32)).collect();
            let perm: Vec<u32> = left.iter().map(|c| pos[c]).collect();
            g.is_automorphism(&perm).then_some(perm)
        }
        Some(cell) => {
            let v = left.iter().position(|&c| c == cell).expect("nonempty cell");
            for w in (0..g.n()).filter(|&w| right[w] == cell) {
                let (mut l, mut r) = (left.clone(), right.clone());
                individualize(&mut l, v);
                individualize(&mut r, w);
                if let Some(p) = search(g, l, r) {
                    return Some(p);
                }
            }
            None
        }
    }
}

fn orbit_of(v: usize, gens: &[&Vec<u32>]) -> Vec<usize> {
    let mut orbit = vec![v];
    let mut i = 0;
    while i < orbit.len() {
        for p in gens {
            let w = p[orbit[i]] as usize;
            if !orbit.contains(&w) {
                orbit.push(w);
            }
        }
        i += 1;
    }
    orbit
}

/// Exact automorphism group order and orbit counts for `g.n() <= max_n`.
pub fn small_aut(g: &LabeledGraph, max_n: usize) -> Result<AutSummary> {
    let n = g.n();
    if n > max_n {
        return Err(Error::TooLarge { n, max_n });
    }
    let mut colors: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    {
        let mut twin = colors.clone();
        refine(g, &mut colors, &mut twin);
    }
    let mut base: Vec<usize> = Vec::new();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut order: u128 = 1;
    while let Some(cell) = target_cell(&colors) {
        let v = colors.iter().position(|&c| c == cell).expect("nonempty cell");
        let fixing = |gens: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
            gens.iter().filter(|p| base.iter().all(|&b| p[b] as usize == b)).cloned().collect()
        };
        let mut stab_gens = fixing(&gens);
        let mut orbit = orbit_of(v, &stab_gens.iter().collect::<Vec<_>>());
        for w in (0..n).filter(|&w| colors[w] == cell) {
            if orbit.contains(&w) {
                continue;
            }
            let (mut l, mut r) = (colors.clone(), colors.clone());
            individualize(&mut l, v);
            individualize(&mut r, w);
            if let Some(p) = search(g, l, r) {
                gens.push(p);
                stab_gens = fixing(&gens);
                orbit = orbit_of(v, &stab_gens.iter().collect::<Vec<_>>());
            }
        }
        order *= orbit.len() as u128;
        individualize(&mut colors, v);
        let mut twin = colors.clone();
        refine(g, &mut colors, &mut twin);
        base.push(v);
    }
    let (vertex_orbits, edge_orbits) = orbits_under(g, &gens);
    let mut edge_orbit_of = vec![0; g.edges().len()];
    for (k, orb) in edge_orbits.iter().enumerate() {
        for &e in orb {
            edge_orbit_of[e] = k;
        }
    }
    let orbit0 = vertex_orbits.iter().find(|o| o.contains(&0)).map_or(1, |o| o.len()) as u128;
    Ok(AutSummary {
        order,
        vertex_orbits: vertex_orbits.len(),
        edge_orbits: edge_orbits.len(),
        stabilizer_order: order / orbit0,
        generators: gens,
        edge_orbit_of,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    /// Oracle: count all vertex permutations preserving adjacency.
    fn brute_force_order(g: &LabeledGraph) -> u128 {
        fn rec(g: &LabeledGraph, perm: &mut Vec<u32>, used: &mut Vec<bool>) -> u128 {
            let k = perm.len();
            if k == g.n() {
                return 1;
            }
            let mut total = 0;
            for w in 0..g.n() {
                if used[w] {
                    continue;
                }
                // adjacency to already placed vertices must be preserved
                let ok = (0..k).all(|u| g.has_edge(u, k) == g.has_edge(perm[u] as usize, w));
                if ok {
                    used[w] = true;
                    perm.push(w as u32);
                    total += rec(g, perm, used);
                    perm.pop();
                    used[w] = false;
                }
            }
            total
        }
        rec(g, &mut Vec::new(), &mut vec![false; g.n()])
    }

    #[test]
    fn triangle_and_cube() {
        let t = small_aut(&cycle(3), 10).unwrap();
        assert_eq!((t.order, t.edge_orbits), (6, 1));
        let c = small_aut(&cube(), 10).unwrap();
        assert_eq!(brute_force_order(&cube()), 48);
        assert_eq!((c.order, c.vertex_orbits, c.edge_orbits), (48, 1, 1));
    }

    #[test]
    fn agrees_with_brute_force() {
        for g in [prism(), petersen(), octahedron(), cycle(7), complete(5)] {
            assert_eq!(small_aut(&g, 20).unwrap().order, brute_force_order(&g));
        }
        let p = small_aut(&prism(), 10).unwrap();
        assert_eq!((p.order, p.edge_orbits, p.stabilizer_order), (12, 2, 2));
    }

    #[test]
    fn asymmetric_and_disconnected() {
        // path 0-1-2 plus isolated 3: swap ends only
        let g = LabeledGraph::new(4, [(0, 1), (1, 2)], vec![]).unwrap();
        let s = small_aut(&g, 10).unwrap();
        assert_eq!((s.order, s.vertex_orbits), (2, 3));
        let two_triangles = LabeledGraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], vec![]).unwrap();
        assert_eq!(small_aut(&two_triangles, 10).unwrap().order, 72);
    }

    #[test]
    fn too_large() {
        assert!(matches!(small_aut(&cycle(30), 10), Err(Error::TooLarge { n: 30, max_n: 10 })));
    }
}
