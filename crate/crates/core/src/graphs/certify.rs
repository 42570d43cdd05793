use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::aut::small_aut;
use super::delta::{action_orbits, build_delta, two_factor, Delta};
use super::{canonical_cycle, edge_girth_profile, girth, split, CycleDecomp, LabeledGraph};
use crate::error::{Error, Result};
use crate::nilq::{MachineSummary, QuotientMachine};
use crate::report::Verdict;

/// Girth-cycle counts seen on one edge class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileClass {
    pub class: String,
    pub edges: usize,
    /// Distinct counts of girth cycles through an edge of this class.
    pub girth_cycles_per_edge: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlexCertificate {
    pub ell: Option<u32>,
    pub n: usize,
    pub girth: usize,
    pub is_cubic: bool,
    pub is_connected: bool,
    pub vertex_transitive: bool,
    pub cycle_lengths: Vec<usize>,
    pub edge_class_counts: Vec<usize>,
    pub girth_cycles_per_edge: Vec<ProfileClass>,
    pub edge_orbits: usize,
    pub edge_classes_separated: bool,
    pub stabilizer_order: u128,
    pub full_aut_order: Option<u128>,
    pub full_aut_edge_orbits: Option<usize>,
    pub delta_vertices: Option<usize>,
    pub delta_girth: Option<usize>,
    pub machine: Option<MachineSummary>,
    /// `16·|P|`, the instance bound on the vertex count.
    pub vertex_bound: Option<usize>,
    pub verdict: Verdict,
    pub claim: &'static str,
}

const CLAIM: &str = "Gamma_l is a 3-valent flexible graph of girth 2l";

/// Everything produced by the full pipeline.
pub struct FlexibleBuild {
    pub machine: QuotientMachine,
    pub delta: Delta,
    pub delta_cycles: CycleDecomp,
    pub gamma: LabeledGraph,
    pub gamma_cycles: CycleDecomp,
    pub certificate: FlexCertificate,
}

fn profile_classes(g: &LabeledGraph, profile: &[u64], classes: &[(String, Vec<usize>)]) -> Vec<ProfileClass> {
    classes
        .iter()
        .map(|(name, edges)| ProfileClass {
            class: name.clone(),
            edges: edges.len(),
            girth_cycles_per_edge: edges.iter().map(|&e| profile[e]).collect::<BTreeSet<_>>().into_iter().collect(),
        })
        .inspect(|_| debug_assert!(!g.edges().is_empty()))
        .collect()
}

/// Two classes, each with a single profile value, and the values differ.
fn separated(pc: &[ProfileClass]) -> bool {
    pc.len() == 2
        && pc.iter().all(|c| c.girth_cycles_per_edge.len() == 1)
        && pc[0].girth_cycles_per_edge != pc[1].girth_cycles_per_edge
}

/// Runs machine → `Δ_ℓ` → 2-factor → split → checks. `small_aut` is run
/// when the split graph has at most `max_n` vertices.
pub fn certify_flexible(ell: u32, max_n: usize) -> Result<FlexibleBuild> {
    let machine = QuotientMachine::build(ell).map_err(|e| e.at_stage("machine"))?;
    let delta = build_delta(&machine).map_err(|e| e.at_stage("delta"))?;
    let delta_cycles = two_factor(&machine, &delta).map_err(|e| e.at_stage("two_factor"))?;
    let (gamma, gamma_cycles) = split(&delta.graph, &delta_cycles).map_err(|e| e.at_stage("split"))?;
    let g = girth(&gamma).map_err(|e| e.at_stage("girth"))?;
    let delta_girth = girth(&delta.graph).map_err(|e| e.at_stage("girth"))?;
    let profile = edge_girth_profile(&gamma, g);

    // action on split vertices 2α + k, where k indexes the cycles at α
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); delta.graph.n()];
    for (ci, cyc) in delta_cycles.cycles.iter().enumerate() {
        for &v in cyc {
            at[v as usize].push(ci);
        }
    }
    let index: HashMap<Vec<u32>, usize> =
        delta_cycles.cycles.iter().enumerate().map(|(i, c)| (canonical_cycle(c), i)).collect();
    let act = |x: u32, h: u32| -> Result<u32> {
        let (alpha, k) = ((x / 2) as usize, (x % 2) as usize);
        let image: Vec<u32> =
            delta_cycles.cycles[at[alpha][k]].iter().map(|&v| delta.act(&machine, v, h)).collect();
        let ci = *index
            .get(&canonical_cycle(&image))
            .ok_or_else(|| Error::ActionNotByAutomorphisms(format!("cycle {} is not mapped to a cycle", at[alpha][k])))?;
        let beta = delta.act(&machine, alpha as u32, h);
        let k2 = at[beta as usize]
            .iter()
            .position(|&d| d == ci)
            .ok_or_else(|| Error::ActionNotByAutomorphisms("cycle image misses vertex image".into()))?;
        Ok(2 * beta + k2 as u32)
    };
    let orbits = action_orbits(&gamma, &machine, &delta.d4, act).map_err(|e| e.at_stage("action"))?;

    let (mut matching, mut cycle) = (Vec::new(), Vec::new());
    for (i, &[u, v]) in gamma.edges().iter().enumerate() {
        if u / 2 == v / 2 {
            matching.push(i);
        } else {
            cycle.push(i);
        }
    }
    let orbit_is_class = |o: &Vec<usize>| {
        let mut o = o.clone();
        o.sort_unstable();
        o == matching || o == cycle
    };
    let classes = vec![("matching".to_string(), matching.clone()), ("cycle".to_string(), cycle.clone())];
    let pc = profile_classes(&gamma, &profile, &classes);
    let machine_separated = orbits.edge_orbits.len() == 2 && orbits.edge_orbits.iter().all(orbit_is_class) && separated(&pc);

    let aut = if gamma.n() <= max_n { Some(small_aut(&gamma, max_n).map_err(|e| e.at_stage("small_aut"))?) } else { None };
    let full_ok = aut.as_ref().is_none_or(|a| a.edge_orbits == 2);

    let cycle_lengths: Vec<usize> = delta_cycles.lengths().into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let stabilizer = orbits.stabilizer_order as u128;
    let vertex_transitive = orbits.vertex_orbits.len() == 1;
    if vertex_transitive && gamma.n() as u128 * stabilizer != machine.order() as u128 {
        return Err(Error::ActionNotByAutomorphisms("orbit-stabilizer count mismatch".into()).at_stage("action"));
    }
    let is_cubic = gamma.is_regular(3);
    let is_connected = gamma.is_connected();
    let ok = g == 2 * ell as usize
        && is_cubic
        && is_connected
        && vertex_transitive
        && machine_separated
        && stabilizer >= 4
        && full_ok;
    let certificate = FlexCertificate {
        ell: Some(ell),
        n: gamma.n(),
        girth: g,
        is_cubic,
        is_connected,
        vertex_transitive,
        cycle_lengths,
        edge_class_counts: vec![matching.len(), cycle.len()],
        girth_cycles_per_edge: pc,
        edge_orbits: orbits.edge_orbits.len(),
        edge_classes_separated: machine_separated,
        stabilizer_order: stabilizer,
        full_aut_order: aut.as_ref().map(|a| a.order),
        full_aut_edge_orbits: aut.as_ref().map(|a| a.edge_orbits),
        delta_vertices: Some(delta.graph.n()),
        delta_girth: Some(delta_girth),
        machine: Some(machine.summary()),
        vertex_bound: Some(16 * machine.p_group().order()),
        verdict: Verdict::from(ok),
        claim: CLAIM,
    };
    Ok(FlexibleBuild { machine, delta, delta_cycles, gamma, gamma_cycles, certificate })
}

/// Checker-only entry: certifies an arbitrary graph using its full
/// automorphism group, with edge classes taken to be the `Aut`-orbits.
pub fn certify_graph(g: &LabeledGraph, max_n: usize) -> Result<FlexCertificate> {
    let gi = girth(g)?;
    let aut = small_aut(g, max_n)?;
    let profile = edge_girth_profile(g, gi);
    let mut by_orbit: Vec<Vec<usize>> = vec![Vec::new(); aut.edge_orbits];
    for (e, &k) in aut.edge_orbit_of.iter().enumerate() {
        by_orbit[k].push(e);
    }
    let classes: Vec<(String, Vec<usize>)> =
        by_orbit.into_iter().enumerate().map(|(k, es)| (format!("orbit{k}"), es)).collect();
    let pc = profile_classes(g, &profile, &classes);
    let is_cubic = g.is_regular(3);
    let is_connected = g.is_connected();
    let vertex_transitive = aut.vertex_orbits == 1;
    let two = aut.edge_orbits == 2;
    let ok = is_cubic && is_connected && vertex_transitive && two && aut.stabilizer_order >= 4;
    Ok(FlexCertificate {
        ell: None,
        n: g.n(),
        girth: gi,
        is_cubic,
        is_connected,
        vertex_transitive,
        cycle_lengths: Vec::new(),
        edge_class_counts: classes.iter().map(|(_, es)| es.len()).collect(),
        girth_cycles_per_edge: pc,
        edge_orbits: aut.edge_orbits,
        edge_classes_separated: two,
        stabilizer_order: aut.stabilizer_order,
        full_aut_order: Some(aut.order),
        full_aut_edge_orbits: Some(aut.edge_orbits),
        delta_vertices: None,
        delta_girth: None,
        machine: None,
        vertex_bound: None,
        verdict: Verdict::from(ok),
        claim: "the graph is 3-valent, vertex-transitive, with two edge orbits and stabilizers of order >= 4",
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::prism;
    use super::*;

    #[test]
    fn prism_is_not_flexible() {
        let c = certify_graph(&prism(), 100).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!((c.stabilizer_order, c.edge_orbits, c.girth), (2, 2, 3));
        assert!(c.vertex_transitive);
    }

    #[test]
    fn ell2_pipeline() {
        let b = certify_flexible(2, 2000).unwrap();
        let c = &b.certificate;
        println!("{}", serde_json::to_string_pretty(c).unwrap());
        assert_eq!(c.girth, 4);
        assert_eq!(c.n, 2 * b.delta.graph.n());
        assert_eq!(c.edge_class_counts, vec![b.delta.graph.n(), b.delta.graph.edges().len()]);
    }
}
