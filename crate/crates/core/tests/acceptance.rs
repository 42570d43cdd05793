//! Acceptance battery. Each test prints one `criterion N: PASS|FAIL` line.

use std::time::{Duration, Instant};

use flexigraph::amalgam::{normal_form, relator_discrepancy, AmalgamNF, GWord};
use flexigraph::cosetenum::{amalgam_presentation, power_nilpotent_presentation, todd_coxeter};
use flexigraph::graphs::{certify_flexible, FlexCertificate, DEFAULT_MAX_N};
use flexigraph::membership::{verify_fox_magnus, verify_free_product_kernel, verify_power_gamma};
use flexigraph::nilq::{verify_ball_intersection, PGroup, QuotientMachine};

const CAP: usize = 1 << 26;

fn report(n: u32, ok: bool, detail: String) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn graph_battery(c: &FlexCertificate, ell: u32) -> Vec<(&'static str, bool)> {
    let girth = 2 * ell as usize;
    let profiles: Vec<&Vec<u64>> = c.girth_cycles_per_edge.iter().map(|p| &p.girth_cycles_per_edge).collect();
    vec![
        ("connected", c.is_connected),
        ("cubic", c.is_cubic),
        ("vertex-transitive", c.vertex_transitive),
        ("girth", c.girth == girth),
        ("cycle lengths", c.cycle_lengths == vec![girth]),
        ("stabilizer 4", c.stabilizer_order == 4),
        ("two machine edge orbits", c.edge_orbits == 2),
        ("profiles constant per class and different", c.edge_classes_separated && profiles.len() == 2 && profiles[0] != profiles[1]),
        ("vertex bound", c.n <= c.vertex_bound.unwrap_or(0)),
        ("verdict", c.verdict.passed()),
    ]
}

fn failed(checks: &[(&'static str, bool)]) -> Vec<&'static str> {
    checks.iter().filter(|c| !c.1).map(|c| c.0).collect()
}

#[test]
fn criterion_1_end_to_end_ell_2() {
    let t = Instant::now();
    let b = certify_flexible(2, DEFAULT_MAX_N).unwrap();
    let c = &b.certificate;
    let mut checks = graph_battery(c, 2);
    checks.push(("full Aut edge orbits 2", c.full_aut_edge_orbits == Some(2)));
    checks.push(("full Aut order >= 4n", c.full_aut_order.is_some_and(|o| o >= 4 * c.n as u128)));
    let elapsed = t.elapsed();
    checks.push(("under 10 s", elapsed < Duration::from_secs(10)));
    let bad = failed(&checks);
    report(
        1,
        bad.is_empty(),
        format!(
            "n={} girth={} stab={} aut={:?} aut_edge_orbits={:?} time={elapsed:.2?} failed={bad:?}",
            c.n, c.girth, c.stabilizer_order, c.full_aut_order, c.full_aut_edge_orbits
        ),
    );
}

#[test]
fn criterion_2_end_to_end_ell_3() {
    let t = Instant::now();
    // invariant separation only: the exact automorphism search is skipped
    let b = certify_flexible(3, 0).unwrap();
    let c = &b.certificate;
    let mut checks = graph_battery(c, 3);
    checks.push(("no full Aut run", c.full_aut_order.is_none()));
    let elapsed = t.elapsed();
    checks.push(("under 5 min", elapsed < Duration::from_secs(300)));
    let bad = failed(&checks);
    report(
        2,
        bad.is_empty(),
        format!("n={} girth={} stab={} time={elapsed:.2?} failed={bad:?}", c.n, c.girth, c.stabilizer_order),
    );
}

fn g(s: &str) -> AmalgamNF {
    normal_form(&GWord::parse(s).unwrap())
}

fn sorted(mut v: Vec<AmalgamNF>) -> Vec<AmalgamNF> {
    v.sort();
    v
}

#[test]
fn criterion_3_ball_intersections() {
    let t = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for ell in [2u32, 3] {
        let m = QuotientMachine::build(ell).unwrap();
        let e = 2 * ell as i64;
        let (inner, _) = verify_ball_intersection(&m, 4 * ell as usize - 1, CAP).unwrap();
        let (outer, visited) = verify_ball_intersection(&m, 4 * ell as usize + 1, CAP).unwrap();
        let claimed = sorted(vec![AmalgamNF::identity(), g("z*a^2").pow(e), g("z*a^2").pow(-e)]);
        let a_ok = inner == vec![AmalgamNF::identity()];
        let b_ok = sorted(outer.clone()) == claimed;
        ok &= a_ok && b_ok;
        let shown: Vec<String> = outer.iter().map(|x| x.compact()).collect();
        lines.push(format!("ell={ell} (a)={a_ok} (b)={b_ok} visited={visited} found={shown:?}"));
    }
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(180);
    report(3, ok, format!("{} time={elapsed:.2?}", lines.join("; ")));
}

/// The sets the machine actually produces around radius `4ℓ`: the claim
/// holds at `4ℓ`, and at `4ℓ + 1` the two `a`-conjugates of
/// `(za²)^{±2ℓ}` join it.
#[test]
fn ball_intersections_at_4l_and_corrected_4l_plus_1() {
    for ell in [2u32, 3] {
        let m = QuotientMachine::build(ell).unwrap();
        let e = 2 * ell as i64;
        let c = g("z*a^2").pow(e);
        let a = g("a");
        let (at4, _) = verify_ball_intersection(&m, 4 * ell as usize, CAP).unwrap();
        assert_eq!(sorted(at4), sorted(vec![AmalgamNF::identity(), c.clone(), c.inverse()]));
        let conj = a.inverse().mul(&c).mul(&a);
        assert_eq!(conj.star_length(), 4 * ell as usize + 1);
        let (at4p1, _) = verify_ball_intersection(&m, 4 * ell as usize + 1, CAP).unwrap();
        let expected = vec![AmalgamNF::identity(), c.clone(), c.inverse(), conj.clone(), conj.inverse()];
        assert_eq!(sorted(at4p1), sorted(expected));
    }
}

#[test]
fn criterion_4_power_gamma_desk_verification() {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [2usize, 3] {
        for ell in [2u32, 3, 5] {
            let r = verify_power_gamma(k, ell, CAP).unwrap();
            ok &= r.verdict.passed();
            parts.push(format!("(k={k},l={ell}):{}[{}]", r.verdict, r.trivial_image.len()));
        }
    }
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(120);
    report(4, ok, format!("{} time={elapsed:.2?}", parts.join(" ")));
}

#[test]
fn criterion_5_free_product_kernel() {
    let mut ok = true;
    let mut parts = Vec::new();
    for ell in [2u32, 3, 5] {
        let r = verify_free_product_kernel(ell, CAP).unwrap();
        ok &= r.verdict.passed();
        parts.push(format!("l={ell}:{} members={:?}", r.verdict, r.members_in_ball));
    }
    report(5, ok, parts.join("; "));
}

#[test]
fn criterion_6_kernel_index() {
    let p = amalgam_presentation();
    let sub = p.parse_word_list("z*a^2*z*a^2, z*a*z*a, z*a^3*z*a^3").unwrap();
    let t = todd_coxeter(&p, &sub, 100_000);
    let image_order = flexigraph::amalgam::ImageElement::ORDER;
    let ok = t.index() == Some(16) && image_order == 16 && t.verify(&p, &sub);
    report(6, ok, format!("todd-coxeter index={:?} image order={image_order}", t.index()));
}

#[test]
fn criterion_7_dual_oracle_quotient_order() {
    let p2 = PGroup::new(2).unwrap().order();
    let p3 = PGroup::new(3).unwrap().order();
    let pres = power_nilpotent_presentation(3).unwrap();
    let t = todd_coxeter(&pres, &[], 2_000_000);
    let ok = p2 == 64 && t.index() == Some(p3) && t.verify(&pres, &[]);
    report(7, ok, format!("|P|(l=2)={p2} |P|(l=3)={p3} todd-coxeter={:?} peak={}", t.index(), t.peak_cosets));
}

#[test]
fn criterion_8_fox_and_magnus() {
    let r = verify_fox_magnus(1000, 200, 7);
    let ok = r.verdict.passed() && r.fox_matches == 1000 && r.magnus_settings.len() == 12;
    report(8, ok, format!("fox {}/{} magnus failures={}", r.fox_matches, r.fox_samples, r.magnus_failures));
}

#[test]
fn criterion_9_relator_discrepancy() {
    let a = serde_json::to_string(&relator_discrepancy()).unwrap();
    let b = serde_json::to_string(&relator_discrepancy()).unwrap();
    let r = relator_discrepancy();
    let ok = r.verdict.passed() && a == b;
    let broken = |v: &[flexigraph::amalgam::RelatorReport]| -> Vec<&str> {
        v.iter().filter(|x| !x.holds).map(|x| x.relator).collect()
    };
    report(
        9,
        ok,
        format!(
            "literature fails ltr={:?} rtl={:?}; adopted phi fails {:?}",
            broken(&r.literature_left_to_right),
            broken(&r.literature_right_to_left),
            broken(&r.adopted_phi)
        ),
    );
}
