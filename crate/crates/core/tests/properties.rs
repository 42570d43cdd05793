use proptest::prelude::*;

use flexigraph::amalgam::{normal_form, AmalgamNF, GWord, Sym};
use flexigraph::graphs::{from_graph6, to_graph6, LabeledGraph};
use flexigraph::nilq::{PGroup, QuotientMachine};
use flexigraph::words::{FreeWord, Letter};

fn raw_word(rank: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..24)
}

fn free_word(rank: usize) -> impl Strategy<Value = FreeWord> {
    raw_word(rank).prop_map(move |l| FreeWord::from_letters(rank, l))
}

fn gword() -> impl Strategy<Value = GWord> {
    let sym = prop_oneof![Just(Sym::A), Just(Sym::B), Just(Sym::Z)];
    prop::collection::vec((sym, -5i64..=5), 0..12).prop_map(GWord::new)
}

fn nf() -> impl Strategy<Value = AmalgamNF> {
    gword().prop_map(|w| normal_form(&w))
}

fn graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..40).prop_flat_map(|n| {
        prop::collection::btree_set((0..n, 0..n), 0..60).prop_map(move |pairs| {
            let edges: std::collections::BTreeSet<(usize, usize)> =
                pairs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
            LabeledGraph::new(n, edges, vec![]).unwrap()
        })
    })
}

fn machine(ell: u32) -> &'static QuotientMachine {
    static M: std::sync::OnceLock<[QuotientMachine; 2]> = std::sync::OnceLock::new();
    &M.get_or_init(|| [QuotientMachine::build(2).unwrap(), QuotientMachine::build(3).unwrap()])[ell as usize - 2]
}

proptest! {
    #[test]
    fn reduction_is_idempotent(l in raw_word(3)) {
        let w = FreeWord::from_letters(3, l);
        let again = FreeWord::from_letters(3, w.letters().to_vec());
        prop_assert_eq!(&again, &w);
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inv()));
        prop_assert!((&w * &w.inverse()).is_empty());
    }

    #[test]
    fn abelianize_and_evaluate_are_homomorphisms(u in free_word(3), v in free_word(3), im in prop::array::uniform3(-7i64..7)) {
        let uv = &u * &v;
        let sum: Vec<i64> = u.abelianize().0.iter().zip(&v.abelianize().0).map(|(a, b)| a + b).collect();
        prop_assert_eq!(uv.abelianize().0, sum);
        prop_assert_eq!(uv.evaluate(&im), u.evaluate(&im) + v.evaluate(&im));
    }

    #[test]
    fn normal_form_multiplication(x in gword(), y in gword(), z in gword()) {
        let (a, b, c) = (normal_form(&x), normal_form(&y), normal_form(&z));
        prop_assert_eq!(a.mul(&b), normal_form(&x.concat(&y)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
    }

    #[test]
    fn star_length_is_a_length(a in nf(), b in nf()) {
        prop_assert!(a.mul(&b).star_length() <= a.star_length() + b.star_length());
        prop_assert_eq!(a.inverse().star_length(), a.star_length());
        prop_assert_eq!(normal_form(&a.to_gword()), a);
    }

    #[test]
    fn graph6_round_trip(g in graph()) {
        let back = from_graph6(&to_graph6(&g)).unwrap();
        prop_assert_eq!(back.n(), g.n());
        let mut e1 = g.edges().to_vec();
        let mut e2 = back.edges().to_vec();
        e1.sort_unstable();
        e2.sort_unstable();
        prop_assert_eq!(e1, e2);
    }

    #[test]
    fn p_group_axioms(x in 0u32..5832, y in 0u32..5832, z in 0u32..5832) {
        let p = PGroup::new(3).unwrap();
        prop_assert_eq!(p.mul(p.mul(x, y), z), p.mul(x, p.mul(y, z)));
        prop_assert_eq!(p.mul(x, p.inv(x)), p.identity());
        prop_assert_eq!(p.conj(p.mul(x, y), z), p.mul(p.conj(x, z), p.conj(y, z)));
    }

    #[test]
    fn machine_is_a_homomorphic_image(a in nf(), b in nf(), ell in 2u32..=3) {
        let m = machine(ell);
        let (ga, gb) = (m.element(&a), m.element(&b));
        prop_assert_eq!(m.element(&a.mul(&b)), m.mul(ga, gb));
        prop_assert_eq!(m.element(&a.inverse()), m.inv(ga));
        prop_assert_eq!(m.element_by_rewriting(&a).unwrap(), ga);
    }
}
