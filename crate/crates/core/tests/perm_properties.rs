use hurwitz::{PermGroup, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn group_laws(g in perm(6), h in perm(6), k in perm(6)) {
        let gh_k = g.compose(&h).unwrap().compose(&k).unwrap();
        let g_hk = g.compose(&h.compose(&k).unwrap()).unwrap();
        prop_assert_eq!(gh_k, g_hk);
        prop_assert!(g.compose(&g.inverse()).unwrap().is_identity());
        let lhs = g.conjugate(&h).unwrap().conjugate(&k).unwrap();
        prop_assert_eq!(lhs, g.conjugate(&h.compose(&k).unwrap()).unwrap());
    }

    #[test]
    fn conjugation_keeps_cycle_type(g in perm(8), h in perm(8)) {
        prop_assert_eq!(g.conjugate(&h).unwrap().cycle_type(), g.cycle_type());
    }

    #[test]
    fn print_parse_round_trip(g in perm(7)) {
        prop_assert_eq!(Permutation::parse(&g.to_string(), 7).unwrap(), g);
    }

    #[test]
    fn right_action(g in perm(5), h in perm(5), x in 0u32..5) {
        // x^(gh) = (x^g)^h
        prop_assert_eq!(g.compose(&h).unwrap().apply(x), h.apply(g.apply(x)));
    }
}

#[test]
fn class_sizes_divide_order() {
    for d in 2..=5 {
        let g = PermGroup::symmetric(d).unwrap();
        for class in g.conjugacy_classes() {
            assert_eq!(g.order() % class.len(), 0);
        }
        let total: usize = g.conjugacy_classes().iter().map(Vec::len).sum();
        assert_eq!(total, g.order());
    }
}
