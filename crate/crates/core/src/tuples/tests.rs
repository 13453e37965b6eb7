use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::perm::PermGroup;

fn s3(reps: &[&str]) -> Arc<EquippedGroup> {
    let g = PermGroup::symmetric(3).unwrap();
    let reps: Vec<_> = reps.iter().map(|r| Permutation::parse(r, 3).unwrap()).collect();
    Arc::new(EquippedGroup::build(g, &reps).unwrap())
}

fn s4_transp() -> Arc<EquippedGroup> {
    let g = PermGroup::symmetric(4).unwrap();
    Arc::new(EquippedGroup::build(g, &[Permutation::parse("(1 2)", 4).unwrap()]).unwrap())
}

fn t(e: &Arc<EquippedGroup>, s: &str) -> CoveringTuple {
    CoveringTuple::parse(e.clone(), s).unwrap()
}

fn p3(s: &str) -> Permutation {
    Permutation::parse(s, 3).unwrap()
}

/// Left-to-right product of image arrays, written out independently of `Permutation`.
fn word_product(word: &[&str], degree: usize) -> Vec<u32> {
    let mut acc: Vec<u32> = (0..degree as u32).collect();
    for w in word {
        let g = Permutation::parse(w, degree).unwrap();
        acc = acc.iter().map(|&x| g.images()[x as usize]).collect();
    }
    acc
}

#[test]
fn literal_round_trip() {
    let e = s3(&["(1 2)", "(1 2 3)"]);
    let x = t(&e, "[(1 2),(1 3) | (1 2 3),(1 3); (2 3),e]");
    assert_eq!(x.len(), 2);
    assert_eq!(x.genus(), 2);
    assert_eq!(x.handles()[1], (p3("(2 3)"), p3("e")));
    assert_eq!(x.to_string(), "[(1 2),(1 3) | (1 2 3),(1 3); (2 3),e]");
    assert_eq!(t(&e, &x.to_string()), x);
    assert_eq!(t(&e, "[]").to_string(), "[]");
    assert_eq!(t(&e, "[| (1 2),(1 3)]").to_string(), "[| (1 2),(1 3)]");
    assert!(CoveringTuple::parse(e.clone(), "[e]").is_err());
    assert!(CoveringTuple::parse(e.clone(), "[(1 2) | (1 2)]").is_err());
    assert!(CoveringTuple::parse(e, "(1 2)").is_err());
}

#[test]
fn boundary_examples() {
    let e = s3(&["(1 2)"]);
    assert_eq!(t(&e, "[(1 2)]").boundary(), p3("(1 2)"));
    assert!(t(&e, "[]").boundary().is_identity());
    // oracle: the word g [a,b] = (1 2)(1 3)(2 3)(1 3)^-1(2 3)^-1
    let x = t(&e, "[(1 2) | (1 3),(2 3)]");
    let expected = word_product(&["(1 2)", "(1 3)", "(2 3)", "(1 3)", "(2 3)"], 3);
    assert_eq!(x.boundary().images(), expected.as_slice());
    assert_eq!(x.boundary(), p3("(2 3)"));
}

#[test]
fn type_genus_subgroup() {
    let e = s3(&["(1 2)", "(1 2 3)"]);
    assert_eq!(t(&e, "[(1 2),(1 3),(1 2 3)]").tuple_type(), vec![2, 1]);
    assert_eq!(t(&e, "[| (1 2),(1 3); (1 2 3),e]").genus(), 2);
    assert_eq!(t(&e, "[(1 2) | (1 2 3),e]").generated_subgroup().order(), 6);
    assert_eq!(t(&e, "[(1 2),(1 2)]").generated_subgroup().order(), 2);
    assert_eq!(t(&e, "[]").generated_subgroup().order(), 1);
}

#[test]
fn h_move_examples() {
    let e = s3(&["(1 2)"]);
    let x = t(&e, "[(1 2),(2 3)]");
    let y = x.h_move(1, Dir::Forward).unwrap();
    assert_eq!(y, t(&e, "[(2 3),(1 3)]"));
    assert_eq!(y.h_move(1, Dir::Backward).unwrap(), x);
    let z = t(&e, "[(1 2),(1 2)]");
    assert_eq!(z.h_move(1, Dir::Forward).unwrap(), z);
    assert!(x.h_move(2, Dir::Forward).is_err());
    assert!(x.h_move(0, Dir::Forward).is_err());
    assert!(t(&e, "[(1 2)]").h_move(1, Dir::Forward).is_err());
}

#[test]
fn lambda_move_examples() {
    let e = s3(&["(1 2)"]);
    let x = t(&e, "[(1 2) | (1 3),(2 3)]");
    let y = x.lambda_move(1, Dir::Forward).unwrap();
    assert_eq!(y, t(&e, "[(1 2) | (1 2 3),(2 3)]"));
    assert_eq!(y.boundary(), p3("(2 3)"));
    assert_eq!(y.lambda_move(1, Dir::Backward).unwrap(), x);
    // a = b = e: c1 = g^-1, so g stays and a becomes g
    let z = t(&e, "[(1 3) | e,e]").lambda_move(1, Dir::Forward).unwrap();
    assert_eq!(z, t(&e, "[(1 3) | (1 3),e]"));
    assert!(matches!(
        t(&e, "[| (1 3),e]").lambda_move(1, Dir::Forward),
        Err(TupleError::Move(MoveError::NoBranchLetter(_)))
    ));
    assert!(x.lambda_move(2, Dir::Forward).is_err());
}

#[test]
fn mu_move_examples() {
    let e = s3(&["(1 2)"]);
    let x = t(&e, "[(1 2) | (1 3),(2 3)]");
    let y = x.mu_move(1, Dir::Forward).unwrap();
    assert_eq!(y, t(&e, "[(1 3) | (1 3),(1 2 3)]"));
    assert_eq!(y.boundary(), p3("(2 3)"));
    assert_eq!(y.mu_move(1, Dir::Backward).unwrap(), x);
    let z = t(&e, "[(1 3) | e,e]").mu_move(1, Dir::Forward).unwrap();
    assert_eq!(z.handles()[0].1, p3("(1 3)").inverse());
    assert!(t(&e, "[| e,e]").mu_move(1, Dir::Forward).is_err());
}

#[test]
fn zeta_move_examples() {
    let e = s3(&["(1 2)"]);
    // commuting handle: only a, b get conjugated by the letter
    let x = t(&e, "[(1 2) | (1 2),e]");
    let y = x.zeta_move(1, Dir::Forward).unwrap();
    assert_eq!(y, t(&e, "[(1 2) | (1 2),e]"));
    let x = t(&e, "[(1 2) | (1 3),(1 3)]");
    let y = x.zeta_move(1, Dir::Forward).unwrap();
    assert_eq!(y, t(&e, "[(1 2) | (2 3),(2 3)]"));
    let x = t(&e, "[(1 2),(2 3) | (1 3),(2 3); (1 2 3),(1 2)]");
    for j in 1..=2 {
        let y = x.zeta_move(j, Dir::Forward).unwrap();
        assert_eq!(y.zeta_move(j, Dir::Backward).unwrap(), x);
        assert_eq!(y.boundary(), x.boundary());
    }
}

#[test]
fn conjugate_examples() {
    let e = s3(&["(1 2)"]);
    let x = t(&e, "[(1 2)]");
    assert_eq!(x.conjugate(&p3("(1 2 3)")).unwrap(), t(&e, "[(2 3)]"));
    assert_eq!(x.conjugate(&p3("e")).unwrap(), x);
    let y = t(&e, "[(1 2),(1 3) | (1 2 3),(2 3)]");
    let h = p3("(1 3)");
    assert_eq!(y.conjugate(&h).unwrap().boundary(), y.boundary().conjugate(&h).unwrap());
    let z3 = Arc::new(
        EquippedGroup::build(PermGroup::closure(&[p3("(1 2 3)")]).unwrap(), &[p3("(1 2 3)")]).unwrap(),
    );
    assert!(t(&z3, "[(1 2 3)]").conjugate(&p3("(1 2)")).is_err());
}

#[test]
fn product_examples() {
    let e = s3(&["(1 2)"]);
    let g1 = t(&e, "[(1 2)]");
    let g2 = t(&e, "[(2 3)]");
    assert_eq!(g1.product(&g2).unwrap(), t(&e, "[(1 2),(2 3)]"));
    let h = t(&e, "[| (1 3),(2 3)]");
    let prod = h.product(&t(&e, "[(1 2)]")).unwrap();
    assert_eq!(prod, t(&e, "[(2 3) | (1 3),(2 3)]"));
    assert_eq!(prod.boundary(), p3("(1 3)"));
    assert_eq!(h.boundary().compose(&p3("(1 2)")).unwrap(), p3("(1 3)"));
    assert_eq!(g1.product(&CoveringTuple::empty(e.clone())).unwrap(), g1);
    let other = s3(&["(1 2)", "(1 2 3)"]);
    assert!(matches!(
        g1.product(&t(&other, "[(1 2)]")),
        Err(TupleError::EquipmentMismatch)
    ));
}

#[test]
fn normalize_examples() {
    let e = s3(&["(1 2)"]);
    let x = t(&e, "[(1 2),(1 2) | e,e]");
    let r = x.normalize_handles(DEFAULT_NORMALIZE_BUDGET).unwrap();
    assert_eq!(r.tuple, x);
    assert!(r.moves.is_empty());
    let y = t(&e, "[| (1 2),(1 3)]");
    assert!(matches!(
        y.normalize_handles(DEFAULT_NORMALIZE_BUDGET),
        Err(TupleError::NotReducible { .. })
    ));
    // eight transpositions with boundary e after the handle (1 2 3),(1 3)
    let h = t(&e, "[| (1 2 3),(1 3)]");
    let u = h.boundary();
    let prefix = t(&e, "[(1 2),(1 2),(1 3),(1 3),(2 3),(2 3),(1 2)]");
    // P x U = e forces x = (U P)^-1
    let last = u.compose(&prefix.boundary()).unwrap().inverse();
    let mut branch = prefix.branch().to_vec();
    branch.push(last);
    let z = CoveringTuple::new(e.clone(), branch, h.handles().to_vec()).unwrap();
    assert!(z.boundary().is_identity());
    assert_eq!(z.tuple_type(), vec![8]);
    let r = z.normalize_handles(DEFAULT_NORMALIZE_BUDGET).unwrap();
    assert!(r.tuple.handles().iter().all(|(a, b)| a.is_identity() && b.is_identity()));
    assert_eq!(z.apply_all(&r.moves).unwrap(), r.tuple);
    assert!(r.tuple.boundary().is_identity());
}

fn arb_tuple(e: Arc<EquippedGroup>, max_n: usize, max_p: usize) -> impl Strategy<Value = CoveringTuple> {
    let o = e.o_size();
    let g = e.group().order();
    (
        proptest::collection::vec(0..o, 0..=max_n),
        proptest::collection::vec((0..g, 0..g), 0..=max_p),
    )
        .prop_map(move |(bs, hs)| {
            let branch = bs.iter().map(|&k| e.o_elements()[k].clone()).collect();
            let elems = e.group().elements();
            let handles = hs.iter().map(|&(a, b)| (elems[a].clone(), elems[b].clone())).collect();
            CoveringTuple::new(e.clone(), branch, handles).unwrap()
        })
}

fn all_moves(x: &CoveringTuple) -> Vec<Move> {
    MoveSet::WITH_ZETA.moves(x.len(), x.genus())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn moves_preserve_invariants_s3(x in arb_tuple(s3(&["(1 2)", "(1 2 3)"]), 5, 2)) {
        let sub = x.generated_subgroup();
        for mv in all_moves(&x) {
            let y = x.apply(mv).unwrap();
            prop_assert_eq!(y.boundary(), x.boundary());
            prop_assert_eq!(y.tuple_type(), x.tuple_type());
            prop_assert_eq!(y.genus(), x.genus());
            prop_assert!(y.generated_subgroup().same_as(&sub));
            prop_assert_eq!(y.apply(mv.inverse()).unwrap(), x.clone());
        }
    }

    #[test]
    fn moves_preserve_invariants_s4(x in arb_tuple(s4_transp(), 4, 2)) {
        for mv in all_moves(&x) {
            let y = x.apply(mv).unwrap();
            prop_assert_eq!(y.boundary(), x.boundary());
            prop_assert_eq!(y.tuple_type(), x.tuple_type());
            prop_assert_eq!(y.apply(mv.inverse()).unwrap(), x.clone());
        }
    }

    #[test]
    fn product_is_multiplicative(
        x in arb_tuple(s3(&["(1 2)", "(1 2 3)"]), 3, 2),
        y in arb_tuple(s3(&["(1 2)", "(1 2 3)"]), 3, 2),
    ) {
        let z = x.product(&y).unwrap();
        prop_assert_eq!(z.boundary(), x.boundary().compose(&y.boundary()).unwrap());
        prop_assert_eq!(z.genus(), x.genus() + y.genus());
        let tau: Vec<usize> = x.tuple_type().iter().zip(y.tuple_type()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(z.tuple_type(), tau);
    }

    #[test]
    fn index_round_trip(x in arb_tuple(s4_transp(), 4, 2)) {
        let idx = x.to_indices();
        prop_assert_eq!(CoveringTuple::from_indices(x.equipment().clone(), x.len(), &idx), x);
    }
}

/// Each move is a permutation of the finite tuple space, so applying a move
/// repeatedly cycles back; the closed-form inverse must equal the cycle predecessor.
#[test]
fn inverse_is_cycle_predecessor() {
    let e = s3(&["(1 2)", "(1 2 3)"]);
    let x = t(&e, "[(1 2),(1 2 3),(1 3) | (1 2 3),(1 2)]");
    for mv in all_moves(&x) {
        let mut cycle = vec![x.clone()];
        loop {
            let next = cycle.last().unwrap().apply(mv).unwrap();
            if next == x {
                break;
            }
            cycle.push(next);
            assert!(cycle.len() < 100_000);
        }
        let pred = cycle.last().unwrap();
        assert_eq!(&x.apply(mv.inverse()).unwrap(), pred, "{mv}");
    }
}
