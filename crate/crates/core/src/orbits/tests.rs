use std::sync::Arc;

use super::*;
use crate::fpgroup::FiniteQuotient;
use crate::perm::PermGroup;
use crate::tuples::Dir;

fn equip(degree: usize, reps: &[&str]) -> Arc<EquippedGroup> {
    let g = PermGroup::symmetric(degree).unwrap();
    let reps: Vec<_> = reps.iter().map(|r| Permutation::parse(r, degree).unwrap()).collect();
    Arc::new(EquippedGroup::build(g, &reps).unwrap())
}

fn s3t() -> Arc<EquippedGroup> {
    equip(3, &["(1 2)"])
}

fn e3() -> Permutation {
    Permutation::identity(3)
}

#[test]
fn enumeration_examples() {
    let q = OrbitQuery::new(s3t(), vec![2], 0);
    assert_eq!(enumerate_tuples(&q).unwrap().count(), 9);
    let q = q.with_boundary(BoundaryConstraint::Equals(e3()));
    let all: Vec<_> = enumerate_tuples(&q).unwrap().collect();
    assert_eq!(all.len(), 3);
    assert!(all.iter().all(|t| t.branch()[0] == t.branch()[1]));
    let q = q.full_group(true);
    assert_eq!(enumerate_tuples(&q).unwrap().count(), 0);
}

#[test]
fn enumeration_is_lexicographic_and_unique() {
    let e = equip(3, &["(1 2)", "(1 2 3)"]);
    let q = OrbitQuery::new(e.clone(), vec![1, 2], 1).with_boundary(BoundaryConstraint::Equals(e3()));
    let ts: Vec<_> = enumerate_tuples(&q).unwrap().collect();
    let keys: Vec<Vec<u32>> = ts.iter().map(|t| t.to_indices()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    // brute force over all (3 positions) x G^2
    let mut brute = 0;
    for t in enumerate_tuples(&OrbitQuery::new(e, vec![1, 2], 1)).unwrap() {
        if t.boundary().is_identity() {
            brute += 1;
        }
    }
    assert_eq!(ts.len(), brute);
}

#[test]
fn decomposition_examples() {
    let r = orbit_decompose(&OrbitQuery::new(s3t(), vec![2], 0)).unwrap();
    assert_eq!(r.orbit_count, 5);
    let mut sizes = r.orbit_sizes.clone();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 1, 3, 3]);
    assert_eq!(r.space_size, 9);
    let r = orbit_decompose(&OrbitQuery::new(s3t(), vec![0], 1)).unwrap();
    assert_eq!(r.orbit_count, 36);
    assert!(r.orbit_sizes.iter().all(|&s| s == 1));
    let r = orbit_decompose(&OrbitQuery::hurwitz(s3t(), vec![4], 0)).unwrap();
    assert_eq!(r.orbit_count, 1);
}

#[test]
fn representatives_are_minimal_and_sorted() {
    let e = s3t();
    let r = orbit_decompose(&OrbitQuery::new(e.clone(), vec![3], 0)).unwrap();
    let reps: Vec<Vec<u32>> = r.representatives.iter().map(|t| t.to_indices()).collect();
    assert!(reps.windows(2).all(|w| w[0] < w[1]));
    for (t, &size) in r.representatives.iter().zip(&r.orbit_sizes) {
        // every H-neighbour chain from the representative stays at or above it
        let mut seen = vec![t.clone()];
        let mut k = 0;
        while k < seen.len() {
            let x = seen[k].clone();
            k += 1;
            for mv in MoveSet::STANDARD.moves(3, 0) {
                let y = x.apply(mv).unwrap();
                if !seen.contains(&y) {
                    assert!(y.to_indices() > t.to_indices());
                    seen.push(y);
                }
            }
        }
        assert_eq!(seen.len() as u64, size);
    }
}

#[test]
fn count_components_examples() {
    assert_eq!(count_components(s3t(), vec![4], 0).unwrap(), 1);
    assert_eq!(count_components(s3t(), vec![3], 0).unwrap(), 0);
    assert_eq!(count_components(s3t(), vec![2], 0).unwrap(), 0);
    assert_eq!(count_components(s3t(), vec![6], 0).unwrap(), 1);
}

#[test]
fn zeta_moves_change_nothing() {
    let base = OrbitQuery::new(s3t(), vec![4], 1);
    let a = orbit_decompose(&base).unwrap();
    let b = orbit_decompose(&base.clone().moves(MoveSet::WITH_ZETA)).unwrap();
    assert_eq!(a.orbit_sizes, b.orbit_sizes);
    assert_eq!(a.representatives, b.representatives);
}

#[test]
fn deterministic_across_thread_counts() {
    let e = equip(3, &["(1 2)", "(1 2 3)"]);
    let q = OrbitQuery::new(e, vec![4, 2], 1).with_boundary(BoundaryConstraint::Equals(e3()));
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let r = pool.install(|| orbit_decompose(&q)).unwrap();
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn conjugation_quotient() {
    let e = s3t();
    let plain = OrbitQuery::new(e.clone(), vec![3], 0);
    let a = orbit_decompose(&plain).unwrap();
    let b = orbit_decompose(&plain.clone().quotient_by_conjugation(true)).unwrap();
    assert!(b.orbit_count <= a.orbit_count);
    for n in [4, 6] {
        let h = OrbitQuery::hurwitz(e.clone(), vec![n], 0);
        let a = orbit_decompose(&h).unwrap();
        let b = orbit_decompose(&h.clone().quotient_by_conjugation(true)).unwrap();
        assert_eq!(a.orbit_count, b.orbit_count);
    }
    let bad = OrbitQuery::new(e, vec![2], 0)
        .with_boundary(BoundaryConstraint::Equals(Permutation::parse("(1 2 3)", 3).unwrap()))
        .quotient_by_conjugation(true);
    assert!(matches!(orbit_decompose(&bad), Err(OrbitError::NonCentralBoundary(_))));
}

#[test]
fn lifting_invariant_constant_on_orbits() {
    let e = equip(3, &["(1 2)", "(1 2 3)"]);
    let quot = Arc::new(FiniteQuotient::build(e.clone()).unwrap());
    let q = OrbitQuery::new(e, vec![2, 1], 1).with_lifting(quot).checked(true);
    let r = orbit_decompose(&q).unwrap();
    assert_eq!(r.lifting_invariants.as_ref().unwrap().len(), r.orbit_count);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["orbit_count"], r.orbit_count);
    assert!(json["representatives"][0].as_str().unwrap().starts_with('['));
}

#[test]
fn validation_errors() {
    let e = s3t();
    assert!(matches!(
        orbit_decompose(&OrbitQuery::new(e.clone(), vec![1, 1], 0)),
        Err(OrbitError::TypeLength { expected: 1, got: 2 })
    ));
    assert!(matches!(
        orbit_decompose(&OrbitQuery::new(e.clone(), vec![6], 0).bound(100)),
        Err(OrbitError::SpaceBound { bound: 100 })
    ));
    assert!(matches!(
        orbit_decompose(&OrbitQuery::new(e.clone(), vec![30], 0)),
        Err(OrbitError::KeyTooWide { .. })
    ));
    let wrong = OrbitQuery::new(e, vec![2], 0).with_boundary(BoundaryConstraint::Equals(Permutation::identity(4)));
    assert!(matches!(orbit_decompose(&wrong), Err(OrbitError::BoundaryNotInGroup(_))));
}

#[test]
fn orbit_equal_examples() {
    let e = s3t();
    let t = CoveringTuple::parse(e.clone(), "[(1 2),(2 3),(1 3),(1 2)]").unwrap();
    let u = t.h_move(1, Dir::Forward).unwrap();
    assert!(orbit_equal(&t, &u, 1000).unwrap().is_equal());
    let v = CoveringTuple::parse(e.clone(), "[(1 2),(1 2),(1 3),(1 2)]").unwrap();
    assert_eq!(orbit_equal(&t, &v, 1000).unwrap(), OrbitVerdict::Distinct(DistinctReason::Boundary));
    // fixed pairs with the same boundary but different generated subgroups
    let a = CoveringTuple::parse(e.clone(), "[(1 2),(1 2)]").unwrap();
    let b = CoveringTuple::parse(e.clone(), "[(1 3),(1 3)]").unwrap();
    assert_eq!(
        orbit_equal(&a, &b, 1000).unwrap(),
        OrbitVerdict::Distinct(DistinctReason::GeneratedSubgroup)
    );
    let x = CoveringTuple::parse(e.clone(), "[(1 2),(1 3),(1 2),(1 3)]").unwrap();
    let y = x.h_move(2, Dir::Forward).unwrap().h_move(1, Dir::Forward).unwrap();
    assert!(matches!(orbit_equal(&x, &y, 1).unwrap(), OrbitVerdict::Inconclusive { .. }));
    assert!(orbit_equal(&x, &y, 1000).unwrap().is_equal());
}

#[test]
fn orbit_equal_agrees_with_decomposition() {
    let e = equip(3, &["(1 2)", "(1 2 3)"]);
    let q = OrbitQuery::new(e, vec![2, 1], 0);
    let r = orbit_decompose(&q).unwrap();
    let ts: Vec<_> = enumerate_tuples(&q).unwrap().collect();
    let label = |t: &CoveringTuple| {
        r.representatives
            .iter()
            .position(|rep| orbit_equal(rep, t, u64::MAX).unwrap().is_equal())
            .unwrap()
    };
    let mut counts = vec![0u64; r.orbit_count];
    for t in &ts {
        counts[label(t)] += 1;
    }
    assert_eq!(counts, r.orbit_sizes);
    for i in 0..r.orbit_count {
        for j in i + 1..r.orbit_count {
            let v = orbit_equal(&r.representatives[i], &r.representatives[j], u64::MAX).unwrap();
            assert!(v.is_distinct());
        }
    }
}

#[test]
fn scan_examples() {
    let e = s3t();
    let even = stabilization_scan(e.clone(), &[4], &[2], 3, 0, MoveSet::STANDARD, None);
    assert_eq!(even.rows.iter().map(|r| r.components).collect::<Vec<_>>(), vec![1, 1, 1]);
    assert_eq!(even.onset, Some(0));
    assert!(!even.partial);
    let odd = stabilization_scan(e.clone(), &[3], &[2], 3, 0, MoveSet::STANDARD, None);
    assert_eq!(odd.rows.iter().map(|r| r.components).collect::<Vec<_>>(), vec![0, 0, 0]);
    let g1 = stabilization_scan(e.clone(), &[4], &[2], 2, 1, MoveSet::STANDARD, None);
    assert_eq!(g1.rows.iter().map(|r| r.components).collect::<Vec<_>>(), vec![1, 1]);
    let cut = stabilization_scan(e, &[4], &[2], 3, 0, MoveSet::STANDARD, Some(200));
    assert!(cut.partial);
    assert_eq!(cut.rows.len(), 1);
    assert!(cut.error.is_some());
    assert_eq!(cut.csv_records()[0][..3], ["4", "0", "1"]);
}
