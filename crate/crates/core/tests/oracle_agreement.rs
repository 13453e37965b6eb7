mod common;

use hurwitz::crosscheck::{compare_with_oracle, type_vectors};
use hurwitz::oracle::DEFAULT_WORD_BOUND;
use hurwitz::MoveSet;

#[test]
fn type_vector_listing() {
    assert_eq!(type_vectors(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert_eq!(type_vectors(3, 4).len(), 15);
}

#[test]
fn engine_matches_oracle_small_grid() {
    for e in [common::s3_transp(), common::s3_full()] {
        for (n, p) in [(0, 1), (1, 1), (2, 0), (3, 0), (4, 0), (2, 1), (3, 1)] {
            let a = compare_with_oracle(e.clone(), n, p, MoveSet::STANDARD, DEFAULT_WORD_BOUND).unwrap();
            assert!(a.holds(), "n={n} p={p}: {:?}", a);
        }
    }
}

#[test]
fn zeta_does_not_change_the_agreement() {
    let e = common::s3_full();
    let a = compare_with_oracle(e.clone(), 2, 1, MoveSet::STANDARD, DEFAULT_WORD_BOUND).unwrap();
    let b = compare_with_oracle(e, 2, 1, MoveSet::WITH_ZETA, DEFAULT_WORD_BOUND).unwrap();
    assert!(b.holds());
    let counts = |x: &hurwitz::crosscheck::Agreement| x.rows.iter().map(|r| r.engine).collect::<Vec<_>>();
    assert_eq!(counts(&a), counts(&b));
}
