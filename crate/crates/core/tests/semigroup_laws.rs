mod common;

use hurwitz::laws::{central, conjugation_fixed, power_exchange, slide, slide_inverse};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BUDGET: u64 = 1_000_000;
const SAMPLES: usize = 100;

#[test]
fn slide_holds_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(11);
    for e in [common::s3_transp(), common::s3_full()] {
        let mut literal = 0;
        for _ in 0..SAMPLES {
            let nt1 = rng.gen_range(1..4);
            let t1 = common::random_tuple(&e, &mut rng, nt1, 0);
            let nt2 = rng.gen_range(1..4);
            let t2 = common::random_tuple(&e, &mut rng, nt2, 0);
            assert!(slide(&t1, &t2, BUDGET).unwrap().is_equal(), "{t1} {t2}");
            literal += slide_inverse(&t1, &t2, BUDGET).unwrap().is_equal() as usize;
        }
        assert!(literal < SAMPLES);
    }
}

#[test]
fn trivial_boundary_is_central() {
    let mut rng = StdRng::seed_from_u64(12);
    let e = common::s3_transp();
    for _ in 0..SAMPLES {
        let n1 = 2 * rng.gen_range(1..3);
        let t1 = common::sample(&e, &mut rng, n1, 0, |t| t.boundary().is_identity());
        let nt2 = rng.gen_range(1..4);
        let t2 = common::random_tuple(&e, &mut rng, nt2, 0);
        assert!(central(&t1, &t2, BUDGET).unwrap().is_equal());
    }
    let bad = common::random_tuple(&e, &mut rng, 1, 0);
    assert!(central(&bad, &bad, BUDGET).is_err());
}

#[test]
fn conjugation_fixes_full_tuples() {
    let mut rng = StdRng::seed_from_u64(13);
    let e = common::s3_full();
    let g = e.group().elements();
    for _ in 0..SAMPLES {
        let n = rng.gen_range(3..7);
        let t = common::sample(&e, &mut rng, n, 0, |t| t.boundary().is_identity() && common::is_full(t));
        let h = &g[rng.gen_range(0..g.len())];
        assert!(conjugation_fixed(&t, h, BUDGET).unwrap().is_equal(), "{t} {h}");
    }
}

#[test]
fn squares_of_transpositions_exchange() {
    let mut rng = StdRng::seed_from_u64(14);
    let e = common::s3_transp();
    let o = e.o_elements();
    for _ in 0..SAMPLES {
        let ns = rng.gen_range(2..5);
        let s = common::sample(&e, &mut rng, ns, 0, common::is_full);
        let g1 = &o[rng.gen_range(0..o.len())];
        let g2 = &o[rng.gen_range(0..o.len())];
        assert!(power_exchange(g1, g2, 2, &s, BUDGET).unwrap().is_equal(), "{g1} {g2} {s}");
    }
}
