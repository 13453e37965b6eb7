#![allow(dead_code)]

use std::sync::Arc;

use hurwitz::{CoveringTuple, EquippedGroup, PermGroup, Permutation};
use rand::Rng;

pub fn equip(degree: usize, gens: &[&str], reps: &[&str]) -> Arc<EquippedGroup> {
    let gens: Vec<_> = gens.iter().map(|g| Permutation::parse(g, degree).unwrap()).collect();
    let g = PermGroup::closure(&gens).unwrap();
    let reps: Vec<_> = reps.iter().map(|r| Permutation::parse(r, degree).unwrap()).collect();
    Arc::new(EquippedGroup::build(g, &reps).unwrap())
}

pub fn s3_transp() -> Arc<EquippedGroup> {
    equip(3, &["(1 2)", "(1 2 3)"], &["(1 2)"])
}

pub fn s3_full() -> Arc<EquippedGroup> {
    equip(3, &["(1 2)", "(1 2 3)"], &["(1 2)", "(1 2 3)"])
}

pub fn s4_transp() -> Arc<EquippedGroup> {
    equip(4, &["(1 2)", "(1 2 3 4)"], &["(1 2)"])
}

pub fn random_tuple(e: &Arc<EquippedGroup>, rng: &mut impl Rng, n: usize, p: usize) -> CoveringTuple {
    let o = e.o_elements();
    let g = e.group().elements();
    let branch = (0..n).map(|_| o[rng.gen_range(0..o.len())].clone()).collect();
    let handles = (0..p)
        .map(|_| (g[rng.gen_range(0..g.len())].clone(), g[rng.gen_range(0..g.len())].clone()))
        .collect();
    CoveringTuple::new(e.clone(), branch, handles).unwrap()
}

/// Rejection-samples a tuple satisfying `keep`.
pub fn sample(
    e: &Arc<EquippedGroup>,
    rng: &mut impl Rng,
    n: usize,
    p: usize,
    keep: impl Fn(&CoveringTuple) -> bool,
) -> CoveringTuple {
    loop {
        let t = random_tuple(e, rng, n, p);
        if keep(&t) {
            return t;
        }
    }
}

pub fn is_full(t: &CoveringTuple) -> bool {
    t.generated_subgroup().same_as(t.equipment().group())
}
