//! Orbit-level identities of the tuple semigroup, one instance at a time.

use crate::orbits::{orbit_equal, OrbitError, OrbitVerdict};
use crate::perm::Permutation;
use crate::tuples::{CoveringTuple, TupleError};

#[derive(Debug, thiserror::Error)]
pub enum LawError {
    #[error("precondition fails: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Tuple(#[from] TupleError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// `t1 . t2 ~ t2 . t1^(boundary t2)`.
pub fn slide(t1: &CoveringTuple, t2: &CoveringTuple, budget: u64) -> Result<OrbitVerdict, LawError> {
    let lhs = t1.product(t2)?;
    let rhs = t2.product(&t1.conjugate(&t2.boundary())?)?;
    Ok(orbit_equal(&lhs, &rhs, budget)?)
}

/// Same as [`slide`] with the inverse boundary as conjugator.
pub fn slide_inverse(t1: &CoveringTuple, t2: &CoveringTuple, budget: u64) -> Result<OrbitVerdict, LawError> {
    let lhs = t1.product(t2)?;
    let rhs = t2.product(&t1.conjugate(&t2.boundary().inverse())?)?;
    Ok(orbit_equal(&lhs, &rhs, budget)?)
}

/// A tuple with trivial boundary commutes with everything.
pub fn central(t1: &CoveringTuple, t2: &CoveringTuple, budget: u64) -> Result<OrbitVerdict, LawError> {
    if !t1.boundary().is_identity() {
        return Err(LawError::Precondition("boundary(t1) = e"));
    }
    Ok(orbit_equal(&t1.product(t2)?, &t2.product(t1)?, budget)?)
}

/// A full-group tuple with trivial boundary is fixed by conjugation.
pub fn conjugation_fixed(t: &CoveringTuple, h: &Permutation, budget: u64) -> Result<OrbitVerdict, LawError> {
    if !t.boundary().is_identity() || !t.generated_subgroup().same_as(t.equipment().group()) {
        return Err(LawError::Precondition("boundary(t) = e and G_t = G"));
    }
    Ok(orbit_equal(t, &t.conjugate(h)?, budget)?)
}

/// `x_{g1}^k . s ~ x_{g2}^k . s` for `g1`, `g2` in one class with `g^k`
/// central, when `s` generates `G`.
pub fn power_exchange(
    g1: &Permutation,
    g2: &Permutation,
    k: usize,
    s: &CoveringTuple,
    budget: u64,
) -> Result<OrbitVerdict, LawError> {
    let e = s.equipment();
    if !s.generated_subgroup().same_as(e.group()) {
        return Err(LawError::Precondition("G_s = G"));
    }
    match (e.class_index(g1), e.class_index(g2)) {
        (Ok(a), Ok(b)) if a == b => {}
        _ => return Err(LawError::Precondition("g1, g2 in one class of O")),
    }
    let power = |g: &Permutation| CoveringTuple::new(e.clone(), vec![g.clone(); k], vec![]);
    let lhs = power(g1)?.product(s)?;
    let rhs = power(g2)?.product(s)?;
    Ok(orbit_equal(&lhs, &rhs, budget)?)
}
