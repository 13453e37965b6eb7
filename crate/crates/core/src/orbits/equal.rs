use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::fpgroup::FiniteQuotient;
use crate::tuples::{same_equipment, CoveringTuple, MoveSet, PackedCodec};

use super::engine::Stepper;
use super::OrbitError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DistinctReason {
    Equipment,
    TypeOrGenus,
    Boundary,
    GeneratedSubgroup,
    LiftingInvariant,
    /// The search closed one of the two orbits without meeting the other.
    OrbitExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitVerdict {
    Equal { explored: u64 },
    Distinct(DistinctReason),
    /// Budget spent with every invariant agreeing.
    Inconclusive { explored: u64 },
}

impl OrbitVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, OrbitVerdict::Equal { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, OrbitVerdict::Distinct(_))
    }
}

/// [`orbit_equal_with`] using the standard moves and no lifting invariant.
pub fn orbit_equal(t1: &CoveringTuple, t2: &CoveringTuple, budget: u64) -> Result<OrbitVerdict, OrbitError> {
    orbit_equal_with(t1, t2, budget, MoveSet::STANDARD, None)
}

struct Side {
    seen: FxHashSet<u64>,
    frontier: Vec<u64>,
}

/// Bidirectional breadth-first search between two tuples. Cheap invariants are
/// compared first; `budget` caps the number of states stored on both sides.
pub fn orbit_equal_with(
    t1: &CoveringTuple,
    t2: &CoveringTuple,
    budget: u64,
    moves: MoveSet,
    quotient: Option<&FiniteQuotient>,
) -> Result<OrbitVerdict, OrbitError> {
    use DistinctReason::*;
    if !same_equipment(t1.equipment(), t2.equipment()) {
        return Ok(OrbitVerdict::Distinct(Equipment));
    }
    if t1.len() != t2.len() || t1.genus() != t2.genus() || t1.tuple_type() != t2.tuple_type() {
        return Ok(OrbitVerdict::Distinct(TypeOrGenus));
    }
    if t1.boundary() != t2.boundary() {
        return Ok(OrbitVerdict::Distinct(Boundary));
    }
    if let Some(q) = quotient {
        if q.lifting_invariant(t1)? != q.lifting_invariant(t2)? {
            return Ok(OrbitVerdict::Distinct(LiftingInvariant));
        }
    }
    if !t1.generated_subgroup().same_as(&t2.generated_subgroup()) {
        return Ok(OrbitVerdict::Distinct(GeneratedSubgroup));
    }
    let e = t1.equipment();
    let table = e.table();
    let len = t1.len() + 2 * t1.genus();
    let codec = PackedCodec::new(table.order(), len).ok_or(OrbitError::KeyTooWide {
        entries: len,
        bits: usize::BITS - (table.order().max(2) - 1).leading_zeros(),
    })?;
    let stepper = Stepper::for_shape(table, codec, t1.len(), moves);
    let k1 = codec.encode(&t1.to_indices());
    let k2 = codec.encode(&t2.to_indices());
    if k1 == k2 {
        return Ok(OrbitVerdict::Equal { explored: 1 });
    }
    let mut sides = [
        Side {
            seen: FxHashSet::from_iter([k1]),
            frontier: vec![k1],
        },
        Side {
            seen: FxHashSet::from_iter([k2]),
            frontier: vec![k2],
        },
    ];
    loop {
        let explored = (sides[0].seen.len() + sides[1].seen.len()) as u64;
        if explored > budget {
            return Ok(OrbitVerdict::Inconclusive { explored });
        }
        let s = if sides[0].frontier.len() <= sides[1].frontier.len() { 0 } else { 1 };
        let (this, other) = if s == 0 {
            let (a, b) = sides.split_at_mut(1);
            (&mut a[0], &b[0])
        } else {
            let (a, b) = sides.split_at_mut(1);
            (&mut b[0], &a[0])
        };
        let mut next = Vec::new();
        let mut met = false;
        for &key in &this.frontier {
            stepper.for_each_neighbor(key, |k| {
                if other.seen.contains(&k) {
                    met = true;
                }
                if this.seen.insert(k) {
                    next.push(k);
                }
            });
            if met {
                let explored = (this.seen.len() + other.seen.len()) as u64;
                return Ok(OrbitVerdict::Equal { explored });
            }
        }
        if next.is_empty() {
            return Ok(OrbitVerdict::Distinct(OrbitExhausted));
        }
        this.frontier = next;
    }
}
