//! Orbit decomposition of constrained tuple spaces under the move system:
//! connected components of Hurwitz spaces.

mod engine;
mod enumerate;
mod equal;
mod scan;

use std::sync::Arc;

use serde::Serialize;

pub use engine::orbit_decompose;
pub use enumerate::enumerate_tuples;
pub use equal::{orbit_equal, orbit_equal_with, DistinctReason, OrbitVerdict};
pub use scan::{stabilization_scan, ScanRow, ScanTable};

use crate::equipped::EquippedGroup;
use crate::fpgroup::{FiniteQuotient, FpError};
use crate::perm::Permutation;
use crate::tuples::{CoveringTuple, MoveSet};

/// Largest constrained space a query may enumerate.
pub const DEFAULT_SPACE_BOUND: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("type vector has {got} entries, the equipment has {expected} classes")]
    TypeLength { expected: usize, got: usize },
    #[error("boundary {0} is not in the group")]
    BoundaryNotInGroup(String),
    #[error("conjugation does not preserve the boundary constraint {0} (not central)")]
    NonCentralBoundary(String),
    #[error("{entries} entries of {bits} bits do not fit a 64-bit state key")]
    KeyTooWide { entries: usize, bits: u32 },
    #[error("constrained space exceeds the bound of {bound} tuples")]
    SpaceBound { bound: u64 },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Fp(#[from] FpError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryConstraint {
    Any,
    Equals(Permutation),
}

/// A constrained tuple space and the moves to decompose it under.
#[derive(Debug, Clone)]
pub struct OrbitQuery {
    pub equipment: Arc<EquippedGroup>,
    pub type_vector: Vec<usize>,
    pub genus: usize,
    pub boundary: BoundaryConstraint,
    /// Keep only tuples with `G_t = G`.
    pub require_full_group: bool,
    pub move_set: MoveSet,
    /// Also identify tuples up to simultaneous conjugation.
    pub conjugation_quotient: bool,
    pub space_bound: u64,
    /// Attach a lifting invariant to each representative.
    pub quotient: Option<Arc<FiniteQuotient>>,
    /// Recompute the lifting invariant on every state and fail if it varies
    /// inside an orbit. Needs `quotient`.
    pub check_invariants: bool,
}

impl OrbitQuery {
    /// All tuples of the given type and genus, no constraints, standard moves.
    pub fn new(equipment: Arc<EquippedGroup>, type_vector: Vec<usize>, genus: usize) -> Self {
        Self {
            equipment,
            type_vector,
            genus,
            boundary: BoundaryConstraint::Any,
            require_full_group: false,
            move_set: MoveSet::STANDARD,
            conjugation_quotient: false,
            space_bound: DEFAULT_SPACE_BOUND,
            quotient: None,
            check_invariants: false,
        }
    }

    /// Boundary `e` and `G_t = G`: the tuples of a Hurwitz space.
    pub fn hurwitz(equipment: Arc<EquippedGroup>, type_vector: Vec<usize>, genus: usize) -> Self {
        let e = equipment.group().identity();
        Self {
            boundary: BoundaryConstraint::Equals(e),
            require_full_group: true,
            ..Self::new(equipment, type_vector, genus)
        }
    }

    pub fn with_boundary(mut self, b: BoundaryConstraint) -> Self {
        self.boundary = b;
        self
    }

    pub fn full_group(mut self, yes: bool) -> Self {
        self.require_full_group = yes;
        self
    }

    pub fn moves(mut self, m: MoveSet) -> Self {
        self.move_set = m;
        self
    }

    pub fn quotient_by_conjugation(mut self, yes: bool) -> Self {
        self.conjugation_quotient = yes;
        self
    }

    pub fn bound(mut self, b: u64) -> Self {
        self.space_bound = b;
        self
    }

    pub fn with_lifting(mut self, q: Arc<FiniteQuotient>) -> Self {
        self.quotient = Some(q);
        self
    }

    pub fn checked(mut self, yes: bool) -> Self {
        self.check_invariants = yes;
        self
    }

    pub fn n(&self) -> usize {
        self.type_vector.iter().sum()
    }

    pub(crate) fn validate(&self) -> Result<(), OrbitError> {
        let m = self.equipment.num_classes();
        if self.type_vector.len() != m {
            return Err(OrbitError::TypeLength {
                expected: m,
                got: self.type_vector.len(),
            });
        }
        if let BoundaryConstraint::Equals(b) = &self.boundary {
            let g = self.equipment.group();
            if b.degree() != g.degree() || !g.contains(b) {
                return Err(OrbitError::BoundaryNotInGroup(b.to_string()));
            }
            if self.conjugation_quotient && !g.generators().iter().all(|s| b.conj_unchecked(s) == *b) {
                return Err(OrbitError::NonCentralBoundary(b.to_string()));
            }
        }
        if self.check_invariants && self.quotient.is_none() {
            return Err(OrbitError::Inconsistent("invariant check needs a quotient".into()));
        }
        Ok(())
    }
}

fn literals<S: serde::Serializer>(ts: &[CoveringTuple], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ts.iter().map(|t| t.to_string()))
}

/// Orbits sorted by representative, the lexicographically least tuple of each
/// orbit (by element index in canonical order, branch letters first).
#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub type_vector: Vec<usize>,
    pub genus: usize,
    pub orbit_count: usize,
    /// Number of constrained tuples, the sum of the orbit sizes.
    pub space_size: u64,
    pub orbit_sizes: Vec<u64>,
    #[serde(serialize_with = "literals")]
    pub representatives: Vec<CoveringTuple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lifting_invariants: Option<Vec<u32>>,
}

/// Number of Hurwitz-space components: orbits with boundary `e` and `G_t = G`.
pub fn count_components(equipment: Arc<EquippedGroup>, type_vector: Vec<usize>, genus: usize) -> Result<usize, OrbitError> {
    Ok(orbit_decompose(&OrbitQuery::hurwitz(equipment, type_vector, genus))?.orbit_count)
}

#[cfg(test)]
mod tests;
