//! Permutations, finite permutation groups and indexed element tables.
//!
//! Convention: points act on the right, so `x^(g*h) = (x^g)^h`, and
//! conjugation is `g^h = h^-1 * g * h`. Commutators are `[a, b] = a*b*a^-1*b^-1`.

mod group;
mod permutation;
mod table;

pub use group::{PermGroup, DEFAULT_ORDER_BOUND};
pub use permutation::Permutation;
pub use table::{ElementTable, GroupOps, SymmetricOps};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image array is not a bijection")]
    NotBijection,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(u32),
    #[error("malformed cycle notation {0:?}")]
    Malformed(String),
    #[error("no generators given")]
    NoGenerators,
    #[error("group order exceeds bound {0}")]
    OrderBoundExceeded(usize),
    #[error("{0} is not an element of the group")]
    NotInGroup(String),
    #[error("degree {0} too large for an element table (max 16)")]
    DegreeTooLarge(usize),
}
