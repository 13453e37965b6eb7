//! Braid-move orbits of covering tuples over finite permutation groups.
//!
//! A covering tuple `(g_1..g_n ; (a_1,b_1)..(a_p,b_p))` records the branch
//! monodromies and handle monodromies of a marked ramified covering of a
//! genus-`p` surface. Orbits of tuples under Hurwitz moves and handle moves
//! are the connected components of the corresponding Hurwitz space.
//!
//! - [`perm`]: permutations, permutation groups, indexed element tables.
//! - [`equipped`]: equipped groups `(G, O)` and their C-graphs.
//! - [`tuples`]: reduced covering tuples and the moves on them.
//! - [`orbits`]: orbit decomposition and component counting.
//! - [`fpgroup`]: C-group presentations, coset enumeration, ambiguity index
//!   and the lifting invariant.
//! - [`oracle`]: an independent word-level reference implementation.
//! - [`laws`]: orbit-level semigroup identities.
//! - [`crosscheck`]: engine and oracle side by side.

pub mod crosscheck;
pub mod equipped;
pub mod fpgroup;
pub mod laws;
pub mod oracle;
pub mod orbits;
pub mod perm;
pub mod tuples;

pub use equipped::{CGraph, EquipError, EquippedGroup};
pub use perm::{PermError, PermGroup, Permutation};
pub use tuples::{CoveringTuple, Dir, Move, MoveSet, TupleError};
