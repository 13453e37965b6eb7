//! Reduced-form elements of the strong covering semigroup and the braid
//! moves acting on them.

mod moves;
mod normalize;
mod packed;

use std::fmt;
use std::sync::Arc;

pub use moves::{apply_move, boundary, conjugate_all, transport, Dir, Move, MoveError, MoveSet};
pub use normalize::{Normalized, DEFAULT_NORMALIZE_BUDGET};
pub use packed::PackedCodec;

use crate::equipped::{EquipError, EquippedGroup};
use crate::perm::{PermError, PermGroup, Permutation, SymmetricOps};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TupleError {
    #[error("branch letter {0} is not in O")]
    NotInO(String),
    #[error("{0} is not in the group")]
    NotInGroup(String),
    #[error("tuples live over different equipped groups")]
    EquipmentMismatch,
    #[error("malformed tuple literal {0:?}")]
    Literal(String),
    #[error("handles not trivialized after exploring {explored} states")]
    NotReducible { explored: u64 },
    #[error("tuple too long to encode ({0} entries)")]
    TooLong(usize),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Equip(#[from] EquipError),
}

/// `(g_1, ..., g_n ; (a_1, b_1), ..., (a_p, b_p))` with `g_i` in `O` and
/// `a_j, b_j` in `G`: branch letters first, handle pairs after.
#[derive(Clone)]
pub struct CoveringTuple {
    equipment: Arc<EquippedGroup>,
    branch: Vec<Permutation>,
    handles: Vec<(Permutation, Permutation)>,
}

impl PartialEq for CoveringTuple {
    fn eq(&self, other: &Self) -> bool {
        self.branch == other.branch && self.handles == other.handles && same_equipment(&self.equipment, &other.equipment)
    }
}

impl Eq for CoveringTuple {}

pub(crate) fn same_equipment(a: &Arc<EquippedGroup>, b: &Arc<EquippedGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.group().same_as(b.group()) && a.classes() == b.classes())
}

impl CoveringTuple {
    pub fn new(
        equipment: Arc<EquippedGroup>,
        branch: Vec<Permutation>,
        handles: Vec<(Permutation, Permutation)>,
    ) -> Result<Self, TupleError> {
        for g in &branch {
            if equipment.o_index(g).is_none() {
                return Err(TupleError::NotInO(g.to_string()));
            }
        }
        for (a, b) in &handles {
            for x in [a, b] {
                if !equipment.group().contains(x) {
                    return Err(TupleError::NotInGroup(x.to_string()));
                }
            }
        }
        Ok(Self {
            equipment,
            branch,
            handles,
        })
    }

    /// Unit of the semigroup.
    pub fn empty(equipment: Arc<EquippedGroup>) -> Self {
        Self {
            equipment,
            branch: Vec::new(),
            handles: Vec::new(),
        }
    }

    /// Parses `[g1,g2,... | a1,b1; a2,b2; ...]`.
    pub fn parse(equipment: Arc<EquippedGroup>, text: &str) -> Result<Self, TupleError> {
        let bad = || TupleError::Literal(text.to_string());
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (branch_part, handle_part) = match split_top(inner, '|') {
            parts if parts.len() == 1 => (parts[0], ""),
            parts if parts.len() == 2 => (parts[0], parts[1]),
            _ => return Err(bad()),
        };
        let degree = equipment.degree();
        let parse_perm = |s: &str| -> Result<Permutation, TupleError> {
            Permutation::parse(s.trim(), degree).map_err(TupleError::from)
        };
        let mut branch = Vec::new();
        if !branch_part.trim().is_empty() {
            for tok in split_top(branch_part, ',') {
                branch.push(parse_perm(tok)?);
            }
        }
        let mut handles = Vec::new();
        if !handle_part.trim().is_empty() {
            for pair in split_top(handle_part, ';') {
                let ab = split_top(pair, ',');
                if ab.len() != 2 {
                    return Err(bad());
                }
                handles.push((parse_perm(ab[0])?, parse_perm(ab[1])?));
            }
        }
        Self::new(equipment, branch, handles)
    }

    pub fn equipment(&self) -> &Arc<EquippedGroup> {
        &self.equipment
    }

    pub fn branch(&self) -> &[Permutation] {
        &self.branch
    }

    pub fn handles(&self) -> &[(Permutation, Permutation)] {
        &self.handles
    }

    /// Number of branch letters `n`.
    pub fn len(&self) -> usize {
        self.branch.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branch.is_empty() && self.handles.is_empty()
    }

    /// Number of handle pairs `p`.
    pub fn genus(&self) -> usize {
        self.handles.len()
    }

    fn ops(&self) -> SymmetricOps {
        SymmetricOps {
            degree: self.equipment.degree(),
        }
    }

    /// `g_1...g_n [a_1,b_1]...[a_p,b_p]`
    pub fn boundary(&self) -> Permutation {
        boundary(&self.ops(), &self.branch, &self.handles)
    }

    /// Count of branch letters per class.
    pub fn tuple_type(&self) -> Vec<usize> {
        let mut tau = vec![0; self.equipment.num_classes()];
        for g in &self.branch {
            tau[self.equipment.class_index(g).expect("validated on construction")] += 1;
        }
        tau
    }

    /// Subgroup generated by all branch letters and handle entries.
    pub fn generated_subgroup(&self) -> PermGroup {
        let gens: Vec<Permutation> = self
            .branch
            .iter()
            .cloned()
            .chain(self.handles.iter().flat_map(|(a, b)| [a.clone(), b.clone()]))
            .collect();
        if gens.is_empty() {
            return PermGroup::trivial(self.equipment.degree());
        }
        self.equipment.group().subgroup(&gens).expect("entries lie in G")
    }

    pub fn apply(&self, mv: Move) -> Result<Self, TupleError> {
        let mut out = self.clone();
        apply_move(&self.ops(), &mut out.branch, &mut out.handles, mv)?;
        Ok(out)
    }

    /// Applies a sequence of moves in order.
    pub fn apply_all(&self, moves: &[Move]) -> Result<Self, TupleError> {
        let mut out = self.clone();
        let ops = self.ops();
        for &mv in moves {
            apply_move(&ops, &mut out.branch, &mut out.handles, mv)?;
        }
        Ok(out)
    }

    /// Hurwitz move on letters `i, i+1` (1-based `i`).
    pub fn h_move(&self, i: usize, dir: Dir) -> Result<Self, TupleError> {
        self.apply(Move::H { i: zero_based(i), dir })
    }

    /// Handle move of the last branch letter with handle `j` (1-based), first kind.
    pub fn lambda_move(&self, j: usize, dir: Dir) -> Result<Self, TupleError> {
        self.apply(Move::Lambda { j: zero_based(j), dir })
    }

    /// Handle move of the last branch letter with handle `j` (1-based), second kind.
    pub fn mu_move(&self, j: usize, dir: Dir) -> Result<Self, TupleError> {
        self.apply(Move::Mu { j: zero_based(j), dir })
    }

    /// Braiding of the last branch letter around handle `j` (1-based).
    pub fn zeta_move(&self, j: usize, dir: Dir) -> Result<Self, TupleError> {
        self.apply(Move::Zeta { j: zero_based(j), dir })
    }

    /// Simultaneous conjugation `x -> h^-1 x h` of every entry.
    pub fn conjugate(&self, h: &Permutation) -> Result<Self, TupleError> {
        if !self.equipment.group().contains(h) {
            return Err(TupleError::NotInGroup(h.to_string()));
        }
        let mut out = self.clone();
        conjugate_all(&self.ops(), &mut out.branch, &mut out.handles, h);
        Ok(out)
    }

    /// Semigroup product, brought back to reduced form: the branch letters of
    /// `other` are moved in front of this tuple's handles.
    pub fn product(&self, other: &Self) -> Result<Self, TupleError> {
        if !same_equipment(&self.equipment, &other.equipment) {
            return Err(TupleError::EquipmentMismatch);
        }
        let ops = self.ops();
        let u = transport(&ops, &self.handles, self.handles.len());
        let u_inv = u.inverse();
        let mut branch = self.branch.clone();
        branch.extend(other.branch.iter().map(|g| g.conj_unchecked(&u_inv)));
        let mut handles = self.handles.clone();
        handles.extend(other.handles.iter().cloned());
        Ok(Self {
            equipment: Arc::clone(&self.equipment),
            branch,
            handles,
        })
    }

    /// Element-table indices: branch letters, then `a_1, b_1, ..., a_p, b_p`.
    pub fn to_indices(&self) -> Vec<u32> {
        let t = self.equipment.table();
        self.branch
            .iter()
            .chain(self.handles.iter().flat_map(|(a, b)| [a, b]))
            .map(|g| t.index_of(g).expect("entries lie in G"))
            .collect()
    }

    /// Inverse of [`to_indices`](Self::to_indices) for a given branch length.
    pub fn from_indices(equipment: Arc<EquippedGroup>, n: usize, entries: &[u32]) -> Self {
        let t = equipment.table();
        let branch = entries[..n].iter().map(|&i| t.element(i).clone()).collect();
        let handles = entries[n..]
            .chunks(2)
            .map(|c| (t.element(c[0]).clone(), t.element(c[1]).clone()))
            .collect();
        Self {
            equipment,
            branch,
            handles,
        }
    }
}

/// 1-based public index to 0-based; 0 maps out of range and is rejected by `apply`.
fn zero_based(i: usize) -> usize {
    i.wrapping_sub(1)
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for CoveringTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.branch.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        if !self.handles.is_empty() {
            if !self.branch.is_empty() {
                write!(f, " ")?;
            }
            write!(f, "| ")?;
            for (i, (a, b)) in self.handles.iter().enumerate() {
                if i > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "{a},{b}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CoveringTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests;
