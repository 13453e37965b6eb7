//! Braid moves on reduced tuples, written against [`GroupOps`].
//!
//! A reduced tuple is `(g_1..g_n ; (a_1,b_1)..(a_p,b_p))`. Handle moves act on
//! the last branch letter after transporting it past the handles in front of
//! the target handle; the transport conjugator is `u_j = [a_1,b_1]...[a_j,b_j]`.

use std::fmt;

use crate::perm::GroupOps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn reversed(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }

    /// `+1` or `-1`.
    pub fn from_sign(sign: i32) -> Option<Dir> {
        match sign {
            1 => Some(Dir::Forward),
            -1 => Some(Dir::Backward),
            _ => None,
        }
    }
}

/// One elementary move. Indices are 0-based: `H { i }` acts on branch
/// letters `i, i+1`; the handle moves act on handle `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    H { i: usize, dir: Dir },
    Lambda { j: usize, dir: Dir },
    Mu { j: usize, dir: Dir },
    Zeta { j: usize, dir: Dir },
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::H { i, dir } => Move::H { i, dir: dir.reversed() },
            Move::Lambda { j, dir } => Move::Lambda { j, dir: dir.reversed() },
            Move::Mu { j, dir } => Move::Mu { j, dir: dir.reversed() },
            Move::Zeta { j, dir } => Move::Zeta { j, dir: dir.reversed() },
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, idx, dir) = match *self {
            Move::H { i, dir } => ("H", i, dir),
            Move::Lambda { j, dir } => ("L", j, dir),
            Move::Mu { j, dir } => ("M", j, dir),
            Move::Zeta { j, dir } => ("Z", j, dir),
        };
        let sign = if dir == Dir::Forward { '+' } else { '-' };
        write!(f, "{name}{}{sign}", idx.wrapping_add(1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("move {mv} out of range for a tuple with {n} branch letters and genus {p}")]
    OutOfRange { mv: Move, n: usize, p: usize },
    #[error("handle move {0} needs at least one branch letter")]
    NoBranchLetter(Move),
}

/// Which handle moves a move set contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
pub struct MoveSet {
    /// Include the redundant zeta moves.
    pub zeta: bool,
}

impl MoveSet {
    pub const STANDARD: MoveSet = MoveSet { zeta: false };
    pub const WITH_ZETA: MoveSet = MoveSet { zeta: true };

    /// Every move (both directions) applicable to a tuple of shape `(n, p)`.
    pub fn moves(self, n: usize, p: usize) -> Vec<Move> {
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            out.push(Move::H { i, dir: Dir::Forward });
            out.push(Move::H { i, dir: Dir::Backward });
        }
        if n > 0 {
            for j in 0..p {
                for dir in [Dir::Forward, Dir::Backward] {
                    out.push(Move::Lambda { j, dir });
                    out.push(Move::Mu { j, dir });
                    if self.zeta {
                        out.push(Move::Zeta { j, dir });
                    }
                }
            }
        }
        out
    }
}

/// `u_j = [a_1,b_1]...[a_j,b_j]` over the first `j` handles.
pub fn transport<G: GroupOps>(ops: &G, handles: &[(G::Elem, G::Elem)], j: usize) -> G::Elem {
    handles[..j]
        .iter()
        .fold(ops.identity(), |acc, (a, b)| ops.mul(&acc, &ops.comm(a, b)))
}

/// Total monodromy `g_1...g_n [a_1,b_1]...[a_p,b_p]`.
pub fn boundary<G: GroupOps>(ops: &G, branch: &[G::Elem], handles: &[(G::Elem, G::Elem)]) -> G::Elem {
    let prefix = branch.iter().fold(ops.identity(), |acc, g| ops.mul(&acc, g));
    ops.mul(&prefix, &transport(ops, handles, handles.len()))
}

/// Applies `mv` in place.
pub fn apply_move<G: GroupOps>(
    ops: &G,
    branch: &mut [G::Elem],
    handles: &mut [(G::Elem, G::Elem)],
    mv: Move,
) -> Result<(), MoveError> {
    let n = branch.len();
    let p = handles.len();
    let out_of_range = MoveError::OutOfRange { mv, n, p };
    match mv {
        Move::H { i, dir } => {
            if i >= n.saturating_sub(1) {
                return Err(out_of_range);
            }
            let x = branch[i].clone();
            let y = branch[i + 1].clone();
            match dir {
                Dir::Forward => {
                    branch[i + 1] = ops.conj(&x, &y);
                    branch[i] = y;
                }
                Dir::Backward => {
                    branch[i] = ops.conj(&y, &ops.inv(&x));
                    branch[i + 1] = x;
                }
            }
        }
        Move::Lambda { j, dir } | Move::Mu { j, dir } | Move::Zeta { j, dir } => {
            if j >= p {
                return Err(out_of_range);
            }
            if n == 0 {
                return Err(MoveError::NoBranchLetter(mv));
            }
            let u = transport(ops, handles, j);
            let u_inv = ops.inv(&u);
            let g = branch[n - 1].clone();
            let (a, b) = handles[j].clone();
            let (g_new, a_new, b_new) = match (mv, dir) {
                (Move::Lambda { .. }, Dir::Forward) => {
                    let h = ops.conj(&g, &u);
                    // c1 = a b^-1 a^-1 h^-1
                    let c1 = ops.mul(
                        &ops.mul(&ops.mul(&a, &ops.inv(&b)), &ops.inv(&a)),
                        &ops.inv(&h),
                    );
                    let h2 = ops.conj(&h, &c1);
                    let a2 = ops.mul(&h, &a);
                    (ops.conj(&h2, &u_inv), a2, b)
                }
                (Move::Lambda { .. }, Dir::Backward) => {
                    let h2 = ops.conj(&g, &u);
                    let k = ops.mul(&ops.mul(&a, &b), &ops.inv(&a));
                    let h = ops.conj(&h2, &k);
                    let a0 = ops.mul(&ops.inv(&h), &a);
                    (ops.conj(&h, &u_inv), a0, b)
                }
                (Move::Mu { .. }, Dir::Forward) => {
                    let big_u = ops.mul(&u, &ops.comm(&a, &b));
                    let h = ops.conj(&g, &big_u);
                    let b2 = ops.mul(&ops.inv(&h), &b);
                    // c2 = b a^-1 b^-1 h
                    let c2 = ops.mul(&ops.mul(&ops.mul(&b, &ops.inv(&a)), &ops.inv(&b)), &h);
                    let h2 = ops.conj(&h, &c2);
                    let big_u2 = ops.mul(&u, &ops.comm(&a, &b2));
                    (ops.conj(&h2, &ops.inv(&big_u2)), a, b2)
                }
                (Move::Mu { .. }, Dir::Backward) => {
                    let big_u2 = ops.mul(&u, &ops.comm(&a, &b));
                    let h2 = ops.conj(&g, &big_u2);
                    let m = ops.mul(&ops.mul(&b, &a), &ops.inv(&b));
                    let h = ops.conj(&h2, &m);
                    let b0 = ops.mul(&h, &b);
                    let big_u = ops.mul(&u, &ops.comm(&a, &b0));
                    (ops.conj(&h, &ops.inv(&big_u)), a, b0)
                }
                (Move::Zeta { .. }, Dir::Forward) => {
                    let h = ops.conj(&g, &u);
                    let c = ops.comm(&a, &b);
                    let h2 = ops.conj(&h, &c);
                    let a2 = ops.conj(&a, &h2);
                    let b2 = ops.conj(&b, &h2);
                    (ops.conj(&h2, &u_inv), a2, b2)
                }
                (Move::Zeta { .. }, Dir::Backward) => {
                    let h2 = ops.conj(&g, &u);
                    let h2_inv = ops.inv(&h2);
                    let a0 = ops.conj(&a, &h2_inv);
                    let b0 = ops.conj(&b, &h2_inv);
                    let c = ops.comm(&a0, &b0);
                    let h = ops.conj(&h2, &ops.inv(&c));
                    (ops.conj(&h, &u_inv), a0, b0)
                }
                (Move::H { .. }, _) => unreachable!(),
            };
            branch[n - 1] = g_new;
            handles[j] = (a_new, b_new);
        }
    }
    Ok(())
}

/// Conjugates every entry by `h` (`x -> h^-1 x h`).
pub fn conjugate_all<G: GroupOps>(
    ops: &G,
    branch: &mut [G::Elem],
    handles: &mut [(G::Elem, G::Elem)],
    h: &G::Elem,
) {
    for g in branch.iter_mut() {
        *g = ops.conj(g, h);
    }
    for (a, b) in handles.iter_mut() {
        *a = ops.conj(a, h);
        *b = ops.conj(b, h);
    }
}
