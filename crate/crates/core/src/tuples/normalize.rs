//! Handle trivialization: find a move-equivalent tuple whose handles are all `(e, e)`.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{apply_move, CoveringTuple, Move, PackedCodec, TupleError};
use crate::perm::{ElementTable, GroupOps};
use crate::tuples::Dir;

pub const DEFAULT_NORMALIZE_BUDGET: u64 = 1_000_000;

/// A tuple with trivial handles together with the move word that reaches it.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub tuple: CoveringTuple,
    /// Applying these moves to the input, in order, yields `tuple`.
    pub moves: Vec<Move>,
    pub explored: u64,
}

struct Search<'a> {
    table: &'a ElementTable,
    codec: PackedCodec,
    n: usize,
    p: usize,
    explored: u64,
    budget: u64,
}

enum Outcome {
    Found(Vec<Move>, Vec<u32>),
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn split(&self, entries: &[u32]) -> (Vec<u32>, Vec<(u32, u32)>) {
        let branch = entries[..self.n].to_vec();
        let handles = entries[self.n..].chunks(2).map(|c| (c[0], c[1])).collect();
        (branch, handles)
    }

    fn join(&self, branch: &[u32], handles: &[(u32, u32)]) -> Vec<u32> {
        let mut out = branch.to_vec();
        out.extend(handles.iter().flat_map(|&(a, b)| [a, b]));
        out
    }

    /// Breadth-first search from `start` for a state whose handle `j` is trivial.
    fn bfs(&mut self, start: &[u32], moves: &[Move], j: usize) -> Outcome {
        let e = self.table.identity_index();
        let goal = |s: &[u32]| s[self.n + 2 * j] == e && s[self.n + 2 * j + 1] == e;
        let start_key = self.codec.encode(start);
        let mut parent: FxHashMap<u64, (u64, Move)> = FxHashMap::default();
        let mut queue = VecDeque::new();
        // self-parent marks the root
        parent.insert(start_key, (start_key, Move::H { i: 0, dir: Dir::Forward }));
        queue.push_back(start_key);
        let mut state = vec![0u32; self.codec.len()];
        while let Some(key) = queue.pop_front() {
            self.explored += 1;
            if self.explored > self.budget {
                return Outcome::OutOfBudget;
            }
            self.codec.decode(key, &mut state);
            if goal(&state) {
                let mut path = Vec::new();
                let mut k = key;
                while k != start_key {
                    let (prev, mv) = parent[&k];
                    path.push(mv);
                    k = prev;
                }
                path.reverse();
                return Outcome::Found(path, state);
            }
            let (branch, handles) = self.split(&state);
            for &mv in moves {
                let mut b = branch.clone();
                let mut h = handles.clone();
                if apply_move(self.table, &mut b, &mut h, mv).is_err() {
                    continue;
                }
                let next = self.codec.encode(&self.join(&b, &h));
                if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(next) {
                    slot.insert((key, mv));
                    queue.push_back(next);
                }
            }
        }
        Outcome::Exhausted
    }

    fn move_set(&self, handles: impl IntoIterator<Item = usize>) -> Vec<Move> {
        let mut out = Vec::new();
        for i in 0..self.n.saturating_sub(1) {
            out.push(Move::H { i, dir: Dir::Forward });
            out.push(Move::H { i, dir: Dir::Backward });
        }
        if self.n > 0 {
            for j in handles {
                for dir in [Dir::Forward, Dir::Backward] {
                    out.push(Move::Lambda { j, dir });
                    out.push(Move::Mu { j, dir });
                }
            }
        }
        out
    }
}

impl CoveringTuple {
    /// Rewrites the tuple by moves until every handle is `(e, e)`.
    ///
    /// Handles are cleared from last to first. For each one a search using
    /// only that handle's moves (plus Hurwitz moves) is tried first; if that
    /// orbit slice holds no solution, the moves of all earlier handles are
    /// allowed too. Success is guaranteed when every class count exceeds
    /// `|C_i| * ord(C_i)` and the tuple generates `G`; failure within `budget`
    /// explored states is reported as [`TupleError::NotReducible`] and is not
    /// a proof that no solution exists.
    pub fn normalize_handles(&self, budget: u64) -> Result<Normalized, TupleError> {
        let table = self.equipment.table();
        let n = self.len();
        let p = self.genus();
        let len = n + 2 * p;
        let codec = PackedCodec::new(table.order(), len).ok_or(TupleError::TooLong(len))?;
        let mut search = Search {
            table,
            codec,
            n,
            p,
            explored: 0,
            budget,
        };
        let e = table.identity_index();
        let mut state = self.to_indices();
        let mut word = Vec::new();
        for j in (0..search.p).rev() {
            if state[n + 2 * j] == e && state[n + 2 * j + 1] == e {
                continue;
            }
            let local = search.move_set([j]);
            let outcome = match search.bfs(&state, &local, j) {
                Outcome::Exhausted if j > 0 => {
                    let wide = search.move_set(0..=j);
                    search.bfs(&state, &wide, j)
                }
                other => other,
            };
            match outcome {
                Outcome::Found(path, reached) => {
                    word.extend(path);
                    state = reached;
                }
                Outcome::Exhausted | Outcome::OutOfBudget => {
                    return Err(TupleError::NotReducible {
                        explored: search.explored,
                    })
                }
            }
        }
        debug_assert!(state[n..].iter().all(|&x| x == table.identity()));
        Ok(Normalized {
            tuple: CoveringTuple::from_indices(self.equipment.clone(), n, &state),
            moves: word,
            explored: search.explored,
        })
    }
}
