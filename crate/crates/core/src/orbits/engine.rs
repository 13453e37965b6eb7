use rayon::prelude::*;

use crate::perm::ElementTable;
use crate::tuples::{apply_move, conjugate_all, CoveringTuple, Move, MoveSet, PackedCodec};

use super::enumerate::{enumerate_keys, generates_group};
use super::{OrbitError, OrbitQuery, OrbitReport};

/// Frontiers smaller than this are expanded on the calling thread.
const PAR_THRESHOLD: usize = 4096;

const MAX_ENTRIES: usize = 64;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Step {
    Braid(Move),
    Conj(u32),
}

pub(crate) struct Stepper<'a> {
    pub table: &'a ElementTable,
    pub codec: PackedCodec,
    pub n: usize,
    pub steps: Vec<Step>,
}

impl<'a> Stepper<'a> {
    pub fn for_shape(table: &'a ElementTable, codec: PackedCodec, n: usize, moves: MoveSet) -> Self {
        let p = (codec.len() - n) / 2;
        Self {
            table,
            codec,
            n,
            steps: moves.moves(n, p).into_iter().map(Step::Braid).collect(),
        }
    }

    pub fn new(q: &'a OrbitQuery, codec: PackedCodec) -> Self {
        let table = q.equipment.table();
        let mut steps: Vec<Step> = q.move_set.moves(q.n(), q.genus).into_iter().map(Step::Braid).collect();
        if q.conjugation_quotient {
            for g in q.equipment.group().generators() {
                let s = table.index_of(g).expect("generator in G");
                steps.push(Step::Conj(s));
            }
        }
        Self {
            table,
            codec,
            n: q.n(),
            steps,
        }
    }

    /// Calls `f` with the key of every neighbor of `key`.
    #[inline]
    pub fn for_each_neighbor(&self, key: u64, mut f: impl FnMut(u64)) {
        let len = self.codec.len();
        let p = (len - self.n) / 2;
        let mut entries = [0u32; MAX_ENTRIES];
        self.codec.decode(key, &mut entries[..len]);
        let mut handles = [(0u32, 0u32); MAX_ENTRIES / 2];
        for j in 0..p {
            handles[j] = (entries[self.n + 2 * j], entries[self.n + 2 * j + 1]);
        }
        let mut out = [0u32; MAX_ENTRIES];
        for &step in &self.steps {
            let mut b = [0u32; MAX_ENTRIES];
            b[..self.n].copy_from_slice(&entries[..self.n]);
            let mut h = handles;
            match step {
                Step::Braid(mv) => {
                    apply_move(self.table, &mut b[..self.n], &mut h[..p], mv).expect("move set matches shape");
                }
                Step::Conj(s) => conjugate_all(self.table, &mut b[..self.n], &mut h[..p], &s),
            }
            out[..self.n].copy_from_slice(&b[..self.n]);
            for j in 0..p {
                out[self.n + 2 * j] = h[j].0;
                out[self.n + 2 * j + 1] = h[j].1;
            }
            f(self.codec.encode(&out[..len]));
        }
    }
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    /// Sets bit `i`; returns whether it was clear.
    #[inline]
    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    #[inline]
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1u64 << (i % 64)) != 0
    }
}

fn locate(keys: &[u64], key: u64) -> Result<u32, OrbitError> {
    keys.binary_search(&key)
        .map(|i| i as u32)
        .map_err(|_| OrbitError::Inconsistent(format!("move left the constrained space (key {key:#x})")))
}

fn expand(stepper: &Stepper<'_>, keys: &[u64], frontier: &[u32]) -> Result<Vec<u32>, OrbitError> {
    let one = |&i: &u32| -> Result<Vec<u32>, OrbitError> {
        let mut out = Vec::with_capacity(stepper.steps.len());
        let mut err = None;
        stepper.for_each_neighbor(keys[i as usize], |k| match locate(keys, k) {
            Ok(j) => out.push(j),
            Err(e) => err = Some(e),
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    };
    if frontier.len() < PAR_THRESHOLD {
        let mut out = Vec::new();
        for i in frontier {
            out.extend(one(i)?);
        }
        Ok(out)
    } else {
        let parts: Vec<Vec<u32>> = frontier
            .par_chunks(1024)
            .map(|chunk| {
                let mut out = Vec::new();
                for i in chunk {
                    out.extend(one(i)?);
                }
                Ok(out)
            })
            .collect::<Result<_, OrbitError>>()?;
        Ok(parts.concat())
    }
}

/// Partitions the constrained space into orbits.
///
/// Orbits are grown breadth-first from the smallest unvisited key, which is
/// therefore the orbit's least element; frontiers are expanded in parallel
/// and merged sequentially, so the report does not depend on the thread count.
pub fn orbit_decompose(q: &OrbitQuery) -> Result<OrbitReport, OrbitError> {
    let (codec, keys) = enumerate_keys(q)?;
    let stepper = Stepper::new(q, codec);
    let table = q.equipment.table();
    let n = q.n();
    let mut visited = Bits::new(keys.len());
    let mut entries = vec![0u32; codec.len()];
    let mut sizes = Vec::new();
    let mut reps = Vec::new();
    let mut invariants = Vec::new();
    let mut space = 0u64;
    let invariant_of = |entries: &[u32]| {
        q.quotient.as_ref().map(|quot| {
            let handles: Vec<(u32, u32)> = entries[n..].chunks(2).map(|c| (c[0], c[1])).collect();
            quot.invariant_of_indices(&entries[..n], &handles)
        })
    };
    for seed in 0..keys.len() {
        if visited.contains(seed) {
            continue;
        }
        visited.insert(seed);
        let mut members: Vec<u32> = Vec::new();
        let mut frontier = vec![seed as u32];
        let mut size = 1u64;
        while !frontier.is_empty() {
            let next = expand(&stepper, &keys, &frontier)?;
            if q.check_invariants {
                members.extend_from_slice(&frontier);
            }
            frontier.clear();
            for j in next {
                if visited.insert(j as usize) {
                    frontier.push(j);
                    size += 1;
                }
            }
        }
        codec.decode(keys[seed], &mut entries);
        if q.require_full_group && !generates_group(table, &entries) {
            continue;
        }
        let inv = invariant_of(&entries);
        if q.check_invariants {
            let mut other = vec![0u32; codec.len()];
            for &m in &members {
                codec.decode(keys[m as usize], &mut other);
                if invariant_of(&other) != inv {
                    return Err(OrbitError::Inconsistent(format!(
                        "lifting invariant varies on the orbit of {}",
                        CoveringTuple::from_indices(q.equipment.clone(), n, &entries)
                    )));
                }
            }
        }
        space += size;
        sizes.push(size);
        reps.push(CoveringTuple::from_indices(q.equipment.clone(), n, &entries));
        if let Some(x) = inv {
            invariants.push(x.0);
        }
    }
    Ok(OrbitReport {
        type_vector: q.type_vector.clone(),
        genus: q.genus,
        orbit_count: sizes.len(),
        space_size: space,
        orbit_sizes: sizes,
        representatives: reps,
        lifting_invariants: q.quotient.as_ref().map(|_| invariants),
    })
}
