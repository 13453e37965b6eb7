use crate::perm::{ElementTable, GroupOps};
use crate::tuples::{CoveringTuple, PackedCodec};

use super::{BoundaryConstraint, OrbitError, OrbitQuery};

pub(crate) fn codec_for(q: &OrbitQuery) -> Result<PackedCodec, OrbitError> {
    let order = q.equipment.table().order();
    let len = q.n() + 2 * q.genus;
    PackedCodec::new(order, len).ok_or(OrbitError::KeyTooWide {
        entries: len,
        bits: usize::BITS - (order.max(2) - 1).leading_zeros(),
    })
}

struct Walker<'a> {
    table: &'a ElementTable,
    class_elems: Vec<Vec<u32>>,
    class_of: Vec<Option<usize>>,
    codec: PackedCodec,
    n: usize,
    p: usize,
    target: Option<u32>,
    remaining: Vec<usize>,
    entries: Vec<u32>,
    out: Vec<u64>,
    bound: u64,
}

impl Walker<'_> {
    fn push(&mut self) -> Result<(), OrbitError> {
        if self.out.len() as u64 >= self.bound {
            return Err(OrbitError::SpaceBound { bound: self.bound });
        }
        self.out.push(self.codec.encode(&self.entries));
        Ok(())
    }

    /// Branch positions; the last one is solved for when the boundary is fixed.
    fn branch(&mut self, pos: usize, prefix: u32) -> Result<(), OrbitError> {
        let last_solved = self.target.is_some() && self.n > 0 && pos == self.n - 1;
        if pos == self.n || last_solved {
            return self.handles(0, prefix, self.table.identity_index());
        }
        for c in 0..self.class_elems.len() {
            if self.remaining[c] == 0 {
                continue;
            }
            self.remaining[c] -= 1;
            for k in 0..self.class_elems[c].len() {
                let g = self.class_elems[c][k];
                self.entries[pos] = g;
                self.branch(pos + 1, self.table.mul(&prefix, &g))?;
            }
            self.remaining[c] += 1;
        }
        Ok(())
    }

    fn handles(&mut self, j: usize, prefix: u32, u: u32) -> Result<(), OrbitError> {
        let t = self.table;
        if j == self.p {
            return self.finish(prefix, u);
        }
        let base = self.n + 2 * j;
        for a in 0..t.order() as u32 {
            for b in 0..t.order() as u32 {
                self.entries[base] = a;
                self.entries[base + 1] = b;
                self.handles(j + 1, prefix, t.mul(&u, &t.comm(&a, &b)))?;
            }
        }
        Ok(())
    }

    fn finish(&mut self, prefix: u32, u: u32) -> Result<(), OrbitError> {
        let t = self.table;
        match self.target {
            None => self.push(),
            Some(target) if self.n == 0 => {
                if u == target {
                    self.push()?;
                }
                Ok(())
            }
            Some(target) => {
                // prefix * x * u = target
                let x = t.mul(&t.mul(&t.inv(&prefix), &target), &t.inv(&u));
                match self.class_of[x as usize] {
                    Some(c) if self.remaining[c] == 1 => {
                        self.entries[self.n - 1] = x;
                        self.push()
                    }
                    _ => Ok(()),
                }
            }
        }
    }
}

/// Sorted packed keys of every tuple matching type, genus and boundary.
/// The generated-subgroup constraint is not applied here.
pub(crate) fn enumerate_keys(q: &OrbitQuery) -> Result<(PackedCodec, Vec<u64>), OrbitError> {
    q.validate()?;
    let codec = codec_for(q)?;
    let e = &q.equipment;
    let table = e.table();
    let target = match &q.boundary {
        BoundaryConstraint::Any => None,
        BoundaryConstraint::Equals(b) => Some(table.index_of(b).expect("validated")),
    };
    let class_of = (0..table.order() as u32).map(|g| e.class_of_elem(g)).collect();
    let mut w = Walker {
        table,
        class_elems: (0..e.num_classes()).map(|i| e.class_elem_indices(i)).collect(),
        class_of,
        codec,
        n: q.n(),
        p: q.genus,
        target,
        remaining: q.type_vector.clone(),
        entries: vec![0; codec.len()],
        out: Vec::new(),
        bound: q.space_bound,
    };
    w.branch(0, table.identity_index())?;
    let mut keys = w.out;
    keys.sort_unstable();
    Ok((codec, keys))
}

pub(crate) fn generates_group(table: &ElementTable, entries: &[u32]) -> bool {
    table.generated_order(entries) == table.order()
}

/// Every tuple of the constrained space exactly once, in lexicographic order.
pub fn enumerate_tuples(q: &OrbitQuery) -> Result<impl Iterator<Item = CoveringTuple> + '_, OrbitError> {
    let (codec, keys) = enumerate_keys(q)?;
    let n = q.n();
    let mut entries = vec![0u32; codec.len()];
    Ok(keys.into_iter().filter_map(move |k| {
        codec.decode(k, &mut entries);
        if q.require_full_group && !generates_group(q.equipment.table(), &entries) {
            return None;
        }
        Some(CoveringTuple::from_indices(q.equipment.clone(), n, &entries))
    }))
}
