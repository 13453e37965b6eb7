use rustc_hash::FxHashMap;

use super::{PermError, PermGroup, Permutation};

/// Minimal group arithmetic over some element representation.
///
/// Braid moves are written once against this trait and run both on
/// [`Permutation`]s (via [`SymmetricOps`]) and on element indices of an
/// [`ElementTable`].
pub trait GroupOps {
    type Elem: Clone + Eq;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// `h^-1 * g * h`
    fn conj(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(h), g), h)
    }

    /// `a * b * a^-1 * b^-1`
    fn comm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        self.mul(&self.mul(&ab, &self.inv(a)), &self.inv(b))
    }
}

/// Arithmetic on bare permutations of a fixed degree.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricOps {
    pub degree: usize,
}

impl GroupOps for SymmetricOps {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.mul_unchecked(b)
    }

    fn inv(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn conj(&self, g: &Permutation, h: &Permutation) -> Permutation {
        g.conj_unchecked(h)
    }
}

/// Groups up to this order get a full multiplication table.
const MUL_TABLE_LIMIT: usize = 2048;

/// Elements of a permutation group numbered `0..|G|` in canonical order, with
/// O(1) inverses and either a multiplication table or packed-image products.
#[derive(Clone)]
pub struct ElementTable {
    degree: usize,
    elements: Vec<Permutation>,
    packed: Vec<u64>,
    index: FxHashMap<u64, u32>,
    inv: Vec<u32>,
    mul: Option<Vec<u32>>,
    identity: u32,
}

fn pack(images: &[u32]) -> u64 {
    images
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &x)| acc | (u64::from(x) << (4 * i)))
}

impl ElementTable {
    pub fn new(group: &PermGroup) -> Result<Self, PermError> {
        let degree = group.degree();
        if degree > 16 {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let elements = group.elements().to_vec();
        let packed: Vec<u64> = elements.iter().map(|g| pack(g.images())).collect();
        let index: FxHashMap<u64, u32> = packed
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as u32))
            .collect();
        let identity = index[&pack(Permutation::identity(degree).images())];
        let mut table = Self {
            degree,
            elements,
            packed,
            index,
            inv: Vec::new(),
            mul: None,
            identity,
        };
        table.inv = (0..table.order() as u32)
            .map(|i| table.index_of(&table.elements[i as usize].inverse()).expect("closed under inverse"))
            .collect();
        let n = table.order();
        if n <= MUL_TABLE_LIMIT {
            let mut mul = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    mul[a * n + b] = table.mul_packed(a as u32, b as u32);
                }
            }
            table.mul = Some(mul);
        }
        Ok(table)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        if g.degree() != self.degree {
            return None;
        }
        self.index.get(&pack(g.images())).copied()
    }

    fn mul_packed(&self, a: u32, b: u32) -> u32 {
        let pa = self.packed[a as usize];
        let pb = self.packed[b as usize];
        let mut key = 0u64;
        for x in 0..self.degree {
            let ax = (pa >> (4 * x)) & 0xf;
            let bax = (pb >> (4 * ax)) & 0xf;
            key |= bax << (4 * x);
        }
        self.index[&key]
    }

    /// Order of the subgroup generated by the given elements.
    pub fn generated_order(&self, gens: &[u32]) -> usize {
        let mut seen = vec![false; self.order()];
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != self.identity).collect();
        let mut stack = vec![self.identity];
        seen[self.identity as usize] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = self.mul(&x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }
}

impl GroupOps for ElementTable {
    type Elem = u32;

    #[inline]
    fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        match &self.mul {
            Some(t) => t[*a as usize * self.elements.len() + *b as usize],
            None => self.mul_packed(*a, *b),
        }
    }

    #[inline]
    fn inv(&self, a: &u32) -> u32 {
        self.inv[*a as usize]
    }
}
