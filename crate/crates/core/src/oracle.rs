//! Word-level reference implementation: covering words over `X(g)` and
//! `Y(a,b)` letters, identified by local relation rewrites, with classes
//! found by union-find over the whole word space.
//!
//! Only the permutation layer is shared with the rest of the crate; the move
//! formulas of [`crate::tuples`] are not used here.

use std::fmt;

use serde::Serialize;

use crate::equipped::EquippedGroup;
use crate::perm::{ElementTable, GroupOps, Permutation};

pub const DEFAULT_WORD_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("word space of {size} words exceeds the bound {bound}")]
    SpaceBound { size: u128, bound: u64 },
    #[error("letter {0} is not valid for this equipment")]
    BadLetter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordLetter {
    X(Permutation),
    Y(Permutation, Permutation),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoveringWord(pub Vec<WordLetter>);

impl CoveringWord {
    pub fn counts(&self) -> (usize, usize) {
        let x = self.0.iter().filter(|l| matches!(l, WordLetter::X(_))).count();
        (x, self.0.len() - x)
    }
}

impl fmt::Display for CoveringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            match l {
                WordLetter::X(g) => write!(f, "X{g}")?,
                WordLetter::Y(a, b) => write!(f, "Y[{a},{b}]")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum L {
    X(u32),
    Y(u32, u32),
}

/// Classes of words with a fixed number of `X` and `Y` letters.
pub struct Oracle {
    table: ElementTable,
    /// element index of each O element, in O order
    o: Vec<u32>,
    o_pos: Vec<Option<u32>>,
    o_class: Vec<usize>,
    num_classes: usize,
}

/// Constraints evaluated once per class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleConstraints {
    pub boundary: Option<Permutation>,
    pub full_group: bool,
    pub type_vector: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCount {
    pub n: usize,
    pub p: usize,
    pub class_count: usize,
    pub class_sizes: Vec<u64>,
    /// Reduced words (all `X` letters first) in each counted class.
    pub reduced_sizes: Vec<u64>,
}

/// Union-find labels over the dense word space.
pub struct WordClasses<'a> {
    oracle: &'a Oracle,
    n: usize,
    p: usize,
    patterns: Vec<Vec<bool>>,
    per_pattern: u64,
    /// representative (least rank) of each word's class
    root: Vec<u32>,
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut k = x;
        while self.0[k as usize] != r {
            let next = self.0[k as usize];
            self.0[k as usize] = r;
            k = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (x, y) = (self.find(a), self.find(b));
        if x != y {
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            self.0[hi as usize] = lo;
        }
    }
}

/// `true` marks an X position. Patterns with X letters earlier come first,
/// so pattern 0 is the reduced one.
fn patterns(n: usize, p: usize) -> Vec<Vec<bool>> {
    fn go(n: usize, p: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if n == 0 && p == 0 {
            out.push(cur.clone());
            return;
        }
        if n > 0 {
            cur.push(true);
            go(n - 1, p, cur, out);
            cur.pop();
        }
        if p > 0 {
            cur.push(false);
            go(n, p - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, p, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

impl Oracle {
    pub fn new(e: &EquippedGroup) -> Self {
        let table = e.table().clone();
        let o: Vec<u32> = e
            .o_elements()
            .iter()
            .map(|g| table.index_of(g).expect("O lies in G"))
            .collect();
        let mut o_pos = vec![None; table.order()];
        for (k, &g) in o.iter().enumerate() {
            o_pos[g as usize] = Some(k as u32);
        }
        let o_class = (0..o.len()).map(|k| e.class_of_o_index(k)).collect();
        Self {
            table,
            o,
            o_pos,
            o_class,
            num_classes: e.num_classes(),
        }
    }

    fn g(&self) -> u64 {
        self.table.order() as u64
    }

    /// `|O|^n |G|^2p C(n+p, n)`.
    pub fn space_size(&self, n: usize, p: usize) -> u128 {
        (self.o.len() as u128).pow(n as u32) * (self.g() as u128).pow(2 * p as u32) * binomial(n + p, n)
    }

    fn check(&self, n: usize, p: usize, bound: u64) -> Result<(), OracleError> {
        let size = self.space_size(n, p);
        if size > bound as u128 || size > u128::from(u32::MAX) {
            return Err(OracleError::SpaceBound { size, bound });
        }
        Ok(())
    }

    fn to_public(&self, w: &[L]) -> CoveringWord {
        let el = |i: u32| self.table.element(i).clone();
        CoveringWord(
            w.iter()
                .map(|&l| match l {
                    L::X(g) => WordLetter::X(el(g)),
                    L::Y(a, b) => WordLetter::Y(el(a), el(b)),
                })
                .collect(),
        )
    }

    fn to_internal(&self, w: &CoveringWord) -> Result<Vec<L>, OracleError> {
        let idx = |g: &Permutation| self.table.index_of(g).ok_or_else(|| OracleError::BadLetter(g.to_string()));
        w.0.iter()
            .map(|l| match l {
                WordLetter::X(g) => {
                    let i = idx(g)?;
                    if self.o_pos[i as usize].is_none() {
                        return Err(OracleError::BadLetter(g.to_string()));
                    }
                    Ok(L::X(i))
                }
                WordLetter::Y(a, b) => Ok(L::Y(idx(a)?, idx(b)?)),
            })
            .collect()
    }

    /// Every word with `n` X letters and `p` Y letters, in rank order.
    pub fn word_space(&self, n: usize, p: usize, bound: u64) -> Result<impl Iterator<Item = CoveringWord> + '_, OracleError> {
        self.check(n, p, bound)?;
        let pats = patterns(n, p);
        let per = self.per_pattern(n, p);
        let total = pats.len() as u64 * per;
        Ok((0..total).map(move |r| self.to_public(&self.unrank(&pats, per, r))))
    }

    fn per_pattern(&self, n: usize, p: usize) -> u64 {
        (self.o.len() as u64).pow(n as u32) * self.g().pow(2 * p as u32)
    }

    fn unrank(&self, pats: &[Vec<bool>], per: u64, r: u64) -> Vec<L> {
        let pat = &pats[(r / per) as usize];
        let mut rest = r % per;
        let o = self.o.len() as u64;
        let g2 = self.g() * self.g();
        let mut out = vec![L::X(0); pat.len()];
        for (i, &is_x) in pat.iter().enumerate().rev() {
            if is_x {
                out[i] = L::X(self.o[(rest % o) as usize]);
                rest /= o;
            } else {
                let d = rest % g2;
                out[i] = L::Y((d / self.g()) as u32, (d % self.g()) as u32);
                rest /= g2;
            }
        }
        out
    }

    fn rank(&self, pats: &[Vec<bool>], per: u64, w: &[L]) -> u64 {
        let pat: Vec<bool> = w.iter().map(|l| matches!(l, L::X(_))).collect();
        let pi = pats.binary_search_by(|q| pat.cmp(q)).expect("letter counts preserved") as u64;
        let o = self.o.len() as u64;
        let g = self.g();
        let mut r = 0u64;
        for &l in w {
            r = match l {
                L::X(x) => r * o + u64::from(self.o_pos[x as usize].expect("X letter in O")),
                L::Y(a, b) => r * g * g + u64::from(a) * g + u64::from(b),
            };
        }
        pi * per + r
    }

    /// Forward rewrites of an adjacent pair, one per applicable relation.
    fn forward(&self, l1: L, l2: L) -> Vec<(L, L)> {
        let t = &self.table;
        match (l1, l2) {
            (L::X(g1), L::X(g2)) => vec![(L::X(g2), L::X(t.conj(&g1, &g2)))],
            (L::X(g), L::Y(a, b)) => {
                let c = t.comm(&a, &b);
                // c1 = a b^-1 a^-1 g^-1
                let c1 = t.mul(&t.mul(&t.mul(&a, &t.inv(&b)), &t.inv(&a)), &t.inv(&g));
                let h = t.conj(&g, &c);
                vec![
                    (L::Y(a, b), L::X(h)),
                    (L::X(t.conj(&g, &c1)), L::Y(t.mul(&g, &a), b)),
                    (L::X(h), L::Y(t.conj(&a, &h), t.conj(&b, &h))),
                ]
            }
            (L::Y(a, b), L::X(g)) => {
                // c2 = b a^-1 b^-1 g
                let c2 = t.mul(&t.mul(&t.mul(&b, &t.inv(&a)), &t.inv(&b)), &g);
                vec![(L::Y(a, t.mul(&t.inv(&g), &b)), L::X(t.conj(&g, &c2)))]
            }
            (L::Y(..), L::Y(..)) => Vec::new(),
        }
    }

    fn all_letters(&self, x: bool) -> Vec<L> {
        if x {
            self.o.iter().map(|&g| L::X(g)).collect()
        } else {
            let g = self.table.order() as u32;
            (0..g).flat_map(|a| (0..g).map(move |b| L::Y(a, b))).collect()
        }
    }

    /// Words one rewrite away in either direction; inverse rewrites are found
    /// by searching all pairs of the right shape.
    pub fn rewrite_neighbors(&self, w: &CoveringWord) -> Result<Vec<CoveringWord>, OracleError> {
        let w = self.to_internal(w)?;
        let mut out = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let (l1, l2) = (w[i], w[i + 1]);
            let mut images = self.forward(l1, l2);
            for p1 in self.all_letters(true).into_iter().chain(self.all_letters(false)) {
                for p2 in self.all_letters(true).into_iter().chain(self.all_letters(false)) {
                    if self.forward(p1, p2).contains(&(l1, l2)) {
                        images.push((p1, p2));
                    }
                }
            }
            for (m1, m2) in images {
                let mut v = w.clone();
                v[i] = m1;
                v[i + 1] = m2;
                out.push(self.to_public(&v));
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Union-find over the full word space with forward rewrites (unions are
    /// symmetric, so inverse rewrites add nothing).
    pub fn classes(&self, n: usize, p: usize, bound: u64) -> Result<WordClasses<'_>, OracleError> {
        self.check(n, p, bound)?;
        let pats = patterns(n, p);
        let per = self.per_pattern(n, p);
        let total = pats.len() as u64 * per;
        let mut dsu = Dsu((0..total as u32).collect());
        for r in 0..total {
            let w = self.unrank(&pats, per, r);
            for i in 0..w.len().saturating_sub(1) {
                for (m1, m2) in self.forward(w[i], w[i + 1]) {
                    let mut v = w.clone();
                    v[i] = m1;
                    v[i + 1] = m2;
                    dsu.union(r as u32, self.rank(&pats, per, &v) as u32);
                }
            }
        }
        let root = (0..total as u32).map(|r| dsu.find(r)).collect();
        Ok(WordClasses {
            oracle: self,
            n,
            p,
            patterns: pats,
            per_pattern: per,
            root,
        })
    }

    fn boundary(&self, w: &[L]) -> u32 {
        let t = &self.table;
        w.iter().fold(t.identity_index(), |acc, &l| match l {
            L::X(g) => t.mul(&acc, &g),
            L::Y(a, b) => t.mul(&acc, &t.comm(&a, &b)),
        })
    }

    fn generates(&self, w: &[L]) -> bool {
        let gens: Vec<u32> = w
            .iter()
            .flat_map(|&l| match l {
                L::X(g) => vec![g],
                L::Y(a, b) => vec![a, b],
            })
            .collect();
        self.table.generated_order(&gens) == self.table.order()
    }

    fn type_vector(&self, w: &[L]) -> Vec<usize> {
        let mut tau = vec![0; self.num_classes];
        for &l in w {
            if let L::X(g) = l {
                tau[self.o_class[self.o_pos[g as usize].expect("in O") as usize]] += 1;
            }
        }
        tau
    }

    /// Number of classes satisfying the constraints.
    pub fn class_count(&self, n: usize, p: usize, c: &OracleConstraints, bound: u64) -> Result<OracleCount, OracleError> {
        Ok(self.classes(n, p, bound)?.count(c))
    }
}

impl WordClasses<'_> {
    pub fn num_words(&self) -> u64 {
        self.root.len() as u64
    }

    /// Class label (least rank in the class) of a word.
    pub fn class_of(&self, w: &CoveringWord) -> Result<u32, OracleError> {
        let w = self.oracle.to_internal(w)?;
        if w.iter().filter(|l| matches!(l, L::X(_))).count() != self.n || w.len() != self.n + self.p {
            return Err(OracleError::BadLetter(format!("word shape differs from ({}, {})", self.n, self.p)));
        }
        Ok(self.root[self.oracle.rank(&self.patterns, self.per_pattern, &w) as usize])
    }

    /// Least word of every class, in rank order.
    pub fn representatives(&self) -> Vec<CoveringWord> {
        self.root
            .iter()
            .enumerate()
            .filter(|&(r, &root)| r as u32 == root)
            .map(|(r, _)| self.oracle.to_public(&self.oracle.unrank(&self.patterns, self.per_pattern, r as u64)))
            .collect()
    }

    pub fn count(&self, c: &OracleConstraints) -> OracleCount {
        let o = self.oracle;
        let target = c.boundary.as_ref().map(|b| o.table.index_of(b));
        let mut size = vec![0u64; self.root.len()];
        let mut reduced = vec![0u64; self.root.len()];
        for (r, &root) in self.root.iter().enumerate() {
            size[root as usize] += 1;
            if (r as u64) < self.per_pattern {
                reduced[root as usize] += 1;
            }
        }
        let mut class_sizes = Vec::new();
        let mut reduced_sizes = Vec::new();
        for (r, &root) in self.root.iter().enumerate() {
            if r as u32 != root {
                continue;
            }
            let w = o.unrank(&self.patterns, self.per_pattern, r as u64);
            if let Some(t) = target {
                if t != Some(o.boundary(&w)) {
                    continue;
                }
            }
            if let Some(tau) = &c.type_vector {
                if &o.type_vector(&w) != tau {
                    continue;
                }
            }
            if c.full_group && !o.generates(&w) {
                continue;
            }
            class_sizes.push(size[r]);
            reduced_sizes.push(reduced[r]);
        }
        OracleCount {
            n: self.n,
            p: self.p,
            class_count: class_sizes.len(),
            class_sizes,
            reduced_sizes,
        }
    }

    /// Boundary of every word in each class agrees with the class label's.
    pub fn boundary_constant(&self) -> bool {
        let o = self.oracle;
        self.root.iter().enumerate().all(|(r, &root)| {
            let w = o.unrank(&self.patterns, self.per_pattern, r as u64);
            let v = o.unrank(&self.patterns, self.per_pattern, u64::from(root));
            o.boundary(&w) == o.boundary(&v)
        })
    }
}
