//! C-group presentations, their finite central quotient `Q1`, the ambiguity
//! index and the lifting invariant of covering tuples.

mod coset;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::equipped::EquippedGroup;
use crate::perm::{GroupOps, PermError, PermGroup, Permutation};
use crate::tuples::CoveringTuple;

pub const DEFAULT_COSET_BOUND: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("the classes of O do not generate G")]
    NotGenerating,
    #[error("coset enumeration exceeded {bound} cosets ({defined} defined, {live} live)")]
    CosetBound { bound: usize, defined: usize, live: usize },
    #[error("{0} is not in the group")]
    NotInGroup(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A generator `x_k` (the `k`-th element of O) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: u32) -> Self {
        Self { gen, inv: false }
    }

    pub fn neg(gen: u32) -> Self {
        Self { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Self {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

pub type Word = Vec<Letter>;

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Cancels adjacent `x x^-1` pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
        w.pop();
        w.remove(0);
    }
    w
}

/// `<x_1..x_k | relators>` with one generator per element of O.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub symbols: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn num_generators(&self) -> usize {
        self.symbols.len()
    }

    fn write_word(&self, f: &mut fmt::Formatter<'_>, w: &[Letter]) -> fmt::Result {
        if w.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in w.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.symbols[l.gen as usize])?;
            if l.inv {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} | ", self.symbols.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            self.write_word(f, r)?;
        }
        write!(f, "⟩")
    }
}

/// Relators `x_3^-1 x_1 x_3 x_2^-1` for every pair `(g_1, g_3)` in O x O,
/// where `g_2 = g_3^-1 g_1 g_3`, in O-index order.
pub fn c_group_presentation(e: &EquippedGroup) -> Result<Presentation, FpError> {
    if !e.generates() {
        return Err(FpError::NotGenerating);
    }
    let graph = e.c_graph();
    let k = e.o_size();
    let symbols = (1..=k).map(|i| format!("x{i}")).collect();
    let mut relators = Vec::with_capacity(k * k);
    for g1 in 0..k {
        for g3 in 0..k {
            let g2 = graph.target(g1, g3);
            relators.push(vec![
                Letter::neg(g3 as u32),
                Letter::pos(g1 as u32),
                Letter::pos(g3 as u32),
                Letter::neg(g2 as u32),
            ]);
        }
    }
    Ok(Presentation { symbols, relators })
}

/// An element of `Q1`, identified by the coset of the trivial subgroup it
/// carries coset 0 to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LiftingInvariant(pub u32);

/// Shortest-word lifts of every element of G to words over O.
struct LiftTable {
    /// `(parent element, O-index)`; the identity points at itself.
    parent: Vec<(u32, u32)>,
}

impl LiftTable {
    fn build(e: &EquippedGroup) -> Self {
        let t = e.table();
        let o: Vec<u32> = e
            .o_elements()
            .iter()
            .map(|g| t.index_of(g).expect("O lies in G"))
            .collect();
        let id = t.identity_index();
        let mut parent = vec![(u32::MAX, u32::MAX); t.order()];
        parent[id as usize] = (id, u32::MAX);
        let mut queue = std::collections::VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in o.iter().enumerate() {
                let y = t.mul(&x, &g);
                if parent[y as usize].0 == u32::MAX {
                    parent[y as usize] = (x, k as u32);
                    queue.push_back(y);
                }
            }
        }
        Self { parent }
    }

    /// O-indices, or `None` when the element is unreachable.
    fn word(&self, elem: u32) -> Option<Vec<u32>> {
        let mut out = Vec::new();
        let mut x = elem;
        loop {
            let (p, k) = *self.parent.get(x as usize)?;
            if p == u32::MAX {
                return None;
            }
            if k == u32::MAX {
                break;
            }
            out.push(k);
            x = p;
        }
        out.reverse();
        Some(out)
    }
}

/// A shortest word over O multiplying to `g`; ties go to the word first
/// reached in breadth-first order with generators tried in O-index order.
pub fn lift_word(e: &EquippedGroup, g: &Permutation) -> Result<Vec<Permutation>, FpError> {
    let idx = e
        .table()
        .index_of(g)
        .ok_or_else(|| FpError::NotInGroup(g.to_string()))?;
    if !e.generates() {
        return Err(FpError::NotGenerating);
    }
    let word = LiftTable::build(e).word(idx).ok_or(FpError::NotGenerating)?;
    Ok(word.iter().map(|&k| e.o_elements()[k as usize].clone()).collect())
}

/// `Q1 = G~ / <r_i^p_i>`, the C-group with one power relator per class.
pub struct FiniteQuotient {
    equipment: Arc<EquippedGroup>,
    presentation: Presentation,
    power_relators: Vec<Word>,
    table: coset::CosetTable,
    /// spanning-tree word reaching each coset from coset 0
    coset_words: Vec<Word>,
    lifts: OnceLock<LiftTable>,
}

impl fmt::Debug for FiniteQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuotient")
            .field("order", &self.order())
            .field("generators", &self.presentation.num_generators())
            .finish()
    }
}

#[derive(Serialize)]
struct QuotientExport<'a> {
    order: usize,
    generators: Vec<ExportGen<'a>>,
}

#[derive(Serialize)]
struct ExportGen<'a> {
    symbol: &'a str,
    element: String,
    /// image of each coset, 0-based
    cosets: Vec<u32>,
}

impl FiniteQuotient {
    /// Runs coset enumeration with the default bound.
    pub fn build(e: Arc<EquippedGroup>) -> Result<Self, FpError> {
        Self::build_bounded(e, DEFAULT_COSET_BOUND, false)
    }

    /// `all_powers` adds `g^p` for every element of O rather than one per class;
    /// the quotient must come out the same.
    pub fn build_bounded(e: Arc<EquippedGroup>, bound: usize, all_powers: bool) -> Result<Self, FpError> {
        let presentation = c_group_presentation(&e)?;
        let mut power_relators = Vec::new();
        let mut start = 0u32;
        for (i, class) in e.classes().iter().enumerate() {
            let p = e.class_orders()[i] as usize;
            let reps = if all_powers { class.len() as u32 } else { 1 };
            for k in start..start + reps {
                power_relators.push(vec![Letter::pos(k); p]);
            }
            start += class.len() as u32;
        }
        let mut rels: Vec<Word> = presentation
            .relators
            .iter()
            .chain(power_relators.iter())
            .map(|w| cyclic_reduce(w))
            .filter(|w| !w.is_empty())
            .collect();
        rels.sort();
        rels.dedup();
        let table = coset::enumerate(presentation.num_generators(), &rels, bound).map_err(|o| {
            FpError::CosetBound {
                bound,
                defined: o.defined,
                live: o.live,
            }
        })?;
        let coset_words = spanning_words(&table);
        Ok(Self {
            equipment: e,
            presentation,
            power_relators,
            table,
            coset_words,
            lifts: OnceLock::new(),
        })
    }

    pub fn equipment(&self) -> &Arc<EquippedGroup> {
        &self.equipment
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn power_relators(&self) -> &[Word] {
        &self.power_relators
    }

    pub fn order(&self) -> usize {
        self.table.size
    }

    pub fn identity(&self) -> LiftingInvariant {
        LiftingInvariant(0)
    }

    /// Right action of generator `k` on cosets.
    pub fn generator_permutation(&self, k: usize) -> Permutation {
        let images = (0..self.order() as u32)
            .map(|c| self.table.act(c, Letter::pos(k as u32)))
            .collect();
        Permutation::from_images(images).expect("closed coset table")
    }

    pub fn generator_permutations(&self) -> Vec<Permutation> {
        (0..self.presentation.num_generators())
            .map(|k| self.generator_permutation(k))
            .collect()
    }

    /// Right multiplication by `x` on cosets, as a permutation.
    pub fn as_permutation(&self, x: LiftingInvariant) -> Permutation {
        let w = &self.coset_words[x.0 as usize];
        let images = (0..self.order() as u32).map(|c| self.table.walk(c, w)).collect();
        Permutation::from_images(images).expect("closed coset table")
    }

    pub fn evaluate(&self, w: &[Letter]) -> LiftingInvariant {
        LiftingInvariant(self.table.walk(0, w))
    }

    pub fn mul(&self, x: LiftingInvariant, y: LiftingInvariant) -> LiftingInvariant {
        LiftingInvariant(self.table.walk(x.0, &self.coset_words[y.0 as usize]))
    }

    pub fn inv(&self, x: LiftingInvariant) -> LiftingInvariant {
        LiftingInvariant(self.table.walk(0, &inverse_word(&self.coset_words[x.0 as usize])))
    }

    /// Multiplicative order of generator `k` in `Q1`.
    pub fn generator_order(&self, k: usize) -> usize {
        let mut c = self.table.act(0, Letter::pos(k as u32));
        let mut n = 1;
        while c != 0 {
            c = self.table.act(c, Letter::pos(k as u32));
            n += 1;
        }
        n
    }

    /// `Q1` as a permutation group on its cosets.
    pub fn as_group(&self) -> Result<PermGroup, FpError> {
        Ok(PermGroup::closure_bounded(&self.generator_permutations(), self.order())?)
    }

    /// `|Q1 / [Q1,Q1]|`; equals the product of the class orders.
    pub fn abelianization_order(&self) -> Result<usize, FpError> {
        Ok(self.order() / self.as_group()?.commutator_subgroup().order())
    }

    /// `|[Q1,Q1]| / |[G,G]|`.
    pub fn ambiguity_index(&self) -> Result<usize, FpError> {
        let q_comm = self.as_group()?.commutator_subgroup().order();
        let g_comm = self.equipment.group().commutator_subgroup().order();
        if q_comm % g_comm != 0 {
            return Err(FpError::Inconsistent(format!(
                "|[Q1,Q1]| = {q_comm} is not a multiple of |[G,G]| = {g_comm}"
            )));
        }
        Ok(q_comm / g_comm)
    }

    fn lifts(&self) -> &LiftTable {
        self.lifts.get_or_init(|| LiftTable::build(&self.equipment))
    }

    /// Lift of a group element (by table index) as a positive word.
    fn lift_elem(&self, elem: u32) -> Word {
        self.lifts()
            .word(elem)
            .expect("O generates G")
            .into_iter()
            .map(Letter::pos)
            .collect()
    }

    /// Image of `x~_1..x~_n [a~_1,b~_1]..[a~_p,b~_p]`, entries given as
    /// element-table indices. `lift` supplies the word for a handle entry.
    pub fn invariant_with<F>(&self, branch: &[u32], handles: &[(u32, u32)], mut lift: F) -> LiftingInvariant
    where
        F: FnMut(u32) -> Word,
    {
        let mut c = 0u32;
        for &g in branch {
            let k = self.equipment.o_index_of_elem(g).expect("branch letter in O");
            c = self.table.act(c, Letter::pos(k));
        }
        for &(a, b) in handles {
            let wa = lift(a);
            let wb = lift(b);
            c = self.table.walk(c, &wa);
            c = self.table.walk(c, &wb);
            c = self.table.walk(c, &inverse_word(&wa));
            c = self.table.walk(c, &inverse_word(&wb));
        }
        LiftingInvariant(c)
    }

    pub fn invariant_of_indices(&self, branch: &[u32], handles: &[(u32, u32)]) -> LiftingInvariant {
        self.invariant_with(branch, handles, |x| self.lift_elem(x))
    }

    pub fn lifting_invariant(&self, t: &CoveringTuple) -> Result<LiftingInvariant, FpError> {
        if !crate::tuples::same_equipment(t.equipment(), &self.equipment) {
            return Err(FpError::Inconsistent("tuple over a different equipment".into()));
        }
        let idx = t.to_indices();
        let n = t.len();
        let handles: Vec<(u32, u32)> = idx[n..].chunks(2).map(|c| (c[0], c[1])).collect();
        Ok(self.invariant_of_indices(&idx[..n], &handles))
    }

    /// Generator to coset-permutation table as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        let export = QuotientExport {
            order: self.order(),
            generators: (0..self.presentation.num_generators())
                .map(|k| ExportGen {
                    symbol: &self.presentation.symbols[k],
                    element: self.equipment.o_elements()[k].to_string(),
                    cosets: self.generator_permutation(k).images().to_vec(),
                })
                .collect(),
        };
        serde_json::to_value(export).expect("plain data")
    }
}

fn spanning_words(t: &coset::CosetTable) -> Vec<Word> {
    let mut words: Vec<Option<Word>> = vec![None; t.size];
    words[0] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([0u32]);
    let gens = t.cols / 2;
    while let Some(c) = queue.pop_front() {
        for k in 0..gens as u32 {
            for l in [Letter::pos(k), Letter::neg(k)] {
                let d = t.act(c, l);
                if words[d as usize].is_none() {
                    let mut w = words[c as usize].clone().expect("visited");
                    w.push(l);
                    words[d as usize] = Some(w);
                    queue.push_back(d);
                }
            }
        }
    }
    words.into_iter().map(|w| w.expect("table is connected")).collect()
}

/// Convenience: `|[Q1,Q1]| / |[G,G]|` with default bounds.
pub fn ambiguity_index(e: Arc<EquippedGroup>) -> Result<usize, FpError> {
    FiniteQuotient::build(e)?.ambiguity_index()
}
