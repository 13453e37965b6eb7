//! Equipped groups `(G, O)`, the type map `O -> {1..m}` and the C-graph.

use std::fmt::Write as _;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::perm::{ElementTable, PermError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquipError {
    #[error("class representative {0} is the identity")]
    IdentityRepresentative(String),
    #[error("representatives {0} and {1} lie in the same conjugacy class")]
    DuplicateClass(usize, usize),
    #[error("{0} is not in the group")]
    NotInGroup(String),
    #[error("{0} is not in O")]
    NotInO(String),
    #[error("no class representatives given")]
    Empty,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A finite permutation group together with an ordered list of
/// non-identity conjugacy classes `C_1, ..., C_m` whose union is `O`.
///
/// Elements of `O` are numbered class by class, canonical order inside
/// each class; that numbering is the "O-index" used by the C-graph, the
/// C-group presentation and the oracle.
#[derive(Clone)]
pub struct EquippedGroup {
    group: PermGroup,
    table: Arc<ElementTable>,
    classes: Vec<Vec<Permutation>>,
    class_orders: Vec<u64>,
    generates: bool,
    o_elements: Vec<Permutation>,
    o_class: Vec<usize>,
    /// element-table index -> O-index
    o_of_elem: Vec<Option<u32>>,
    o_lookup: FxHashMap<Permutation, u32>,
}

impl EquippedGroup {
    /// Expands each representative to its conjugacy class, in the given order.
    pub fn build(group: PermGroup, class_reps: &[Permutation]) -> Result<Self, EquipError> {
        if class_reps.is_empty() {
            return Err(EquipError::Empty);
        }
        let table = Arc::new(ElementTable::new(&group)?);
        let mut classes: Vec<Vec<Permutation>> = Vec::new();
        for (i, r) in class_reps.iter().enumerate() {
            if !group.contains(r) {
                return Err(EquipError::NotInGroup(r.to_string()));
            }
            if r.is_identity() {
                return Err(EquipError::IdentityRepresentative(r.to_string()));
            }
            let class = group.conjugacy_class(r)?;
            if let Some(j) = classes.iter().position(|c| c.binary_search(r).is_ok()) {
                return Err(EquipError::DuplicateClass(j, i));
            }
            classes.push(class);
        }
        let class_orders = classes.iter().map(|c| c[0].order()).collect();
        let mut o_elements = Vec::new();
        let mut o_class = Vec::new();
        for (i, c) in classes.iter().enumerate() {
            o_elements.extend(c.iter().cloned());
            o_class.extend(std::iter::repeat_n(i, c.len()));
        }
        let mut o_of_elem = vec![None; table.order()];
        let mut o_lookup = FxHashMap::default();
        for (k, g) in o_elements.iter().enumerate() {
            let idx = table.index_of(g).expect("class element lies in the group");
            o_of_elem[idx as usize] = Some(k as u32);
            o_lookup.insert(g.clone(), k as u32);
        }
        let o_idx: Vec<u32> = o_elements
            .iter()
            .map(|g| table.index_of(g).expect("in group"))
            .collect();
        let generates = table.generated_order(&o_idx) == group.order();
        Ok(Self {
            group,
            table,
            classes,
            class_orders,
            generates,
            o_elements,
            o_class,
            o_of_elem,
            o_lookup,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn shared_table(&self) -> Arc<ElementTable> {
        Arc::clone(&self.table)
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Number of classes `m`.
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<Permutation>] {
        &self.classes
    }

    /// `n_i = |C_i|`
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// `p_i`, the common element order in `C_i`.
    pub fn class_orders(&self) -> &[u64] {
        &self.class_orders
    }

    /// Whether `O` generates `G`.
    pub fn generates(&self) -> bool {
        self.generates
    }

    /// Elements of `O` in O-index order.
    pub fn o_elements(&self) -> &[Permutation] {
        &self.o_elements
    }

    pub fn o_size(&self) -> usize {
        self.o_elements.len()
    }

    /// Class (0-based) of the O-element with the given O-index.
    pub fn class_of_o_index(&self, k: usize) -> usize {
        self.o_class[k]
    }

    pub fn o_index(&self, g: &Permutation) -> Option<u32> {
        self.o_lookup.get(g).copied()
    }

    /// O-index of an element-table index, if the element lies in `O`.
    pub fn o_index_of_elem(&self, elem: u32) -> Option<u32> {
        self.o_of_elem[elem as usize]
    }

    /// 0-based class index of `g`, the type map on `O`.
    pub fn class_index(&self, g: &Permutation) -> Result<usize, EquipError> {
        self.o_index(g)
            .map(|k| self.o_class[k as usize])
            .ok_or_else(|| EquipError::NotInO(g.to_string()))
    }

    /// 0-based class index of an element-table index.
    pub fn class_of_elem(&self, elem: u32) -> Option<usize> {
        self.o_of_elem[elem as usize].map(|k| self.o_class[k as usize])
    }

    /// Element-table indices of the members of class `i`, canonical order.
    pub fn class_elem_indices(&self, i: usize) -> Vec<u32> {
        self.classes[i]
            .iter()
            .map(|g| self.table.index_of(g).expect("in group"))
            .collect()
    }

    /// Same group, a subset of the classes (given by 0-based class index, in order).
    pub fn restrict(&self, class_ids: &[usize]) -> Result<Self, EquipError> {
        let reps: Vec<Permutation> = class_ids.iter().map(|&i| self.classes[i][0].clone()).collect();
        Self::build(self.group.clone(), &reps)
    }

    pub fn c_graph(&self) -> CGraph {
        let n = self.o_size();
        let target = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        let c = self.o_elements[i].conj_unchecked(&self.o_elements[k]);
                        self.o_lookup[&c]
                    })
                    .collect()
            })
            .collect();
        CGraph {
            vertices: self.o_elements.clone(),
            target,
        }
    }
}

impl std::fmt::Debug for EquippedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EquippedGroup({:?}, classes [", self.group)?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}^G ({})", c[0], c.len())?;
        }
        write!(f, "])")
    }
}

/// Directed labeled graph on `O`: an edge `g1 -> g2` labeled `g3` whenever
/// `g3^-1 g1 g3 = g2`. There is exactly one edge per pair `(g1, g3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CGraph {
    vertices: Vec<Permutation>,
    /// `target[i][k]` = index of `v_k^-1 v_i v_k`
    target: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("isomorphism search exceeded its budget of {0} nodes")]
pub struct IsoBudgetExceeded(pub u64);

impl CGraph {
    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Target of the edge leaving `v_i` with label `v_k`.
    pub fn target(&self, i: usize, k: usize) -> usize {
        self.target[i][k] as usize
    }

    /// All edges as `(source, target, label)` vertex indices.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).flat_map(move |i| (0..n).map(move |k| (i, self.target[i][k] as usize, k)))
    }

    pub fn num_edges(&self) -> usize {
        self.vertices.len() * self.vertices.len()
    }

    /// Weakly connected components, each a sorted list of vertex indices,
    /// ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                // conjugation classes are closed, so forward edges reach everything
                for k in 0..n {
                    let w = self.target[v][k] as usize;
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
                for (u, targets) in self.target.iter().enumerate() {
                    if comp[u] == usize::MAX && targets.iter().any(|&t| t as usize == v) {
                        comp[u] = id;
                        members.push(u);
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Graphviz rendering: vertices named by cycle notation, edge label = conjugator.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph cgraph {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for (i, j, k) in self.edges() {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertices[i], self.vertices[j], self.vertices[k]
            );
        }
        s.push_str("}\n");
        s
    }

    /// Searches for a vertex bijection `phi` with
    /// `target2[phi(i)][phi(k)] = phi(target1[i][k])` for all `i, k`.
    ///
    /// Returns the witness as `phi[i]`, or `None` when no isomorphism exists.
    pub fn isomorphism(&self, other: &CGraph, budget: u64) -> Result<Option<Vec<usize>>, IsoBudgetExceeded> {
        let n = self.num_vertices();
        if n != other.num_vertices() {
            return Ok(None);
        }
        let sig1: Vec<_> = (0..n).map(|v| self.signature(v)).collect();
        let sig2: Vec<_> = (0..n).map(|v| other.signature(v)).collect();
        let mut s1 = sig1.clone();
        let mut s2 = sig2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return Ok(None);
        }
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut nodes = 0u64;
        let found = self.extend(other, &sig1, &sig2, 0, &mut phi, &mut used, &mut nodes, budget)?;
        Ok(found.then_some(phi))
    }

    pub fn is_isomorphic(&self, other: &CGraph, budget: u64) -> Result<bool, IsoBudgetExceeded> {
        Ok(self.isomorphism(other, budget)?.is_some())
    }

    /// (number of loops at v, size of v's component)
    fn signature(&self, v: usize) -> (usize, usize) {
        let loops = self.target[v].iter().filter(|&&t| t as usize == v).count();
        let orbit = {
            let mut seen: Vec<u32> = self.target[v].clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        };
        (loops, orbit)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        other: &CGraph,
        sig1: &[(usize, usize)],
        sig2: &[(usize, usize)],
        v: usize,
        phi: &mut [usize],
        used: &mut [bool],
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool, IsoBudgetExceeded> {
        let n = phi.len();
        if v == n {
            return Ok(true);
        }
        for w in 0..n {
            if used[w] || sig1[v] != sig2[w] {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(IsoBudgetExceeded(budget));
            }
            phi[v] = w;
            used[w] = true;
            if self.consistent(other, phi, v) && self.extend(other, sig1, sig2, v + 1, phi, used, nodes, budget)? {
                return Ok(true);
            }
            used[w] = false;
            phi[v] = usize::MAX;
        }
        Ok(false)
    }

    /// Checks every edge among assigned vertices that involves `v`.
    fn consistent(&self, other: &CGraph, phi: &[usize], v: usize) -> bool {
        for i in 0..=v {
            for k in 0..=v {
                if i != v && k != v && self.target[i][k] as usize != v {
                    continue;
                }
                let t = self.target[i][k] as usize;
                let image = other.target[phi[i]][phi[k]] as usize;
                if t <= v {
                    if phi[t] != image {
                        return false;
                    }
                } else if phi[..=v].contains(&image) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Permutation {
        Permutation::parse(s, d).unwrap()
    }

    fn s3_equipped(reps: &[&str]) -> Result<EquippedGroup, EquipError> {
        let g = PermGroup::symmetric(3).unwrap();
        let reps: Vec<_> = reps.iter().map(|r| p(r, 3)).collect();
        EquippedGroup::build(g, &reps)
    }

    fn klein() -> EquippedGroup {
        let g = PermGroup::closure(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        EquippedGroup::build(g, &[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4), p("(1 4)(2 3)", 4)]).unwrap()
    }

    #[test]
    fn build_equipment_examples() {
        let e = s3_equipped(&["(1 2)"]).unwrap();
        assert_eq!(e.num_classes(), 1);
        assert_eq!(e.o_size(), 3);
        assert!(e.generates());
        let e = s3_equipped(&["(1 2)", "(1 2 3)"]).unwrap();
        assert_eq!(e.num_classes(), 2);
        assert_eq!(e.o_size(), 5);
        assert_eq!(e.class_sizes(), vec![3, 2]);
        assert_eq!(e.class_orders(), &[2, 3]);
        assert!(matches!(s3_equipped(&["e"]), Err(EquipError::IdentityRepresentative(_))));
        assert!(matches!(s3_equipped(&["(1 2)", "(2 3)"]), Err(EquipError::DuplicateClass(0, 1))));
        let a3 = PermGroup::closure(&[p("(1 2 3)", 3)]).unwrap();
        assert!(matches!(
            EquippedGroup::build(a3, &[p("(1 2)", 3)]),
            Err(EquipError::NotInGroup(_))
        ));
        let e = s3_equipped(&["(1 2 3)"]).unwrap();
        assert!(!e.generates());
    }

    #[test]
    fn class_index_examples() {
        let e = s3_equipped(&["(1 2)", "(1 2 3)"]).unwrap();
        assert_eq!(e.class_index(&p("(1 3)", 3)).unwrap(), 0);
        assert_eq!(e.class_index(&p("(1 3 2)", 3)).unwrap(), 1);
        assert!(e.class_index(&p("e", 3)).is_err());
    }

    #[test]
    fn c_graph_examples() {
        let e = s3_equipped(&["(1 2)"]).unwrap();
        let g = e.c_graph();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges().count(), 9);
        let z3 = PermGroup::closure(&[p("(1 2 3)", 3)]).unwrap();
        let e = EquippedGroup::build(z3, &[p("(1 2 3)", 3)]).unwrap();
        let g = e.c_graph();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 0, 0)]);
        let g = klein().c_graph();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 9);
        assert!(g.edges().all(|(i, j, _)| i == j));
    }

    #[test]
    fn c_graph_edges_are_conjugations() {
        let e = s3_equipped(&["(1 2)", "(1 2 3)"]).unwrap();
        let g = e.c_graph();
        for (i, j, k) in g.edges() {
            let v = g.vertices();
            assert_eq!(v[k].inverse().compose(&v[i]).unwrap().compose(&v[k]).unwrap(), v[j]);
        }
    }

    #[test]
    fn components_are_classes() {
        for d in [3usize, 4] {
            let g = PermGroup::symmetric(d).unwrap();
            let classes = g.conjugacy_classes();
            let reps: Vec<_> = classes.iter().skip(1).map(|c| c[0].clone()).collect();
            let e = EquippedGroup::build(g, &reps).unwrap();
            let comps = e.c_graph().components();
            assert_eq!(comps.len(), e.num_classes());
            for comp in comps {
                let cls = e.class_of_o_index(comp[0]);
                assert!(comp.iter().all(|&v| e.class_of_o_index(v) == cls));
                assert_eq!(comp.len(), e.classes()[cls].len());
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let e = s3_equipped(&["(1 2)"]).unwrap();
        let g = e.c_graph();
        let phi = g.isomorphism(&g, 1000).unwrap().unwrap();
        assert_eq!(phi.len(), 3);
        let big = s3_equipped(&["(1 2)", "(1 2 3)"]).unwrap().c_graph();
        assert!(!g.is_isomorphic(&big, 1000).unwrap());
        let z3 = PermGroup::closure(&[p("(1 2 3)", 3)]).unwrap();
        let a = EquippedGroup::build(z3.clone(), &[p("(1 2 3)", 3)]).unwrap().c_graph();
        let b = EquippedGroup::build(z3, &[p("(1 3 2)", 3)]).unwrap().c_graph();
        assert!(a.is_isomorphic(&b, 10).unwrap());
        // S3 on transpositions vs the transpositions of S3 embedded in S4
        let s4 = PermGroup::symmetric(4).unwrap();
        let sub = s4.subgroup(&[p("(2 3)", 4), p("(3 4)", 4)]).unwrap();
        let c = EquippedGroup::build(sub, &[p("(2 3)", 4)]).unwrap().c_graph();
        assert!(g.is_isomorphic(&c, 1000).unwrap());
        // transpositions of S4 vs 3-cycles-free but same size is not available; compare with Klein
        assert!(!g.is_isomorphic(&klein().c_graph(), 1000).unwrap());
    }

    #[test]
    fn isomorphism_budget() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let e = EquippedGroup::build(s4, &[p("(1 2)", 4)]).unwrap().c_graph();
        assert!(e.isomorphism(&e, 2).is_err());
    }

    #[test]
    fn dot_output() {
        let dot = s3_equipped(&["(1 2)"]).unwrap().c_graph().to_dot();
        assert_eq!(dot.matches("->").count(), 9);
        assert!(dot.contains("\"(1 2)\" -> \"(1 3)\" [label=\"(2 3)\"]"));
    }
}
