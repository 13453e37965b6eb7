use std::collections::VecDeque;
use std::fmt;

use rustc_hash::FxHashSet;

use super::{PermError, Permutation};

/// Default cap on the number of elements a group may materialize.
pub const DEFAULT_ORDER_BOUND: usize = 1_000_000;

/// A finite permutation group with its element set materialized.
///
/// `elements` is sorted in the canonical (lexicographic image array) order.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: FxHashSet<Permutation>,
}

impl PermGroup {
    /// Smallest group containing `gens`, with the default order bound.
    pub fn closure(gens: &[Permutation]) -> Result<Self, PermError> {
        Self::closure_bounded(gens, DEFAULT_ORDER_BOUND)
    }

    pub fn closure_bounded(gens: &[Permutation], bound: usize) -> Result<Self, PermError> {
        let first = gens.first().ok_or(PermError::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        Self::close(degree, gens.to_vec(), bound)
    }

    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> Self {
        Self::close(degree, vec![], 1).expect("trivial group fits any bound")
    }

    /// The full symmetric group S_d.
    pub fn symmetric(degree: usize) -> Result<Self, PermError> {
        if degree <= 1 {
            return Ok(Self::trivial(degree.max(1)));
        }
        let all: Vec<u32> = (1..=degree as u32).collect();
        let cycle = Permutation::from_cycles(degree, &[&all])?;
        let transp = Permutation::from_cycles(degree, &[&[1, 2]])?;
        Self::closure(&[transp, cycle])
    }

    fn close(degree: usize, generators: Vec<Permutation>, bound: usize) -> Result<Self, PermError> {
        let id = Permutation::identity(degree);
        let mut members = FxHashSet::default();
        let mut queue = VecDeque::new();
        members.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.mul_unchecked(g);
                if !members.contains(&y) {
                    if members.len() >= bound {
                        return Err(PermError::OrderBoundExceeded(bound));
                    }
                    members.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = members.iter().cloned().collect();
        elements.sort();
        Ok(Self {
            degree,
            generators,
            elements,
            members,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.members.contains(g)
    }

    /// Same element set.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    /// Orbit of `g` under conjugation by the group, in canonical order.
    pub fn conjugacy_class(&self, g: &Permutation) -> Result<Vec<Permutation>, PermError> {
        if !self.contains(g) {
            return Err(PermError::NotInGroup(g.to_string()));
        }
        let mut seen = FxHashSet::default();
        let mut queue = VecDeque::new();
        seen.insert(g.clone());
        queue.push_back(g.clone());
        while let Some(x) = queue.pop_front() {
            for h in &self.generators {
                let y = x.conj_unchecked(h);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut class: Vec<Permutation> = seen.into_iter().collect();
        class.sort();
        Ok(class)
    }

    /// All conjugacy classes, each sorted, ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Permutation>> {
        let mut done: FxHashSet<Permutation> = FxHashSet::default();
        let mut out = Vec::new();
        for g in &self.elements {
            if done.contains(g) {
                continue;
            }
            let class = self.conjugacy_class(g).expect("element of the group");
            done.extend(class.iter().cloned());
            out.push(class);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Elements of the group commuting with every element of `set`.
    pub fn centralizer(&self, set: &[Permutation]) -> Result<PermGroup, PermError> {
        let elems: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| set.iter().all(|s| g.mul_unchecked(s) == s.mul_unchecked(g)))
            .cloned()
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer(&self.generators)
            .expect("center is a subgroup")
    }

    /// Normal closure of `set` in this group.
    pub fn normal_closure(&self, set: &[Permutation]) -> Result<PermGroup, PermError> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut seen: FxHashSet<Permutation> = FxHashSet::default();
        for s in set {
            if !s.is_identity() && seen.insert(s.clone()) {
                gens.push(s.clone());
            }
        }
        if gens.is_empty() {
            return Ok(Self::trivial(self.degree));
        }
        loop {
            let sub = Self::close(self.degree, gens.clone(), self.order().max(1))?;
            // the closure is normal iff conjugating its generators stays inside
            let mut grew = false;
            for g in sub.generators.clone() {
                for h in &self.generators {
                    let c = g.conj_unchecked(h);
                    if !sub.contains(&c) && seen.insert(c.clone()) {
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(sub);
            }
        }
    }

    /// `[G, G]`: normal closure of the commutators of generator pairs.
    pub fn commutator_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                comms.push(a.commutator(b).expect("same degree"));
            }
        }
        self.normal_closure(&comms).expect("subgroup of a bounded group")
    }

    /// Subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<PermGroup, PermError> {
        for g in gens {
            if !self.contains(g) {
                return Err(PermError::NotInGroup(g.to_string()));
            }
        }
        Self::close(self.degree, gens.to_vec(), self.order())
    }

    fn subgroup_from_elements(&self, elements: Vec<Permutation>) -> Result<PermGroup, PermError> {
        // a closed element set; use it directly as generators of itself
        let gens: Vec<Permutation> = elements.iter().filter(|g| !g.is_identity()).cloned().collect();
        let members: FxHashSet<Permutation> = elements.iter().cloned().collect();
        let mut elements = elements;
        elements.sort();
        Ok(Self {
            degree: self.degree,
            generators: gens,
            elements,
            members,
        })
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, <", self.degree, self.order())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Permutation {
        Permutation::parse(s, d).unwrap()
    }

    #[test]
    fn closure_orders() {
        let s3 = PermGroup::closure(&[p("(1 2)", 3), p("(2 3)", 3)]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(PermGroup::closure(&[p("(1 2 3)", 3)]).unwrap().order(), 3);
        let v4 = PermGroup::closure(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(PermGroup::symmetric(5).unwrap().order(), 120);
    }

    #[test]
    fn closure_bound_and_bad_input() {
        let gens = [p("(1 2)", 4), p("(1 2 3 4)", 4)];
        assert!(matches!(
            PermGroup::closure_bounded(&gens, 10),
            Err(PermError::OrderBoundExceeded(10))
        ));
        assert!(matches!(PermGroup::closure(&[]), Err(PermError::NoGenerators)));
        assert!(PermGroup::closure(&[p("(1 2)", 3), p("(1 2)", 4)]).is_err());
    }

    #[test]
    fn classes() {
        let s3 = PermGroup::symmetric(3).unwrap();
        assert_eq!(
            s3.conjugacy_class(&p("(1 2)", 3)).unwrap(),
            vec![p("(2 3)", 3), p("(1 3)", 3), p("(1 2)", 3)]
                .into_iter()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
        );
        let s4 = PermGroup::symmetric(4).unwrap();
        assert_eq!(s4.conjugacy_class(&p("(1 2)", 4)).unwrap().len(), 6);
        let z4 = PermGroup::closure(&[p("(1 2 3 4)", 4)]).unwrap();
        for g in z4.elements() {
            assert_eq!(z4.conjugacy_class(g).unwrap(), vec![g.clone()]);
        }
        let a3 = PermGroup::closure(&[p("(1 2 3)", 3)]).unwrap();
        assert!(a3.conjugacy_class(&p("(1 2)", 3)).is_err());
        assert_eq!(s4.conjugacy_classes().len(), 5);
    }

    #[test]
    fn derived_and_center() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let s4 = PermGroup::symmetric(4).unwrap();
        assert_eq!(s3.commutator_subgroup().order(), 3);
        assert_eq!(s4.commutator_subgroup().order(), 12);
        assert_eq!(s3.center().order(), 1);
        let v4 = PermGroup::closure(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        assert_eq!(v4.center().order(), 4);
        assert_eq!(v4.commutator_subgroup().order(), 1);
        let d4 = PermGroup::closure(&[p("(1 2 3 4)", 4), p("(1 3)", 4)]).unwrap();
        assert_eq!(d4.center().order(), 2);
        assert_eq!(d4.commutator_subgroup().order(), 2);
    }

    #[test]
    fn transitivity_and_centralizer() {
        assert!(PermGroup::symmetric(4).unwrap().is_transitive());
        assert!(!PermGroup::closure(&[p("(1 2)", 3)]).unwrap().is_transitive());
        let s4 = PermGroup::symmetric(4).unwrap();
        let c = s4.centralizer(&[p("(1 2)", 4)]).unwrap();
        assert_eq!(c.order(), 4);
        assert!(c.contains(&p("(3 4)", 4)));
    }
}
