//! Agreement between the orbit engine and the word oracle.

use std::sync::Arc;

use serde::Serialize;

use crate::equipped::EquippedGroup;
use crate::oracle::{CoveringWord, Oracle, OracleConstraints, OracleError, WordLetter};
use crate::orbits::{orbit_decompose, BoundaryConstraint, OrbitError, OrbitQuery};
use crate::tuples::{CoveringTuple, MoveSet};

#[derive(Debug, thiserror::Error)]
pub enum CrossCheckError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Constraint {
    None,
    Boundary,
    BoundaryAndFull,
}

impl Constraint {
    pub const ALL: [Constraint; 3] = [Constraint::None, Constraint::Boundary, Constraint::BoundaryAndFull];
}

#[derive(Debug, Clone, Serialize)]
pub struct AgreementRow {
    pub type_vector: Vec<usize>,
    pub constraint: Constraint,
    pub oracle: usize,
    pub engine: usize,
    /// Multiset of reduced-word counts per oracle class equals the multiset of orbit sizes.
    pub sizes_match: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Agreement {
    pub n: usize,
    pub p: usize,
    pub words: u64,
    pub rows: Vec<AgreementRow>,
    /// Distinct orbit representatives land in distinct oracle classes.
    pub injective: bool,
    pub boundary_constant: bool,
}

impl Agreement {
    pub fn holds(&self) -> bool {
        self.injective && self.boundary_constant && self.rows.iter().all(|r| r.oracle == r.engine && r.sizes_match)
    }
}

/// All vectors of length `m` with entries summing to `n`.
pub fn type_vectors(m: usize, n: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in type_vectors(m - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn tuple_word(t: &CoveringTuple) -> CoveringWord {
    let mut w: Vec<WordLetter> = t.branch().iter().cloned().map(WordLetter::X).collect();
    w.extend(t.handles().iter().map(|(a, b)| WordLetter::Y(a.clone(), b.clone())));
    CoveringWord(w)
}

/// Compares class counts and class sizes for every type of length `n` in
/// genus `p`, under each [`Constraint`].
pub fn compare_with_oracle(
    e: Arc<EquippedGroup>,
    n: usize,
    p: usize,
    moves: MoveSet,
    word_bound: u64,
) -> Result<Agreement, CrossCheckError> {
    let oracle = Oracle::new(&e);
    let classes = oracle.classes(n, p, word_bound)?;
    let identity = e.group().identity();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for tau in type_vectors(e.num_classes(), n) {
        for c in Constraint::ALL {
            let mut q = OrbitQuery::new(e.clone(), tau.clone(), p).moves(moves);
            let mut oc = OracleConstraints {
                type_vector: Some(tau.clone()),
                ..Default::default()
            };
            if c != Constraint::None {
                q = q.with_boundary(BoundaryConstraint::Equals(identity.clone()));
                oc.boundary = Some(identity.clone());
            }
            if c == Constraint::BoundaryAndFull {
                q = q.full_group(true);
                oc.full_group = true;
            }
            let report = orbit_decompose(&q)?;
            let count = classes.count(&oc);
            let mut a = report.orbit_sizes.clone();
            let mut b = count.reduced_sizes.clone();
            a.sort_unstable();
            b.sort_unstable();
            if c == Constraint::None {
                for t in &report.representatives {
                    labels.push(classes.class_of(&tuple_word(t))?);
                }
            }
            rows.push(AgreementRow {
                type_vector: tau.clone(),
                constraint: c,
                oracle: count.class_count,
                engine: report.orbit_count,
                sizes_match: a == b,
            });
        }
    }
    let total = labels.len();
    labels.sort_unstable();
    labels.dedup();
    Ok(Agreement {
        n,
        p,
        words: classes.num_words(),
        rows,
        injective: labels.len() == total,
        boundary_constant: classes.boundary_constant(),
    })
}
