use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::equipped::EquippedGroup;
use crate::tuples::MoveSet;

use super::{orbit_decompose, OrbitQuery, DEFAULT_SPACE_BOUND};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub type_vector: Vec<usize>,
    pub genus: usize,
    pub components: u64,
    /// Wall time; kept out of JSON so reports stay reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

/// Component counts along `tau_start + k * tau_step`.
#[derive(Debug, Clone, Serialize)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    /// First row from which every count equals the last one; the observed
    /// stabilization onset, not a proven bound.
    pub onset: Option<usize>,
    /// Set when a row failed and the table stops early.
    pub partial: bool,
    pub error: Option<String>,
}

impl ScanTable {
    pub fn stable_count(&self) -> Option<u64> {
        self.onset.map(|_| self.rows.last().expect("onset implies rows").components)
    }

    /// Header `tau_1..tau_m,genus,components,seconds`.
    pub fn csv_header(&self, m: usize) -> Vec<String> {
        let mut h: Vec<String> = (1..=m).map(|i| format!("tau_{i}")).collect();
        h.extend(["genus", "components", "seconds"].map(String::from));
        h
    }

    pub fn csv_records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let mut rec: Vec<String> = r.type_vector.iter().map(|x| x.to_string()).collect();
                rec.push(r.genus.to_string());
                rec.push(r.components.to_string());
                rec.push(format!("{:.3}", r.seconds));
                rec
            })
            .collect()
    }
}

fn onset(rows: &[ScanRow]) -> Option<usize> {
    let last = rows.last()?.components;
    let mut k = rows.len() - 1;
    while k > 0 && rows[k - 1].components == last {
        k -= 1;
    }
    Some(k)
}

/// Counts Hurwitz-space components (boundary `e`, `G_t = G`) for `count`
/// types starting at `tau_start` and stepping by `tau_step`.
pub fn stabilization_scan(
    equipment: Arc<EquippedGroup>,
    tau_start: &[usize],
    tau_step: &[usize],
    count: usize,
    genus: usize,
    moves: MoveSet,
    space_bound: Option<u64>,
) -> ScanTable {
    let mut rows = Vec::new();
    let mut error = None;
    for k in 0..count {
        let tau: Vec<usize> = tau_start.iter().zip(tau_step).map(|(s, d)| s + k * d).collect();
        let q = OrbitQuery::hurwitz(equipment.clone(), tau.clone(), genus)
            .moves(moves)
            .bound(space_bound.unwrap_or(DEFAULT_SPACE_BOUND));
        let start = Instant::now();
        match orbit_decompose(&q) {
            Ok(r) => rows.push(ScanRow {
                type_vector: tau,
                genus,
                components: r.orbit_count as u64,
                seconds: start.elapsed().as_secs_f64(),
            }),
            Err(e) => {
                error = Some(e.to_string());
                break;
            }
        }
    }
    ScanTable {
        onset: onset(&rows),
        partial: error.is_some(),
        error,
        rows,
    }
}
