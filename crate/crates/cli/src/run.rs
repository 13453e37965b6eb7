use std::path::{Path, PathBuf};
use std::sync::Arc;

use hurwitz::crosscheck::compare_with_oracle;
use hurwitz::fpgroup::FiniteQuotient;
use hurwitz::orbits::{orbit_decompose, stabilization_scan, OrbitQuery};
use hurwitz::{EquippedGroup, MoveSet};
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Task};
use crate::verify::{self, VerifyOptions};
use crate::{CliError, EXIT_BUDGET, EXIT_INTERNAL, EXIT_OK};

/// Results of one task. `exit` is nonzero when the task produced a report
/// but hit a budget or found an inconsistency along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub json: Value,
    pub csv: Option<String>,
    pub dot: Option<String>,
    pub exit: i32,
}

impl Artifacts {
    fn json(json: Value) -> Self {
        Self {
            json,
            csv: None,
            dot: None,
            exit: EXIT_OK,
        }
    }
}

fn moves(config: &ExperimentConfig) -> MoveSet {
    MoveSet {
        zeta: config.params.zeta,
    }
}

fn quotient(config: &ExperimentConfig, e: &Arc<EquippedGroup>) -> Result<FiniteQuotient, CliError> {
    Ok(FiniteQuotient::build_bounded(e.clone(), config.params.budgets.cosets, false)?)
}

pub fn execute(config: &ExperimentConfig) -> Result<Artifacts, CliError> {
    if config.task == Task::Verify {
        return Ok(run_verify(config));
    }
    let e = config.build_equipment()?;
    let p = &config.params;
    match config.task {
        Task::Classes => Ok(Artifacts::json(classes(&e))),
        Task::Cgraph => {
            let g = e.c_graph();
            let mut out = Artifacts::json(json!({
                "vertices": g.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "edges": g.num_edges(),
                "components": g.components(),
            }));
            out.dot = Some(g.to_dot());
            Ok(out)
        }
        Task::Count => {
            let mut q = OrbitQuery::new(e.clone(), config.type_vector(&e)?, p.genus)
                .with_boundary(config.boundary(&e)?)
                .full_group(p.full_group)
                .moves(moves(config))
                .quotient_by_conjugation(p.conjugation_quotient)
                .bound(p.budgets.space);
            if p.lifting {
                q = q.with_lifting(Arc::new(quotient(config, &e)?));
            }
            let report = orbit_decompose(&q)?;
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["components"] = json!(report.orbit_count);
            Ok(Artifacts::json(v))
        }
        Task::Scan => {
            let start = config.type_vector(&e)?;
            let step = p
                .scan
                .step
                .clone()
                .ok_or_else(|| CliError::Validation("scan needs params.scan.step".into()))?;
            if step.len() != start.len() {
                return Err(CliError::Validation("scan step and type vector differ in length".into()));
            }
            let table = stabilization_scan(e, &start, &step, p.scan.count, p.genus, moves(config), Some(p.budgets.space));
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Internal(format!("csv: {e}"));
            w.write_record(table.csv_header(start.len())).map_err(io)?;
            for r in table.csv_records() {
                w.write_record(r).map_err(io)?;
            }
            let csv = String::from_utf8(w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?)
                .expect("csv is utf-8");
            let mut out = Artifacts::json(json!({
                "rows": table.rows,
                "onset": table.onset,
                "stable_count": table.stable_count(),
                "partial": table.partial,
                "error": table.error,
            }));
            out.csv = Some(csv);
            if table.partial {
                out.exit = EXIT_BUDGET;
            }
            Ok(out)
        }
        Task::Ambiguity => {
            let q = quotient(config, &e)?;
            Ok(Artifacts::json(json!({
                "ambiguity_index": q.ambiguity_index()?,
                "quotient_order": q.order(),
                "abelianization_order": q.abelianization_order()?,
                "group_order": e.group().order(),
                "commutator_order": e.group().commutator_subgroup().order(),
                "presentation": q.presentation().to_string(),
            })))
        }
        Task::LiftInvariant => {
            let t = config.tuple(&e)?;
            let q = quotient(config, &e)?;
            let inv = q.lifting_invariant(&t)?;
            Ok(Artifacts::json(json!({
                "tuple": t.to_string(),
                "invariant": inv.0,
                "quotient_order": q.order(),
                "regular_permutation": q.as_permutation(inv).to_string(),
            })))
        }
        Task::Normalize => {
            let t = config.tuple(&e)?;
            let n = t.normalize_handles(p.budgets.normalize)?;
            let certified = t.apply_all(&n.moves)? == n.tuple;
            let out = Artifacts::json(json!({
                "input": t.to_string(),
                "output": n.tuple.to_string(),
                "moves": n.moves.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "explored": n.explored,
                "certified": certified,
            }));
            if !certified {
                return Err(CliError::Internal("move word does not reproduce the output".into()));
            }
            Ok(out)
        }
        Task::OracleCheck => {
            let n = p
                .n
                .ok_or_else(|| CliError::Validation("oracle-check needs params.n".into()))?;
            let a = compare_with_oracle(e, n, p.genus, moves(config), p.budgets.words)?;
            let mut out = Artifacts::json(serde_json::to_value(&a).expect("agreement serializes"));
            out.json["holds"] = json!(a.holds());
            if !a.holds() {
                out.exit = EXIT_INTERNAL;
            }
            Ok(out)
        }
        Task::Verify => unreachable!("handled above"),
    }
}

fn classes(e: &EquippedGroup) -> Value {
    let g = e.group();
    let classes: Vec<Value> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            json!({
                "representative": c[0].to_string(),
                "size": c.len(),
                "order": c[0].order(),
                "o_class": e.class_index(&c[0]).ok(),
            })
        })
        .collect();
    json!({
        "group_order": g.order(),
        "degree": g.degree(),
        "classes": classes,
        "o": e.o_elements().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "o_generates": e.generates(),
    })
}

fn run_verify(config: &ExperimentConfig) -> Artifacts {
    let opts = VerifyOptions {
        seed: config.params.seed,
        oracle: config.params.verify.oracle,
        moves: moves(config),
        criteria: config.params.verify.criteria.clone(),
    };
    let report = verify::run_all(&opts, |c| println!("{}", c.line()));
    Artifacts::json(serde_json::to_value(&report).expect("report serializes"))
}

/// Writes the artifacts under `dir`, returning the paths written.
pub fn write_artifacts(config: &ExperimentConfig, a: &Artifacts, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir)?;
    let o = &config.outputs;
    let mut written = Vec::new();
    let mut put = |name: &str, text: &str| -> Result<(), CliError> {
        let path = dir.join(name);
        std::fs::write(&path, text)?;
        written.push(path);
        Ok(())
    };
    let json_name = o.json.clone().unwrap_or_else(|| format!("{}.json", config.task.name()));
    put(&json_name, &(serde_json::to_string_pretty(&a.json).expect("json") + "\n"))?;
    if let Some(csv) = &a.csv {
        put(o.csv.as_deref().unwrap_or("scan.csv"), csv)?;
    }
    if let Some(dot) = &a.dot {
        put(o.dot.as_deref().unwrap_or("cgraph.dot"), dot)?;
    }
    Ok(written)
}
