//! The acceptance suite: each criterion runs a fixed experiment and
//! compares against the expected outcome.

use std::sync::Arc;
use std::time::Instant;

use hurwitz::crosscheck::{compare_with_oracle, type_vectors, Constraint};
use hurwitz::fpgroup::{ambiguity_index, FiniteQuotient};
use hurwitz::laws::{central, conjugation_fixed, power_exchange, slide, slide_inverse};
use hurwitz::orbits::{orbit_decompose, stabilization_scan, BoundaryConstraint, OrbitQuery, ScanTable};
use hurwitz::oracle::Oracle;
use hurwitz::{CoveringTuple, EquippedGroup, MoveSet, PermGroup, Permutation};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::CliError;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "Clebsch-Hurwitz connectivity"),
    (2, "Wajnryb example"),
    (3, "stabilization equals ambiguity index"),
    (4, "ambiguity index consistency"),
    (5, "oracle equivalence"),
    (6, "move soundness"),
    (7, "zeta moves redundant"),
    (8, "handle normalization"),
    (9, "semigroup laws"),
];

/// Label, equipment, first type, step, row count.
type ScanPlan = (&'static str, Arc<EquippedGroup>, Vec<usize>, Vec<usize>, usize);

const ORACLE_WORD_LIMIT: u128 = 1_000_000;
const ORBIT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        format!(
            "criterion {} {status}: {}: {} ({:.1} s)",
            self.id, self.title, self.detail, self.seconds
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub criteria: Vec<CriterionReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.status == Status::Pass)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Run the word-oracle comparison.
    pub oracle: bool,
    /// Move set for the component counts.
    pub moves: MoveSet,
    /// Subset of criteria; all when `None`.
    pub criteria: Option<Vec<u8>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            oracle: true,
            moves: MoveSet::STANDARD,
            criteria: None,
        }
    }
}

/// Runs the selected criteria in order, calling `done` after each.
pub fn run_all(opts: &VerifyOptions, mut done: impl FnMut(&CriterionReport)) -> VerifyReport {
    let mut criteria = Vec::new();
    for (id, _) in CRITERIA {
        if opts.criteria.as_ref().is_some_and(|c| !c.contains(&id)) {
            continue;
        }
        let r = run_criterion(id, opts);
        done(&r);
        criteria.push(r);
    }
    VerifyReport { criteria }
}

enum Outcome {
    Checked(bool, String),
    Skipped(String),
}

pub fn run_criterion(id: u8, opts: &VerifyOptions) -> CriterionReport {
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown criterion");
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(opts.seed.wrapping_mul(31).wrapping_add(u64::from(id)));
    let outcome = match id {
        1 => clebsch_hurwitz(opts),
        2 => wajnryb(opts),
        3 => stabilization(opts),
        4 => ambiguity_consistency(opts),
        5 => oracle_equivalence(opts),
        6 => move_soundness(&mut rng),
        7 => zeta_redundant(),
        8 => normalization(&mut rng),
        9 => semigroup_laws(&mut rng),
        _ => Err(CliError::Validation(format!("no criterion {id}"))),
    };
    let (status, detail) = match outcome {
        Ok(Outcome::Checked(true, d)) => (Status::Pass, d),
        Ok(Outcome::Checked(false, d)) => (Status::Fail, d),
        Ok(Outcome::Skipped(d)) => (Status::Skipped, d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    CriterionReport {
        id,
        title,
        status,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn equip(group: PermGroup, reps: &[&str]) -> Result<Arc<EquippedGroup>, CliError> {
    let reps = reps
        .iter()
        .map(|r| Permutation::parse(r, group.degree()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Arc::new(EquippedGroup::build(group, &reps)?))
}

fn transpositions(d: usize) -> Result<Arc<EquippedGroup>, CliError> {
    equip(PermGroup::symmetric(d)?, &["(1 2)"])
}

fn s3_full() -> Result<Arc<EquippedGroup>, CliError> {
    equip(PermGroup::symmetric(3)?, &["(1 2)", "(1 2 3)"])
}

fn generated(degree: usize, gens: &[&str]) -> Result<PermGroup, CliError> {
    let gens = gens
        .iter()
        .map(|g| Permutation::parse(g, degree))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PermGroup::closure(&gens)?)
}

fn clebsch_hurwitz(opts: &VerifyOptions) -> Result<Outcome, CliError> {
    let cases = [
        (3, 4, 1),
        (3, 6, 1),
        (4, 6, 1),
        (4, 8, 1),
        (5, 8, 1),
        (3, 3, 0),
        (3, 5, 0),
        (4, 5, 0),
        (4, 7, 0),
        (5, 7, 0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, n, expected) in cases {
        let t = Instant::now();
        let q = OrbitQuery::hurwitz(transpositions(d)?, vec![n], 0).moves(opts.moves);
        let got = orbit_decompose(&q)?.orbit_count;
        let secs = t.elapsed().as_secs_f64();
        ok &= got == expected && secs < 60.0;
        parts.push(format!("S{d} n={n}: {got}"));
    }
    Ok(Outcome::Checked(ok, parts.join(", ")))
}

fn wajnryb(opts: &VerifyOptions) -> Result<Outcome, CliError> {
    let t = Instant::now();
    let e = equip(
        PermGroup::symmetric(8)?,
        &["(1 2)(3 4 5)", "(1 2 3)(4 5 6 7)", "(1 2 3 4 5 6 7)"],
    )?;
    let r = orbit_decompose(&OrbitQuery::hurwitz(e, vec![1, 1, 1], 0).moves(opts.moves))?;
    let secs = t.elapsed().as_secs_f64();
    Ok(Outcome::Checked(
        r.orbit_count >= 2 && secs < 600.0,
        format!("{} components over {} triples", r.orbit_count, r.space_size),
    ))
}

fn scan(
    e: &Arc<EquippedGroup>,
    start: &[usize],
    step: &[usize],
    count: usize,
    genus: usize,
    opts: &VerifyOptions,
) -> Result<ScanTable, CliError> {
    let table = stabilization_scan(e.clone(), start, step, count, genus, opts.moves, None);
    match (&table.error, table.partial) {
        (Some(err), _) => Err(CliError::Budget(err.clone())),
        (None, true) => Err(CliError::Budget("scan stopped early".into())),
        _ => Ok(table),
    }
}

/// Stable count of a scan, provided at least two rows share it.
fn settled(t: &ScanTable) -> Option<u64> {
    match t.onset {
        Some(k) if k + 1 < t.rows.len() => t.stable_count(),
        _ => None,
    }
}

fn counts(t: &ScanTable) -> String {
    let c: Vec<String> = t.rows.iter().map(|r| r.components.to_string()).collect();
    format!("[{}]", c.join(","))
}

fn stabilization(opts: &VerifyOptions) -> Result<Outcome, CliError> {
    let t = Instant::now();
    let runs: [ScanPlan; 2] = [
        ("transp", transpositions(3)?, vec![2], vec![2], 5),
        ("transp+3cyc", s3_full()?, vec![2, 2], vec![2, 0], 4),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, e, start, step, count) in runs {
        let a = ambiguity_index(e.clone())? as u64;
        let p0 = scan(&e, &start, &step, count, 0, opts)?;
        let p1 = scan(&e, &start, &step, count, 1, opts)?;
        let (s0, s1) = (settled(&p0), settled(&p1));
        ok &= s0 == Some(a) && s1 == Some(a);
        parts.push(format!("{name}: a={a} p0 {} p1 {}", counts(&p0), counts(&p1)));
    }
    ok &= t.elapsed().as_secs_f64() < 1800.0;
    Ok(Outcome::Checked(ok, parts.join("; ")))
}

fn ambiguity_consistency(opts: &VerifyOptions) -> Result<Outcome, CliError> {
    let t = Instant::now();
    let z3 = equip(generated(3, &["(1 2 3)"])?, &["(1 2 3)"])?;
    let klein = equip(
        generated(4, &["(1 2)(3 4)", "(1 3)(2 4)"])?,
        &["(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"],
    )?;
    let runs: [ScanPlan; 4] = [
        ("Z3", z3, vec![3], vec![3], 3),
        ("Klein", klein, vec![1, 1, 1], vec![1, 1, 1], 4),
        ("S3", transpositions(3)?, vec![2], vec![2], 5),
        ("S4", transpositions(4)?, vec![4], vec![2], 3),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, e, start, step, count) in runs {
        let a = ambiguity_index(e.clone())? as u64;
        let s = scan(&e, &start, &step, count, 0, opts)?;
        ok &= a == 1 && settled(&s) == Some(a);
        parts.push(format!("{name}: a={a} counts {}", counts(&s)));
    }
    ok &= t.elapsed().as_secs_f64() < 300.0;
    Ok(Outcome::Checked(ok, parts.join("; ")))
}

/// Instances over S3 with at most 6 branch letters, genus at most 1 and a
/// word space of at most a million words.
fn grid() -> Result<Vec<(Arc<EquippedGroup>, usize, usize)>, CliError> {
    let mut out = Vec::new();
    for e in [transpositions(3)?, s3_full()?] {
        let oracle = Oracle::new(&e);
        for p in 0..=1 {
            for n in 0..=6 {
                if oracle.space_size(n, p) <= ORACLE_WORD_LIMIT {
                    out.push((e.clone(), n, p));
                }
            }
        }
    }
    Ok(out)
}

fn oracle_equivalence(opts: &VerifyOptions) -> Result<Outcome, CliError> {
    if !opts.oracle {
        return Ok(Outcome::Skipped("oracle disabled".into()));
    }
    let t = Instant::now();
    let mut ok = true;
    let mut rows = 0;
    let mut bad = Vec::new();
    let instances = grid()?;
    for (e, n, p) in &instances {
        let a = compare_with_oracle(e.clone(), *n, *p, opts.moves, ORACLE_WORD_LIMIT as u64)?;
        rows += a.rows.len();
        if !a.holds() {
            ok = false;
            bad.push(format!("|O|={} n={n} p={p}", e.o_size()));
        }
    }
    ok &= t.elapsed().as_secs_f64() < 1800.0;
    let mut detail = format!("{} instances, {rows} type/constraint rows", instances.len());
    if !bad.is_empty() {
        detail += &format!("; disagreements at {}", bad.join(", "));
    }
    Ok(Outcome::Checked(ok, detail))
}

fn zeta_redundant() -> Result<Outcome, CliError> {
    let mut compared = 0;
    let mut bad = Vec::new();
    for (e, n, p) in grid()? {
        let identity = e.group().identity();
        for tau in type_vectors(e.num_classes(), n) {
            for c in Constraint::ALL {
                let mut q = OrbitQuery::new(e.clone(), tau.clone(), p);
                if c != Constraint::None {
                    q = q.with_boundary(BoundaryConstraint::Equals(identity.clone()));
                }
                q = q.full_group(c == Constraint::BoundaryAndFull);
                let a = orbit_decompose(&q.clone().moves(MoveSet::STANDARD))?;
                let b = orbit_decompose(&q.moves(MoveSet::WITH_ZETA))?;
                compared += 1;
                if a.orbit_sizes != b.orbit_sizes || a.representatives != b.representatives {
                    bad.push(format!("tau={tau:?} p={p} {c:?}"));
                }
            }
        }
    }
    let mut detail = format!("{compared} decompositions identical");
    if !bad.is_empty() {
        detail = format!("{} of {compared} differ: {}", bad.len(), bad.join(", "));
    }
    Ok(Outcome::Checked(bad.is_empty(), detail))
}

fn random_tuple(e: &Arc<EquippedGroup>, rng: &mut StdRng, n: usize, p: usize) -> Result<CoveringTuple, CliError> {
    let o = e.o_elements();
    let g = e.group().elements();
    let branch = (0..n).map(|_| o[rng.gen_range(0..o.len())].clone()).collect();
    let handles = (0..p)
        .map(|_| (g[rng.gen_range(0..g.len())].clone(), g[rng.gen_range(0..g.len())].clone()))
        .collect();
    Ok(CoveringTuple::new(e.clone(), branch, handles)?)
}

fn is_full(t: &CoveringTuple) -> bool {
    t.generated_subgroup().same_as(t.equipment().group())
}

/// Rejection sampling; gives up after a million draws.
fn sample(
    e: &Arc<EquippedGroup>,
    rng: &mut StdRng,
    n: usize,
    p: usize,
    keep: impl Fn(&CoveringTuple) -> bool,
) -> Result<CoveringTuple, CliError> {
    for _ in 0..1_000_000 {
        let t = random_tuple(e, rng, n, p)?;
        if keep(&t) {
            return Ok(t);
        }
    }
    Err(CliError::Budget(format!("no admissible tuple of shape ({n}, {p}) found")))
}

fn move_soundness(rng: &mut StdRng) -> Result<Outcome, CliError> {
    const TRIALS: usize = 100_000;
    let mut violations = 0;
    let mut total = 0;
    for e in [transpositions(3)?, s3_full()?, transpositions(4)?] {
        let quot = FiniteQuotient::build(e.clone())?;
        for _ in 0..TRIALS {
            let n = rng.gen_range(1..=6);
            let p = rng.gen_range(0..=2);
            let t = random_tuple(&e, rng, n, p)?;
            let moves = MoveSet::WITH_ZETA.moves(n, p);
            if moves.is_empty() {
                continue;
            }
            let mv = moves[rng.gen_range(0..moves.len())];
            let u = t.apply(mv)?;
            total += 1;
            let sound = u.boundary() == t.boundary()
                && u.tuple_type() == t.tuple_type()
                && u.genus() == t.genus()
                && u.generated_subgroup().same_as(&t.generated_subgroup())
                && quot.lifting_invariant(&u)? == quot.lifting_invariant(&t)?
                && u.apply(mv.inverse())? == t;
            if !sound {
                violations += 1;
            }
        }
    }
    Ok(Outcome::Checked(
        violations == 0,
        format!("{violations} violations in {total} moves"),
    ))
}

fn normalization(rng: &mut StdRng) -> Result<Outcome, CliError> {
    let e = transpositions(3)?;
    let mut solved = 0;
    let mut max_explored = 0;
    for k in 0..100 {
        let p = 1 + k % 2;
        let t = sample(&e, rng, 8, p, |t| t.boundary().is_identity() && is_full(t))?;
        let Ok(out) = t.normalize_handles(1_000_000) else {
            continue;
        };
        let trivial = out.tuple.handles().iter().all(|(a, b)| a.is_identity() && b.is_identity());
        if trivial && t.apply_all(&out.moves)? == out.tuple {
            solved += 1;
            max_explored = max_explored.max(out.explored);
        }
    }
    Ok(Outcome::Checked(
        solved == 100,
        format!("{solved}/100 certified, at most {max_explored} states explored"),
    ))
}

fn semigroup_laws(rng: &mut StdRng) -> Result<Outcome, CliError> {
    const SAMPLES: usize = 1000;
    let equipments = [transpositions(3)?, s3_full()?];
    let (mut slides, mut literal, mut centrals, mut fixed, mut exchanges) = (0, 0, 0, 0, 0);
    for k in 0..SAMPLES {
        let e = &equipments[k % 2];
        let (n1, n2) = (rng.gen_range(1..4), rng.gen_range(1..4));
        let t1 = random_tuple(e, rng, n1, 0)?;
        let t2 = random_tuple(e, rng, n2, 0)?;
        slides += slide(&t1, &t2, ORBIT_BUDGET)?.is_equal() as usize;
        literal += slide_inverse(&t1, &t2, ORBIT_BUDGET)?.is_equal() as usize;

        let n1 = 2 * rng.gen_range(1..3);
        let t1 = sample(e, rng, n1, 0, |t| t.boundary().is_identity())?;
        let n2 = rng.gen_range(1..4);
        let t2 = random_tuple(e, rng, n2, 0)?;
        centrals += central(&t1, &t2, ORBIT_BUDGET)?.is_equal() as usize;

        let n = 2 * rng.gen_range(2..4);
        let t = sample(e, rng, n, 0, |t| t.boundary().is_identity() && is_full(t))?;
        let g = e.group().elements();
        let h = &g[rng.gen_range(0..g.len())];
        fixed += conjugation_fixed(&t, h, ORBIT_BUDGET)?.is_equal() as usize;

        let transp = &e.classes()[0];
        let g1 = &transp[rng.gen_range(0..transp.len())];
        let g2 = &transp[rng.gen_range(0..transp.len())];
        let n = rng.gen_range(2..5);
        let s = sample(e, rng, n, 0, is_full)?;
        exchanges += power_exchange(g1, g2, 2, &s, ORBIT_BUDGET)?.is_equal() as usize;
    }
    let ok = [slides, centrals, fixed, exchanges].iter().all(|&c| c == SAMPLES);
    Ok(Outcome::Checked(
        ok,
        format!(
            "slide {slides}/{SAMPLES} (inverse-conjugator form {literal}/{SAMPLES}), \
             central {centrals}/{SAMPLES}, conjugation {fixed}/{SAMPLES}, square exchange {exchanges}/{SAMPLES}"
        ),
    ))
}
