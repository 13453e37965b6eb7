//! Experiment configuration files.

use std::sync::Arc;

use hurwitz::orbits::{BoundaryConstraint, DEFAULT_SPACE_BOUND};
use hurwitz::oracle::DEFAULT_WORD_BOUND;
use hurwitz::tuples::DEFAULT_NORMALIZE_BUDGET;
use hurwitz::{CoveringTuple, EquippedGroup, PermGroup, Permutation};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    /// Class representatives of O, in order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equipment: Vec<String>,
    pub task: Task,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub outputs: Outputs,
}

/// `"symmetric: d"` or an explicit generating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Generated { degree: usize, generators: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Classes,
    Cgraph,
    Count,
    Scan,
    Ambiguity,
    LiftInvariant,
    Normalize,
    OracleCheck,
    Verify,
}

impl std::str::FromStr for Task {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| CliError::Validation(format!("unknown task {s:?}")))
    }
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Classes => "classes",
            Task::Cgraph => "cgraph",
            Task::Count => "count",
            Task::Scan => "scan",
            Task::Ambiguity => "ambiguity",
            Task::LiftInvariant => "lift-invariant",
            Task::Normalize => "normalize",
            Task::OracleCheck => "oracle-check",
            Task::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    /// Type vector (scan: the first row).
    pub type_vector: Option<Vec<usize>>,
    pub genus: usize,
    /// `"any"` or a group element; defaults to the identity.
    pub boundary: String,
    /// Keep only tuples generating the whole group.
    pub full_group: bool,
    /// Include zeta moves.
    pub zeta: bool,
    pub conjugation_quotient: bool,
    /// Attach the lifting invariant to each orbit.
    pub lifting: bool,
    /// Tuple literal for `lift-invariant` and `normalize`.
    pub tuple: Option<String>,
    pub scan: ScanParams,
    /// Branch-letter count for `oracle-check`.
    pub n: Option<usize>,
    pub budgets: Budgets,
    pub verify: VerifyParams,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            type_vector: None,
            genus: 0,
            boundary: "e".into(),
            full_group: true,
            zeta: false,
            conjugation_quotient: false,
            lifting: false,
            tuple: None,
            scan: ScanParams::default(),
            n: None,
            budgets: Budgets::default(),
            verify: VerifyParams::default(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanParams {
    pub step: Option<Vec<usize>>,
    pub count: usize,
}

impl Default for ScanParams {
    fn default() -> Self {
        Self { step: None, count: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Budgets {
    /// Tuples in one constrained space.
    pub space: u64,
    pub cosets: usize,
    pub words: u64,
    /// States explored by `normalize`.
    pub normalize: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            space: DEFAULT_SPACE_BOUND,
            cosets: hurwitz::fpgroup::DEFAULT_COSET_BOUND,
            words: DEFAULT_WORD_BOUND,
            normalize: DEFAULT_NORMALIZE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyParams {
    /// Criterion numbers to run; all when absent.
    pub criteria: Option<Vec<u8>>,
    pub oracle: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            criteria: None,
            oracle: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    pub json: Option<String>,
    pub csv: Option<String>,
    pub dot: Option<String>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn build_group(&self) -> Result<PermGroup, CliError> {
        match &self.group {
            None => Err(CliError::Validation(format!("task {} needs a group", self.task.name()))),
            Some(GroupSpec::Named(name)) => {
                let (kind, d) = name
                    .split_once(':')
                    .ok_or_else(|| CliError::Validation(format!("group {name:?}: expected \"symmetric: d\"")))?;
                let d: usize = d
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Validation(format!("group {name:?}: bad degree")))?;
                match kind.trim() {
                    "symmetric" if d >= 1 => Ok(PermGroup::symmetric(d)?),
                    _ => Err(CliError::Validation(format!("group {name:?}: unknown family"))),
                }
            }
            Some(GroupSpec::Generated { degree, generators }) => {
                let gens = generators
                    .iter()
                    .map(|g| Permutation::parse(g, *degree))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(PermGroup::closure(&gens)?)
            }
        }
    }

    pub fn build_equipment(&self) -> Result<Arc<EquippedGroup>, CliError> {
        let g = self.build_group()?;
        let reps = self
            .equipment
            .iter()
            .map(|r| Permutation::parse(r, g.degree()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Arc::new(EquippedGroup::build(g, &reps)?))
    }

    pub fn boundary(&self, e: &EquippedGroup) -> Result<BoundaryConstraint, CliError> {
        match self.params.boundary.trim() {
            "any" => Ok(BoundaryConstraint::Any),
            text => Ok(BoundaryConstraint::Equals(Permutation::parse(text, e.degree())?)),
        }
    }

    pub fn type_vector(&self, e: &EquippedGroup) -> Result<Vec<usize>, CliError> {
        let tau = self
            .params
            .type_vector
            .clone()
            .ok_or_else(|| CliError::Validation(format!("task {} needs params.type_vector", self.task.name())))?;
        if tau.len() != e.num_classes() {
            return Err(CliError::Validation(format!(
                "type vector has {} entries, the equipment has {} classes",
                tau.len(),
                e.num_classes()
            )));
        }
        Ok(tau)
    }

    pub fn tuple(&self, e: &Arc<EquippedGroup>) -> Result<CoveringTuple, CliError> {
        let text = self
            .params
            .tuple
            .as_deref()
            .ok_or_else(|| CliError::Validation(format!("task {} needs params.tuple", self.task.name())))?;
        Ok(CoveringTuple::parse(e.clone(), text)?)
    }
}
