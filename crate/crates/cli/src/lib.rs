//! Batch front end: read an experiment config, run one task, write
//! JSON / CSV / DOT artifacts.

pub mod config;
pub mod run;
pub mod verify;

use hurwitz::crosscheck::CrossCheckError;
use hurwitz::fpgroup::FpError;
use hurwitz::laws::LawError;
use hurwitz::orbits::OrbitError;
use hurwitz::oracle::OracleError;
use hurwitz::{EquipError, PermError, TupleError};

pub use config::{ExperimentConfig, GroupSpec, Task};
pub use run::{execute, write_artifacts, Artifacts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => EXIT_VALIDATION,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::OrderBoundExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<EquipError> for CliError {
    fn from(e: EquipError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<TupleError> for CliError {
    fn from(e: TupleError) -> Self {
        match e {
            TupleError::NotReducible { .. } | TupleError::TooLong(_) => CliError::Budget(e.to_string()),
            TupleError::Perm(p) => p.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<FpError> for CliError {
    fn from(e: FpError) -> Self {
        match e {
            FpError::CosetBound { .. } => CliError::Budget(e.to_string()),
            FpError::Inconsistent(_) => CliError::Internal(e.to_string()),
            FpError::Perm(p) => p.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::KeyTooWide { .. } | OrbitError::SpaceBound { .. } => CliError::Budget(e.to_string()),
            OrbitError::Inconsistent(_) => CliError::Internal(e.to_string()),
            OrbitError::Fp(f) => f.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SpaceBound { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CrossCheckError> for CliError {
    fn from(e: CrossCheckError) -> Self {
        match e {
            CrossCheckError::Oracle(e) => e.into(),
            CrossCheckError::Orbit(e) => e.into(),
        }
    }
}

impl From<LawError> for CliError {
    fn from(e: LawError) -> Self {
        match e {
            LawError::Precondition(_) => CliError::Validation(e.to_string()),
            LawError::Tuple(e) => e.into(),
            LawError::Orbit(e) => e.into(),
        }
    }
}
