//! Instance and solution files, seeded generation, verification, solver
//! dispatch and the benchmark harness behind the `greenpack` binary.

// Errors carry exact rationals for diagnostics; they are rare, so their size does not matter.
#![allow(clippy::result_large_err)]

pub mod algo;
pub mod bench;
pub mod format;
pub mod generate;
pub mod verify;

use std::path::PathBuf;

use greenpack_core::Error as SolveError;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const INFEASIBLE: u8 = 2;
    pub const BUDGET_EXHAUSTED: u8 = 3;
    pub const IO: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{field}: cannot parse {value:?}: {message}")]
    Number { field: String, value: String, message: String },
    #[error("sizes is empty; set \"empty\": true for an intentionally empty instance")]
    EmptyNotMarked,
    #[error("{0}")]
    Invalid(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Solve(SolveError::InfeasibleBudget { .. }) => exit::INFEASIBLE,
            CliError::Solve(SolveError::BudgetExceeded { .. }) => exit::BUDGET_EXHAUSTED,
            _ => exit::IO,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
