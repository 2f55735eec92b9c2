//! File formats, bundled fixtures, lattice export and the command layer
//! behind the `qcat` binary.

pub mod commands;
pub mod context;
pub mod dot;
pub mod fixtures;
pub mod schema;

use std::path::PathBuf;

use thiserror::Error;

use crate::adjunction::AdjunctionError;
use crate::completeness::CompletenessError;
use crate::quantale::QuantaleError;
use crate::vcat::CategoryError;

pub use context::{load_context, FuzzyContext};
pub use dot::to_dot;
pub use fixtures::{fixture, FIXTURE_NAMES};
pub use schema::{lattice_file, load_lattice_category};

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const VALIDATION: i32 = 1;
    pub const BUDGET: i32 = 2;
    pub const IO: i32 = 3;
}

#[derive(Debug, Error)]
pub enum FcaError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    /// `row` and `column` index the offending table from 0; the message
    /// counts from 1.
    #[error("{}", validation_message(.message, *.row, *.column))]
    Validation {
        message: String,
        row: Option<usize>,
        column: Option<usize>,
    },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Adjunction(#[from] AdjunctionError),
}

fn validation_message(message: &str, row: Option<usize>, column: Option<usize>) -> String {
    match (row, column) {
        (Some(r), Some(c)) => format!("validation error at row {}, column {}: {message}", r + 1, c + 1),
        (Some(r), None) => format!("validation error at row {}: {message}", r + 1),
        _ => format!("validation error: {message}"),
    }
}

impl From<CompletenessError> for FcaError {
    fn from(e: CompletenessError) -> Self {
        FcaError::Adjunction(e.into())
    }
}

impl FcaError {
    pub(crate) fn validation(message: impl Into<String>) -> Self {
        FcaError::Validation {
            message: message.into(),
            row: None,
            column: None,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        FcaError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            FcaError::Category(CategoryError::BudgetExceeded { .. })
                | FcaError::Adjunction(AdjunctionError::Category(CategoryError::BudgetExceeded { .. }))
                | FcaError::Adjunction(AdjunctionError::Completeness(CompletenessError::Category(
                    CategoryError::BudgetExceeded { .. }
                )))
        )
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            _ if self.is_budget() => exit::BUDGET,
            FcaError::Io { .. } | FcaError::Parse(_) | FcaError::Schema(_) | FcaError::UnknownFixture(_) => exit::IO,
            _ => exit::VALIDATION,
        }
    }
}

impl From<serde_json::Error> for FcaError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_data() {
            FcaError::Schema(e.to_string())
        } else {
            FcaError::Parse(e.to_string())
        }
    }
}
