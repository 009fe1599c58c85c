//! Std companion of `factorlens-core`: spec files, reports in JSON and CSV,
//! the command implementations behind the `factorlens` binary, and the
//! reproduction suite.

pub mod cli;
pub mod commands;
pub mod report;
pub mod spec;
pub mod suite;
pub mod target;

use factorlens_core::Error;

/// Default cap on enumerations and completions.
pub const DEFAULT_BUDGET: u64 = factorlens_core::relations::DEFAULT_COMPLETION_BUDGET;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    /// A budget ran out; whatever was computed has been emitted.
    pub const PARTIAL: i32 = 2;
    /// `paper-suite` only: some criterion failed.
    pub const FAILED: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(e) if is_resource(e) => exit::PARTIAL,
            _ => exit::INPUT,
        }
    }
}

/// Errors that mean "not enough budget or depth" rather than bad input.
pub fn is_resource(e: &Error) -> bool {
    matches!(e, Error::Budget { .. } | Error::Uncertified { .. })
}
