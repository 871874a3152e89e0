//! Command-line front end: spec files in, deterministic JSON reports out.

pub mod app;
pub mod report;
pub mod spec;

use thiserror::Error;

pub use app::{run, Cli};

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    #[error("input error: {0}")]
    Input(String),
    /// The engine failed or a cross-check disagreed; exit code 1.
    #[error("analysis error: {0}")]
    Analysis(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Analysis(_) => 1,
        }
    }
}
