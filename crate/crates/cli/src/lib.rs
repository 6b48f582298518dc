//! Scenario simulation and verification front end.

pub mod commands;
pub mod output;
pub mod scenario;
pub mod verify;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("controller `{controller}` diverged at t = {t}")]
    Divergence { controller: String, t: f64 },

    #[error("{0}")]
    Core(#[from] unified_clf::Error),

    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    /// 2 for bad input, 3 for a diverged simulation, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Divergence { .. } => 3,
            CliError::Output { .. } | CliError::Core(_) | CliError::VerifyFailed => 1,
        }
    }
}
