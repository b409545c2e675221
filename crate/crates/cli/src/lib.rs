//! Library side of the `twistfloer` binary: argument parsing, config
//! merging, command dispatch and the acceptance suite.

pub mod acceptance;
pub mod app;
pub mod commands;
pub mod config;

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

/// Bumped whenever a JSON output changes shape. Documented in the README.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] twistfloer_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0} acceptance criteria failed")]
    AcceptanceFailed(usize),
}

impl CliError {
    /// 2 for bad input, 3 for domain errors, 4 for numerical failures,
    /// 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(twistfloer_core::Error::Numeric { .. }) => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) | CliError::AcceptanceFailed(_) => 1,
        }
    }
}

/// Pretty JSON with a trailing newline; struct fields keep declaration order.
pub fn render_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    std::fs::write(path, render_json(value)?)?;
    Ok(())
}
