//! Command-line front end: configuration, jobs, CSV and SVG output, and the acceptance suite.

pub mod acceptance;
pub mod config;
pub mod jobs;
pub mod output;
pub mod svg;

pub use config::{Entries, ExperimentConfig, Job};
pub use jobs::{run, JobReport};
pub use output::{exit_code, write_outputs, Table};
pub use svg::{render_svg, write_svg};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Worker count from OSCILLAB_THREADS, if set.
pub fn threads_from_env(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("OSCILLAB_THREADS: must be a positive integer, got '{v}'"))),
        },
    }
}
