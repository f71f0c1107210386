use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// One validation failure, located by its dotted path in the config.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl Issue {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Issue { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn join_issues(issues: &[Issue]) -> String {
    issues.iter().map(|i| format!("\n  {i}")).collect()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid configuration:{}", join_issues(.0))]
    Validation(Vec<Issue>),
    #[error("trace cache {path}: {message}")]
    Cache { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] isosieve_core::Error),
    #[error("cannot write report: {0}")]
    Output(String),
}

impl CliError {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation(vec![Issue::new(path, message)])
    }

    /// Process exit code: 2 for bad input, 3 for an exhausted factorization
    /// budget, 4 when an internal cross-check fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(isosieve_core::Error::Timeout { .. }) => 3,
            CliError::Core(isosieve_core::Error::InternalInconsistency(_)) => 4,
            _ => 2,
        }
    }
}
