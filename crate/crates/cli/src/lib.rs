//! Configuration, trace caching, orchestration and reports for the
//! `isosieve` command.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod pipeline;
pub mod report;

pub use commands::{execute, execute_with_style, Cli, Command, Output};
pub use config::{parse_config, parse_config_str, RunConfig};
pub use error::{CliError, Issue};
pub use pipeline::run_pipeline;
pub use report::Report;
