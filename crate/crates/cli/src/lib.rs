//! Command-line front end: argument parsing, versioned run reports and the
//! acceptance suite.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod report;

pub use args::{Cli, DEFAULT_SEED};
pub use commands::dispatch;
pub use report::{RunReport, Status};
