//! Driver for `nlbott-core`: configuration, the fixed-point cache, parallel
//! localization sums, reports and the verification suite.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod sums;
pub mod verify;

pub use config::{Config, OutputFormat};
pub use error::{CliError, Result};
