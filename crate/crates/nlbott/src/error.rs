use std::path::PathBuf;

use nlbott_core::torus::WeightSpec;

/// Failures of the driver layer; kernel errors are wrapped unchanged.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] nlbott_core::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache {} is not valid JSON: {source}", path.display())]
    CacheFormat {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("cache record {index} is malformed: {detail}")]
    CacheRecord { index: usize, detail: String },
    #[error("no admissible weight spec found; tried {}", format_specs(.tried))]
    NoAdmissibleSpec { tried: Vec<WeightSpec> },
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

fn format_specs(specs: &[WeightSpec]) -> String {
    specs
        .iter()
        .map(|s| format!("({s})"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl CliError {
    /// Process exit status: 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
