//! Run configuration: defaults, an optional TOML file, the environment, and
//! command-line flags, applied in that order.

use std::{
    fmt,
    num::NonZeroUsize,
    path::{Path, PathBuf},
    str::FromStr,
};

use nlbott_core::torus::WeightSpec;
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Environment variable naming the fixed-point cache file.
pub const CACHE_ENV: &str = "NLBOTT_CACHE";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::Config(format!(
                "unknown format `{other}` (expected text or json)"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub weights: WeightSpec,
    pub threads: NonZeroUsize,
    /// Fixed-point cache; `None` keeps the enumeration in memory only.
    pub cache_path: Option<PathBuf>,
    pub format: OutputFormat,
    /// Whether an inadmissible weight spec may be replaced automatically.
    pub retry: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            weights: WeightSpec::DEFAULT,
            threads: std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN),
            cache_path: None,
            format: OutputFormat::Text,
            retry: true,
        }
    }
}

/// Keys accepted in a config file; all optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub weights: Option<[i64; 4]>,
    pub threads: Option<usize>,
    pub cache: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub retry: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Values given on the command line; `None` leaves the lower layers alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub weights: Option<WeightSpec>,
    pub threads: Option<usize>,
    pub cache: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub no_retry: bool,
}

impl Config {
    /// Layers `file`, the `NLBOTT_CACHE` value `env_cache`, and `flags` over
    /// the defaults.
    pub fn resolve(
        file: Option<&FileConfig>,
        env_cache: Option<PathBuf>,
        flags: &Overrides,
    ) -> Result<Config> {
        let mut cfg = Config::default();
        if let Some(file) = file {
            if let Some(w) = file.weights {
                cfg.weights = WeightSpec(w);
            }
            if let Some(t) = file.threads {
                cfg.threads = threads(t)?;
            }
            if let Some(c) = &file.cache {
                cfg.cache_path = Some(c.clone());
            }
            if let Some(f) = file.format {
                cfg.format = f;
            }
            if let Some(r) = file.retry {
                cfg.retry = r;
            }
        }
        if let Some(c) = env_cache.filter(|c| !c.as_os_str().is_empty()) {
            cfg.cache_path = Some(c);
        }
        if let Some(w) = flags.weights {
            cfg.weights = w;
        }
        if let Some(t) = flags.threads {
            cfg.threads = threads(t)?;
        }
        if let Some(c) = &flags.cache {
            cfg.cache_path = Some(c.clone());
        }
        if let Some(f) = flags.format {
            cfg.format = f;
        }
        if flags.no_retry {
            cfg.retry = false;
        }
        Ok(cfg)
    }
}

fn threads(n: usize) -> Result<NonZeroUsize> {
    NonZeroUsize::new(n).ok_or_else(|| CliError::Config("threads must be at least 1".into()))
}

/// Parses `a,b,c,d` into a weight spec.
pub fn parse_weights(s: &str) -> Result<WeightSpec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::Config(format!(
            "weights `{s}` must be four comma-separated integers"
        )));
    }
    let mut out = [0i64; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|e| CliError::Config(format!("weight `{part}`: {e}")))?;
    }
    Ok(WeightSpec(out))
}
