//! JSON cache of the fixed-point enumeration.
//!
//! The file is regenerated when it is absent or carries a different
//! `schema_version`; any other defect is reported, never silently repaired.

use std::{
    fs,
    io::Write,
    path::{Path, PathBuf},
};

use nlbott_core::{
    fixlocus::{enumerate_all, FixedPoint, StratumTag},
    poly::Polynomial,
    torus::{CharBag, Character},
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointRecord {
    pub tag: String,
    /// The 16 tangent weights, with repetition, in increasing order.
    pub tangent: Vec<[i64; 4]>,
    /// The 19 quartic generators as polynomial text.
    pub quartics: Vec<String>,
    pub pencil: [[i64; 4]; 2],
    pub provenance: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub schema_version: u32,
    pub fixpoints: Vec<FixedPointRecord>,
}

impl From<&FixedPoint> for FixedPointRecord {
    fn from(fp: &FixedPoint) -> Self {
        FixedPointRecord {
            tag: fp.tag.as_str().to_owned(),
            tangent: fp.tangent.expanded().map(|c| c.0).collect(),
            quartics: fp.quartics.iter().map(|m| m.to_string()).collect(),
            pencil: [fp.pencil[0].0, fp.pencil[1].0],
            provenance: fp.provenance.clone(),
        }
    }
}

impl FixedPointRecord {
    pub fn to_fixed_point(&self, index: usize) -> Result<FixedPoint> {
        let bad = |detail: String| CliError::CacheRecord { index, detail };
        let tag = StratumTag::parse(&self.tag)
            .ok_or_else(|| bad(format!("unknown stratum tag `{}`", self.tag)))?;
        let tangent: CharBag = self.tangent.iter().map(|c| Character(*c)).collect();
        let quartics = self
            .quartics
            .iter()
            .map(|text| {
                let p = Polynomial::parse(text).map_err(|e| bad(format!("`{text}`: {e}")))?;
                match (p.is_monomial(), p.leading_monomial()) {
                    (true, Some(m)) => Ok(m),
                    _ => Err(bad(format!("`{text}` is not a monomial"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FixedPoint {
            tag,
            tangent,
            quartics,
            pencil: [Character(self.pencil[0]), Character(self.pencil[1])],
            provenance: self.provenance.clone(),
        })
    }
}

impl CacheFile {
    pub fn from_points(points: &[FixedPoint]) -> Self {
        CacheFile {
            schema_version: SCHEMA_VERSION,
            fixpoints: points.iter().map(FixedPointRecord::from).collect(),
        }
    }

    pub fn to_points(&self) -> Result<Vec<FixedPoint>> {
        self.fixpoints
            .iter()
            .enumerate()
            .map(|(i, r)| r.to_fixed_point(i))
            .collect()
    }

    /// Pretty JSON with a trailing newline; identical input gives identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("cache records serialize");
        s.push('\n');
        s
    }
}

/// Where a run's fixed points came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Enumerated in memory, no cache configured.
    Computed,
    /// Enumerated and written to the cache (absent or stale schema).
    Refreshed,
    /// Read from an existing cache.
    Loaded,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

/// Reads the cache; `Ok(None)` when absent or written under another schema.
pub fn read(path: &Path) -> Result<Option<CacheFile>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io_err(path)(e)),
    };
    #[derive(Deserialize)]
    struct Header {
        schema_version: Option<u32>,
    }
    let header: Header = serde_json::from_str(&text).map_err(|source| CliError::CacheFormat {
        path: path.to_owned(),
        source,
    })?;
    if header.schema_version != Some(SCHEMA_VERSION) {
        return Ok(None);
    }
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|source| CliError::CacheFormat {
            path: path.to_owned(),
            source,
        })
}

/// Writes through a sibling temporary file so readers never see a torn file.
pub fn write(path: &Path, cache: &CacheFile) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let mut tmp = PathBuf::from(path);
    tmp.as_mut_os_string().push(".tmp");
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(cache.to_json().as_bytes())
        .and_then(|()| f.sync_all())
        .map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

/// The fixed points for a run: from the cache when it is current, otherwise
/// enumerated (and written back when a cache path is configured).
pub fn load_or_build(path: Option<&Path>) -> Result<(Vec<FixedPoint>, Source)> {
    let Some(path) = path else {
        return Ok((enumerate_all()?, Source::Computed));
    };
    if let Some(cache) = read(path)? {
        return Ok((cache.to_points()?, Source::Loaded));
    }
    let points = enumerate_all()?;
    write(path, &CacheFile::from_points(&points))?;
    Ok((points, Source::Refreshed))
}
