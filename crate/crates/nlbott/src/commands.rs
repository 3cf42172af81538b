//! The four subcommands, returning their output instead of printing it.

use std::time::Instant;

use nlbott_core::{
    fixlocus::{Census, FixedPoint},
    formula::{compare, interpolate, reference_formula},
    torus::WeightSpec,
};

use crate::{
    cache::{self, CacheFile, Source},
    config::{Config, OutputFormat},
    error::{CliError, Result},
    report::{DegreeReport, FormulaReport},
    sums, verify,
};

/// Minimal node count for a formula fit: the answer has degree 32.
pub const MIN_NODES: u32 = 33;

/// What a command produced: stdout text, diagnostics for stderr, and
/// whether it succeeded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub notes: Vec<String>,
    pub success: bool,
}

fn load(cfg: &Config, notes: &mut Vec<String>) -> Result<(Vec<FixedPoint>, Source)> {
    let (points, source) = cache::load_or_build(cfg.cache_path.as_deref())?;
    if let Some(path) = &cfg.cache_path {
        let how = match source {
            Source::Loaded => "loaded",
            Source::Refreshed => "written",
            Source::Computed => "unused",
        };
        notes.push(format!("cache {how}: {}", path.display()));
    }
    Ok((points, source))
}

fn spec_for(points: &[FixedPoint], cfg: &Config, notes: &mut Vec<String>) -> Result<WeightSpec> {
    let (spec, tried) = sums::choose_spec(points, cfg.weights, cfg.retry)?;
    for bad in tried {
        notes.push(format!("weight spec ({bad}) is not generic; retrying"));
    }
    Ok(spec)
}

pub fn degree(d: u32, cfg: &Config) -> Result<Outcome> {
    if d < 4 {
        return Err(CliError::Usage(format!("--d must be at least 4, got {d}")));
    }
    let start = Instant::now();
    let mut notes = Vec::new();
    let (points, _) = load(cfg, &mut notes)?;
    let spec = spec_for(&points, cfg, &mut notes)?;
    let r = sums::degree_any(&points, d, &spec, cfg.threads)?;
    let report = DegreeReport::new(&r, start.elapsed());
    let stdout = match cfg.format {
        OutputFormat::Text => report.text(),
        OutputFormat::Json => json_line(&report),
    };
    Ok(Outcome {
        stdout,
        notes,
        success: true,
    })
}

pub fn formula(dmin: u32, dmax: u32, cfg: &Config) -> Result<Outcome> {
    if dmin < 5 {
        return Err(CliError::Usage(format!(
            "--dmin must be at least 5, got {dmin}"
        )));
    }
    if dmax < dmin || dmax - dmin + 1 < MIN_NODES {
        return Err(CliError::Usage(format!(
            "need at least {MIN_NODES} nodes (dmax - dmin >= {}), got d={dmin}..{dmax}",
            MIN_NODES - 1
        )));
    }
    let start = Instant::now();
    let mut notes = Vec::new();
    let (points, _) = load(cfg, &mut notes)?;
    let spec = spec_for(&points, cfg, &mut notes)?;
    let values = sums::degrees(&points, dmin..=dmax, &spec, cfg.threads)?;
    let nodes: Vec<_> = values
        .iter()
        .map(|r| (i64::from(r.d), r.degree.clone()))
        .collect();
    let fitted = interpolate(&nodes)?;
    let cmp = compare(&fitted, &reference_formula());
    let report = FormulaReport::new(dmin, dmax, &fitted, &cmp, spec.0, start.elapsed());
    let stdout = match cfg.format {
        OutputFormat::Text => report.text(),
        OutputFormat::Json => json_line(&report),
    };
    Ok(Outcome {
        stdout,
        notes,
        success: report.matches,
    })
}

pub fn fixpoints(cfg: &Config, records: bool) -> Result<Outcome> {
    let mut notes = Vec::new();
    let (points, _) = load(cfg, &mut notes)?;
    let stdout = if records || cfg.format == OutputFormat::Json {
        let mut s = serde_json::to_string_pretty(&CacheFile::from_points(&points).fixpoints)
            .expect("records serialize");
        s.push('\n');
        s
    } else {
        format!("{}\n", Census::of(&points))
    };
    Ok(Outcome {
        stdout,
        notes,
        success: true,
    })
}

pub fn verify(cfg: &Config) -> Result<Outcome> {
    let mut notes = Vec::new();
    let (points, source) = match load(cfg, &mut notes) {
        Ok(loaded) => loaded,
        Err(e) => {
            // an unreadable cache is itself a failed check
            let check = verify::Check {
                name: "cache-consistency",
                passed: false,
                detail: e.to_string(),
            };
            return Ok(verify_outcome(vec![check], cfg, notes));
        }
    };
    let checks = verify::run(&points, source, cfg);
    Ok(verify_outcome(checks, cfg, notes))
}

fn verify_outcome(checks: Vec<verify::Check>, cfg: &Config, notes: Vec<String>) -> Outcome {
    let success = checks.iter().all(|c| c.passed);
    let stdout = match cfg.format {
        OutputFormat::Json => json_line(&checks),
        OutputFormat::Text => {
            let passed = checks.iter().filter(|c| c.passed).count();
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            s.push_str(&format!(
                "verify: {passed}/{} checks passed\n",
                checks.len()
            ));
            s
        }
    };
    Outcome {
        stdout,
        notes,
        success,
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}
