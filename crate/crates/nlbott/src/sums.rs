//! Parallel localization sums and weight-spec selection.
//!
//! Contributions are exact rationals, so the reduction tree chosen by the
//! pool cannot change the result: any thread count gives identical output.

use std::{num::NonZeroUsize, ops::RangeInclusive};

use nlbott_core::{
    bott::{self, DegreeResult},
    fixlocus::FixedPoint,
    torus::{check_generic, WeightSpec},
};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, Result};

/// Random candidates tried after the fixed fallback.
pub const RANDOM_ATTEMPTS: usize = 16;
const RANDOM_SEED: u64 = 0x6e6c_626f_7474;
const RANDOM_BOUND: i64 = 1_000_000;

fn pool(threads: NonZeroUsize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.get())
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))
}

fn add(a: BigRational, b: BigRational) -> BigRational {
    a + b
}

/// `deg NL(W, d)` for `d >= 5`.
pub fn degree(
    points: &[FixedPoint],
    d: u32,
    s: &WeightSpec,
    threads: NonZeroUsize,
) -> Result<DegreeResult> {
    if d < 5 {
        return Err(nlbott_core::Error::UnsupportedDegree(i64::from(d)).into());
    }
    bott::ensure_admissible(points, s)?;
    let sum = pool(threads)?.install(|| {
        points
            .par_iter()
            .map(|fp| bott::contribution(fp, d, s))
            .try_reduce(BigRational::zero, |a, b| Ok(add(a, b)))
    })?;
    Ok(DegreeResult {
        d,
        degree: bott::integral(&sum)?,
        spec: *s,
        fixpoint_count: points.len(),
    })
}

/// `deg NL(W, 4)`, including the quartering of the raw sum.
pub fn degree_d4(
    points: &[FixedPoint],
    s: &WeightSpec,
    threads: NonZeroUsize,
) -> Result<DegreeResult> {
    bott::ensure_admissible(points, s)?;
    let raw = raw_sum_d4(points, s, threads)?;
    Ok(bott::finish_d4(&raw, s, points.len())?)
}

/// The `d = 4` sum before the factor 1/4.
pub fn raw_sum_d4(
    points: &[FixedPoint],
    s: &WeightSpec,
    threads: NonZeroUsize,
) -> Result<BigRational> {
    bott::ensure_admissible(points, s)?;
    Ok(pool(threads)?.install(|| {
        points
            .par_iter()
            .map(|fp| bott::contribution_d4(fp, s))
            .try_reduce(BigRational::zero, |a, b| Ok(add(a, b)))
    })?)
}

/// Routes `d = 4` to its own formula; `d < 4` is a usage error.
pub fn degree_any(
    points: &[FixedPoint],
    d: u32,
    s: &WeightSpec,
    threads: NonZeroUsize,
) -> Result<DegreeResult> {
    match d {
        0..=3 => Err(CliError::Usage(format!("--d must be at least 4, got {d}"))),
        4 => degree_d4(points, s, threads),
        _ => degree(points, d, s, threads),
    }
}

/// Degrees at every `d` in `degrees` (all `>= 5`); each point lifts its
/// standard monomials once for the whole range.
pub fn degrees(
    points: &[FixedPoint],
    degrees: RangeInclusive<u32>,
    s: &WeightSpec,
    threads: NonZeroUsize,
) -> Result<Vec<DegreeResult>> {
    bott::ensure_admissible(points, s)?;
    let n = degrees.clone().count();
    let zero = || vec![BigRational::zero(); n];
    let sums = pool(threads)?.install(|| {
        points
            .par_iter()
            .map(|fp| bott::contributions_over(fp, degrees.clone(), s))
            .try_reduce(zero, |a, b| {
                Ok(a.into_iter().zip(b).map(|(x, y)| add(x, y)).collect())
            })
    })?;
    degrees
        .zip(sums)
        .map(|(d, sum)| {
            Ok(DegreeResult {
                d,
                degree: bott::integral(&sum)?,
                spec: *s,
                fixpoint_count: points.len(),
            })
        })
        .collect()
}

/// The requested spec if admissible; otherwise, when `retry` is set, the
/// fixed fallback and then seeded random specs with distinct values.
/// Returns the chosen spec and every spec rejected on the way.
pub fn choose_spec(
    points: &[FixedPoint],
    requested: WeightSpec,
    retry: bool,
) -> Result<(WeightSpec, Vec<WeightSpec>)> {
    let admissible = |s: &WeightSpec| check_generic(s, points.iter().map(|p| &p.tangent));
    let mut tried = Vec::new();
    let mut candidates = vec![requested];
    if retry {
        candidates.push(WeightSpec::FALLBACK);
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        for _ in 0..RANDOM_ATTEMPTS {
            candidates.push(WeightSpec(std::array::from_fn(|_| {
                rng.gen_range(0..=RANDOM_BOUND)
            })));
        }
    }
    for s in candidates {
        if tried.contains(&s) {
            continue;
        }
        if admissible(&s) {
            return Ok((s, tried));
        }
        tried.push(s);
    }
    Err(CliError::NoAdmissibleSpec { tried })
}

/// An admissible spec different from `s`, for cross-checks.
pub fn alternate_spec(points: &[FixedPoint], s: &WeightSpec) -> Result<WeightSpec> {
    let start = if *s == WeightSpec::FALLBACK {
        WeightSpec::DEFAULT
    } else {
        WeightSpec::FALLBACK
    };
    let (alt, _) = choose_spec(points, start, true)?;
    if alt == *s {
        return Err(CliError::NoAdmissibleSpec { tried: vec![*s] });
    }
    Ok(alt)
}
