//! Named end-to-end checks behind `nlbott verify`.

use std::fmt;

use nlbott_core::{
    bott,
    fixlocus::{
        e1_deformation_ideal, enumerate_all, euler_characteristic_oracle, Cascade, Census,
        FixedPoint,
    },
    formula::reference_formula,
    ideal::{hilbert_polynomial, kbase, reduce_gb, saturate_t, Ideal},
    torus::WeightSpec,
};
use num_bigint::BigInt;
use serde::Serialize;

use crate::{cache::Source, config::Config, sums};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &'static str, r: Result<String, String>) -> Self {
        match r {
            Ok(d) => Check::new(name, true, d),
            Err(d) => Check::new(name, false, d),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

/// The quartic surface count.
pub const D4_TARGET: u32 = 38475;

fn closed_form_at(d: u32) -> BigInt {
    reference_formula().eval_int(i64::from(d)).to_integer()
}

fn cache_consistency(points: &[FixedPoint], source: Source) -> Check {
    if source != Source::Loaded {
        return Check::new("cache-consistency", true, "enumerated fresh");
    }
    let fresh = match enumerate_all() {
        Ok(p) => p,
        Err(e) => return Check::new("cache-consistency", false, e.to_string()),
    };
    if fresh.len() != points.len() {
        return Check::new(
            "cache-consistency",
            false,
            format!(
                "{} cached records, {} enumerated",
                points.len(),
                fresh.len()
            ),
        );
    }
    match fresh.iter().zip(points).position(|(a, b)| a != b) {
        None => Check::new(
            "cache-consistency",
            true,
            "cached records match enumeration",
        ),
        Some(i) => Check::new(
            "cache-consistency",
            false,
            format!("cached record {i} differs from the enumeration"),
        ),
    }
}

fn census(points: &[FixedPoint]) -> Check {
    let c = Census::of(points);
    let expected = Census {
        g2: 21,
        g2e1: 180,
        e2: 324,
    };
    Check::new(
        "euler-census",
        c == expected && c.total() == euler_characteristic_oracle(),
        format!("{c} (oracle {})", euler_characteristic_oracle()),
    )
}

fn ranks(points: &[FixedPoint]) -> Check {
    let r = points.iter().enumerate().try_for_each(|(i, fp)| {
        fp.validate().map_err(|e| format!("point {i}: {e}"))?;
        let gb = fp.quartic_basis();
        for d in 4..=10u32 {
            let n = kbase(&gb, d).len();
            if n != 4 * d as usize {
                return Err(format!("point {i}: kbase in degree {d} has {n} monomials"));
            }
        }
        Ok(())
    });
    Check::from_result(
        "rank-invariants",
        r.map(|()| format!("{} points: 19 quartics, kbase 4d for d=4..10", points.len())),
    )
}

fn hilbert_oracles() -> Check {
    let cases: [&[&str]; 3] = [
        &["x1^2", "x2^2"],
        &["x1*x2", "x1^2", "x2^3"],
        &["x0^2", "x0*x1", "x0*x2^2", "x1^4"],
    ];
    let r = cases.iter().try_for_each(|gens| {
        let ideal = Ideal::parse(gens).map_err(|e| e.to_string())?;
        let hp = hilbert_polynomial(&reduce_gb(&ideal)).map_err(|e| e.to_string())?;
        if hp.is_elliptic_quartic() {
            Ok(())
        } else {
            Err(format!("{gens:?} has Hilbert polynomial {hp}"))
        }
    });
    Check::from_result(
        "hilbert-oracles",
        r.map(|()| "4*t on all three closed-orbit ideals".into()),
    )
}

fn kernel_properties() -> Check {
    let r = (|| {
        let gb = reduce_gb(&Ideal::parse(&["x0^2", "x1^2"]).map_err(|e| e.to_string())?);
        let n = kbase(&gb, 5).len();
        if n != 20 {
            return Err(format!("kbase(<x0^2,x1^2>, 5) has {n} elements"));
        }
        let c = Cascade::run().map_err(|e| e.to_string())?;
        for rec in &c.e1 {
            let ideal =
                e1_deformation_ideal(&c.z[rec.z], rec.direction).map_err(|e| e.to_string())?;
            let sat = saturate_t(&ideal);
            if saturate_t(&sat) != sat {
                return Err(format!(
                    "saturation along {:?} is not idempotent",
                    rec.direction
                ));
            }
        }
        Ok(format!(
            "kbase 20; saturation idempotent on {} deformations",
            c.e1.len()
        ))
    })();
    Check::from_result("kernel-properties", r)
}

/// Runs every check on `points`; the weight spec is chosen per `cfg`.
pub fn run(points: &[FixedPoint], source: Source, cfg: &Config) -> Vec<Check> {
    let mut checks = vec![
        cache_consistency(points, source),
        census(points),
        ranks(points),
        hilbert_oracles(),
        kernel_properties(),
    ];
    let spec = match sums::choose_spec(points, cfg.weights, cfg.retry) {
        Ok((s, tried)) => {
            let detail = if tried.is_empty() {
                format!("({s}) admissible")
            } else {
                format!("({}) inadmissible, using ({s})", tried[0])
            };
            checks.push(Check::new("weight-spec", true, detail));
            s
        }
        Err(e) => {
            checks.push(Check::new("weight-spec", false, e.to_string()));
            return checks;
        }
    };
    checks.extend(sum_checks(points, &spec, cfg));
    checks
}

fn sum_checks(points: &[FixedPoint], s: &WeightSpec, cfg: &Config) -> Vec<Check> {
    let threads = cfg.threads;
    let err = |e: crate::error::CliError| e.to_string();
    let mut out = Vec::new();

    out.push(Check::from_result(
        "localization-count",
        bott::localized_point_count(points, s)
            .map_err(|e| e.to_string())
            .and_then(|n| {
                if n == BigInt::from(points.len()) && points.len() == 525 {
                    Ok(format!("sum of e16(T)/e16(T) = {n}"))
                } else {
                    Err(format!(
                        "sum of e16(T)/e16(T) = {n} over {} points",
                        points.len()
                    ))
                }
            }),
    ));

    out.push(Check::from_result(
        "d4-target",
        sums::raw_sum_d4(points, s, threads)
            .map_err(err)
            .and_then(|raw| {
                let r = bott::finish_d4(&raw, s, points.len()).map_err(|e| e.to_string())?;
                if r.degree == BigInt::from(D4_TARGET) {
                    Ok(format!("raw sum {raw} = 4 * {}", r.degree))
                } else {
                    Err(format!(
                        "degree {} (raw {raw}), expected {D4_TARGET}",
                        r.degree
                    ))
                }
            }),
    ));

    out.push(Check::from_result(
        "d5-closed-form",
        sums::degree(points, 5, s, threads)
            .map_err(err)
            .and_then(|r| {
                let expected = closed_form_at(5);
                if r.degree == expected {
                    Ok(format!("{} at d=5", r.degree))
                } else {
                    Err(format!("{} at d=5, closed form gives {expected}", r.degree))
                }
            }),
    ));

    out.push(Check::from_result(
        "spec-independence",
        (|| {
            let alt = sums::alternate_spec(points, s).map_err(err)?;
            for d in [4u32, 5, 6] {
                let a = sums::degree_any(points, d, s, threads).map_err(err)?;
                let b = sums::degree_any(points, d, &alt, threads).map_err(err)?;
                if a.degree != b.degree {
                    return Err(format!(
                        "d={d}: {} with ({s}), {} with ({alt})",
                        a.degree, b.degree
                    ));
                }
            }
            Ok(format!("d=4,5,6 agree for ({s}) and ({alt})"))
        })(),
    ));
    out
}
