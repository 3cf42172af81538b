//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::{num::NonZeroUsize, process::ExitCode, time::Instant};

use nlbott::sums;
use nlbott_core::{
    bott::{ed_weights, localized_point_count},
    fixlocus::{e1_deformation_ideal, euler_characteristic_oracle, Cascade, Census, FixedPoint},
    formula::{compare, interpolate, reference_formula},
    ideal::{hilbert_polynomial, kbase, reduce_gb, saturate_t, Ideal},
    torus::{elem_sym, WeightSpec},
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn threads() -> NonZeroUsize {
    std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)
}

fn reference_at(d: u32) -> BigInt {
    reference_formula().eval_int(i64::from(d)).to_integer()
}

fn quartic_surfaces(points: &[FixedPoint]) -> Outcome {
    let r = sums::degree_d4(points, &WeightSpec::DEFAULT, threads()).map_err(|e| e.to_string())?;
    ensure(r.degree == BigInt::from(38475), format!("got {}", r.degree))?;
    Ok(format!("deg NL(4) = {}", r.degree))
}

fn interpolation(points: &[FixedPoint]) -> Outcome {
    let results = sums::degrees(points, 5..=53, &WeightSpec::DEFAULT, threads())
        .map_err(|e| e.to_string())?;
    let nodes: Vec<(i64, BigInt)> = results
        .iter()
        .map(|r| (i64::from(r.d), r.degree.clone()))
        .collect();
    let fitted = interpolate(&nodes).map_err(|e| e.to_string())?;
    let cmp = compare(&fitted, &reference_formula());
    ensure(cmp.is_equal(), cmp.to_string())?;
    Ok(format!(
        "{} nodes, fitted degree {}, equal to closed form",
        nodes.len(),
        fitted.degree().unwrap_or(0)
    ))
}

fn census(cascade: &Cascade, points: &[FixedPoint]) -> Outcome {
    let expected = Census {
        g2: 21,
        g2e1: 180,
        e2: 324,
    };
    let c = Census::of(points);
    ensure(c == expected, format!("got {c}"))?;
    ensure(c == cascade.counts(), "cascade and point list disagree")?;
    ensure(
        c.total() == 45 + 24 * 8 + 36 * 8 && c.total() == euler_characteristic_oracle(),
        "total differs from the Euler characteristic",
    )?;
    Ok(c.to_string())
}

fn ranks(points: &[FixedPoint]) -> Outcome {
    for (i, fp) in points.iter().enumerate() {
        ensure(
            fp.quartics.len() == 19,
            format!("point {i}: {} quartics", fp.quartics.len()),
        )?;
        let gb = fp.quartic_basis();
        for d in 4..=10u32 {
            let k = kbase(&gb, d).len();
            ensure(k == 4 * d as usize, format!("point {i}, d={d}: kbase {k}"))?;
            let w = ed_weights(fp, d).map_err(|e| e.to_string())?;
            ensure(
                w.len() == 4 * i64::from(d),
                format!("point {i}, d={d}: weights"),
            )?;
        }
    }
    Ok(format!(
        "{} points, 19 quartics, kbase 4d for d=4..10",
        points.len()
    ))
}

fn hilbert() -> Outcome {
    let cases: [&[&str]; 3] = [
        &["x1^2", "x2^2"],
        &["x1*x2", "x1^2", "x2^3"],
        &["x0^2", "x0*x1", "x0*x2^2", "x1^4"],
    ];
    let mut shown = Vec::new();
    for gens in cases {
        let ideal = Ideal::parse(gens).map_err(|e| e.to_string())?;
        let hp = hilbert_polynomial(&reduce_gb(&ideal)).map_err(|e| e.to_string())?;
        ensure(hp.is_elliptic_quartic(), format!("{gens:?}: {hp}"))?;
        shown.push(hp.to_string());
    }
    Ok(format!("HP = {}", shown.join(", ")))
}

fn localization(points: &[FixedPoint]) -> Outcome {
    let s = WeightSpec::DEFAULT;
    let count = localized_point_count(points, &s).map_err(|e| e.to_string())?;
    ensure(count == BigInt::from(525), format!("sum e16/e16 = {count}"))?;
    let raw = sums::raw_sum_d4(points, &s, threads()).map_err(|e| e.to_string())?;
    ensure(raw.is_integer(), format!("raw d=4 sum {raw} not integral"))?;
    let quarter = &raw / BigRational::from_integer(BigInt::from(4));
    ensure(
        quarter.is_integer(),
        format!("raw d=4 sum {raw} not divisible by 4"),
    )?;
    Ok(format!(
        "sum e16/e16 = {count}, raw d=4 sum = {raw} = 4*{quarter}"
    ))
}

fn spec_independence(points: &[FixedPoint]) -> Outcome {
    let specs = [
        WeightSpec::DEFAULT,
        WeightSpec::FALLBACK,
        WeightSpec([3, 11, 40, 101]),
    ];
    let t = threads();
    for d in [5u32, 6] {
        let want = reference_at(d);
        for s in &specs {
            let r = sums::degree(points, d, s, t).map_err(|e| e.to_string())?;
            ensure(r.degree == want, format!("d={d}, spec {s}: {}", r.degree))?;
        }
    }
    for s in &specs {
        let r = sums::degree_d4(points, s, t).map_err(|e| e.to_string())?;
        ensure(
            r.degree == BigInt::from(38475),
            format!("d=4, spec {s}: {}", r.degree),
        )?;
    }
    Ok(format!("{} specs agree at d=4,5,6", specs.len()))
}

fn brute_elem_sym(values: &[i64]) -> Vec<BigInt> {
    let n = values.len();
    let mut out = vec![BigInt::zero(); n + 1];
    for mask in 0u32..(1 << n) {
        let prod: BigInt = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| BigInt::from(values[i]))
            .product();
        out[mask.count_ones() as usize] += prod;
    }
    out
}

fn kernels(cascade: &Cascade) -> Outcome {
    let gb = reduce_gb(&Ideal::parse(&["x0^2", "x1^2"]).map_err(|e| e.to_string())?);
    let k = kbase(&gb, 5).len();
    ensure(k == 20, format!("kbase(<x0^2,x1^2>, 5) has {k} elements"))?;

    for (i, rec) in cascade.e1.iter().enumerate() {
        let def =
            e1_deformation_ideal(&cascade.z[rec.z], rec.direction).map_err(|e| e.to_string())?;
        let sat = saturate_t(&def);
        ensure(
            saturate_t(&sat) == sat,
            format!("E1 record {i}: saturation not idempotent"),
        )?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut vectors = 0;
    for len in 0..=12usize {
        for _ in 0..8 {
            let values: Vec<i64> = (0..len).map(|_| rng.gen_range(-50..=50)).collect();
            let brute = brute_elem_sym(&values);
            for (j, e) in brute.iter().enumerate() {
                let got = elem_sym(j, &values).map_err(|e| e.to_string())?;
                ensure(&got == e, format!("e{j}{values:?}: {got} vs {e}"))?;
            }
            vectors += 1;
        }
    }
    Ok(format!(
        "kbase 20, {} E1 saturations idempotent, elem_sym on {vectors} vectors",
        cascade.e1.len()
    ))
}

fn main() -> ExitCode {
    let cascade = match Cascade::run() {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL fixed-point cascade: {e}");
            return ExitCode::FAILURE;
        }
    };
    let points = cascade.clone().into_fixed_points();

    let checks: [Check<'_>; 8] = [
        ("quartic surfaces", Box::new(|| quartic_surfaces(&points))),
        ("interpolation d=5..53", Box::new(|| interpolation(&points))),
        ("fixed-point census", Box::new(|| census(&cascade, &points))),
        ("quartic and kbase ranks", Box::new(|| ranks(&points))),
        ("Hilbert polynomials", Box::new(hilbert)),
        (
            "localization identities",
            Box::new(|| localization(&points)),
        ),
        (
            "weight-spec independence",
            Box::new(|| spec_independence(&points)),
        ),
        ("kernel properties", Box::new(|| kernels(&cascade))),
    ];

    let mut failed = 0;
    for (n, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.2}s)", n + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        checks.len() - failed,
        checks.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
