//! Localization sums over the fixed points.
//!
//! For `d >= 5` the degree is `Σ_p c16(E_d)_p / c16(T_p)`; at `d = 4` the
//! projection to the space of quartics has positive-dimensional fibers and
//! the count becomes `1/4 Σ_p Π_p c15(E_4)_p / c16(T_p)` with `Π` the
//! Plücker hyperplane class.

use alloc::{format, vec::Vec};
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{
    error::{Error, Result},
    fixlocus::{FixedPoint, DIM},
    ideal::StandardMonomials,
    poly::Monomial,
    torus::{char_of, check_generic, elem_sym_upto, specialize, CharBag, WeightSpec},
};

/// Weights of the fiber of `E_d`: the standard monomials of degree `d`
/// modulo the quartic system.
pub fn ed_weights(fp: &FixedPoint, d: u32) -> Result<CharBag> {
    if d < 4 {
        return Err(Error::UnsupportedDegree(i64::from(d)));
    }
    let std = StandardMonomials::of(&fp.quartic_basis())
        .nth(d as usize)
        .expect("infinite iterator");
    weights_of(&std, d)
}

fn weights_of(monomials: &[Monomial], d: u32) -> Result<CharBag> {
    if monomials.len() != 4 * d as usize {
        return Err(Error::Structural {
            stage: "ed_weights",
            detail: format!(
                "{} standard monomials in degree {d}, expected {}",
                monomials.len(),
                4 * d
            ),
        });
    }
    monomials.iter().map(char_of).collect()
}

fn specialized(bag: &CharBag, s: &WeightSpec) -> Vec<i64> {
    bag.expanded().map(|c| specialize(&c, s)).collect()
}

/// Equivariant Euler class of the tangent space: the product of its weights.
pub fn tangent_euler(fp: &FixedPoint, s: &WeightSpec) -> Result<BigInt> {
    let values = specialized(&fp.tangent, s);
    if values.contains(&0) {
        return Err(Error::Inadmissible(s.0));
    }
    Ok(values.iter().fold(BigInt::from(1), |acc, v| acc * v))
}

/// `c16(E_d)_p / c16(T_p)` for one fixed point, `d >= 5`.
pub fn contribution(fp: &FixedPoint, d: u32, s: &WeightSpec) -> Result<BigRational> {
    if d < 5 {
        return Err(Error::UnsupportedDegree(i64::from(d)));
    }
    let den = tangent_euler(fp, s)?;
    let values = specialized(&ed_weights(fp, d)?, s);
    let num = elem_sym_upto(DIM, &values).pop().expect("DIM + 1 entries");
    Ok(BigRational::new(num, den))
}

/// Contributions of one fixed point at every degree in `degrees`
/// (all `>= 5`), sharing one pass of standard-monomial lifting.
pub fn contributions_over(
    fp: &FixedPoint,
    degrees: RangeInclusive<u32>,
    s: &WeightSpec,
) -> Result<Vec<BigRational>> {
    if *degrees.start() < 5 {
        return Err(Error::UnsupportedDegree(i64::from(*degrees.start())));
    }
    let den = tangent_euler(fp, s)?;
    let mut out = Vec::with_capacity(degrees.clone().count());
    let mut lifts = StandardMonomials::of(&fp.quartic_basis()).enumerate();
    for (d, std) in &mut lifts {
        let d = d as u32;
        if d < *degrees.start() {
            continue;
        }
        if d > *degrees.end() {
            break;
        }
        let values = specialized(&weights_of(&std, d)?, s);
        let num = elem_sym_upto(DIM, &values).pop().expect("DIM + 1 entries");
        out.push(BigRational::new(num, den.clone()));
    }
    Ok(out)
}

/// `-(weight of the pencil)`, the Plücker class at the fixed point.
pub fn plucker_weight(fp: &FixedPoint, s: &WeightSpec) -> i64 {
    -(specialize(&fp.pencil[0], s) + specialize(&fp.pencil[1], s))
}

/// `Π_p c15(E_4)_p / c16(T_p)` for one fixed point.
pub fn contribution_d4(fp: &FixedPoint, s: &WeightSpec) -> Result<BigRational> {
    let den = tangent_euler(fp, s)?;
    let values = specialized(&ed_weights(fp, 4)?, s);
    let c15 = elem_sym_upto(DIM - 1, &values).pop().expect("DIM entries");
    Ok(BigRational::new(c15 * plucker_weight(fp, s), den))
}

/// `1 / c16(T_p) * c16(T_p)`: each summand is one, so the total counts points.
pub fn unit_contribution(fp: &FixedPoint, s: &WeightSpec) -> Result<BigRational> {
    let values = specialized(&fp.tangent, s);
    let top = elem_sym_upto(DIM, &values).pop().expect("DIM + 1 entries");
    Ok(BigRational::new(top, tangent_euler(fp, s)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResult {
    pub d: u32,
    pub degree: BigInt,
    pub spec: WeightSpec,
    pub fixpoint_count: usize,
}

/// Fails unless every tangent weight survives specialization.
pub fn ensure_admissible(points: &[FixedPoint], s: &WeightSpec) -> Result<()> {
    if check_generic(s, points.iter().map(|p| &p.tangent)) {
        Ok(())
    } else {
        Err(Error::Inadmissible(s.0))
    }
}

/// Converts an exact sum to the integer it must be.
pub fn integral(sum: &BigRational) -> Result<BigInt> {
    if !sum.is_integer() {
        return Err(Error::NonIntegral(format!("{sum}")));
    }
    Ok(sum.to_integer())
}

fn finish(d: u32, sum: &BigRational, s: &WeightSpec, count: usize) -> Result<DegreeResult> {
    let degree = integral(sum)?;
    if degree.is_negative() {
        return Err(Error::Structural {
            stage: "degree_nl",
            detail: format!("negative degree {degree} at d = {d}"),
        });
    }
    Ok(DegreeResult {
        d,
        degree,
        spec: *s,
        fixpoint_count: count,
    })
}

/// Degree of the Noether–Lefschetz locus for `d >= 5`, summed sequentially.
pub fn degree_nl(points: &[FixedPoint], d: u32, s: &WeightSpec) -> Result<DegreeResult> {
    if d < 5 {
        return Err(Error::UnsupportedDegree(i64::from(d)));
    }
    ensure_admissible(points, s)?;
    let mut sum = BigRational::zero();
    for fp in points {
        sum += contribution(fp, d, s)?;
    }
    finish(d, &sum, s, points.len())
}

/// The raw `d = 4` sum `Σ_p Π_p c15(E_4)_p / c16(T_p)`, before the factor 1/4.
pub fn raw_sum_d4(points: &[FixedPoint], s: &WeightSpec) -> Result<BigRational> {
    ensure_admissible(points, s)?;
    let mut sum = BigRational::zero();
    for fp in points {
        sum += contribution_d4(fp, s)?;
    }
    Ok(sum)
}

/// Quarters the raw `d = 4` sum, which must be an integer divisible by 4.
pub fn finish_d4(raw: &BigRational, s: &WeightSpec, count: usize) -> Result<DegreeResult> {
    let raw = integral(raw)?;
    if !(&raw % 4u32).is_zero() {
        return Err(Error::NonIntegral(format!("{raw}/4")));
    }
    finish(4, &BigRational::from_integer(raw / 4u32), s, count)
}

/// Degree of the Noether–Lefschetz locus of quartic surfaces.
pub fn degree_nl_d4(points: &[FixedPoint], s: &WeightSpec) -> Result<DegreeResult> {
    let raw = raw_sum_d4(points, s)?;
    finish_d4(&raw, s, points.len())
}

/// Degrees for every `d` in `degrees` (all `>= 5`), summed sequentially.
pub fn degree_nl_range(
    points: &[FixedPoint],
    degrees: RangeInclusive<u32>,
    s: &WeightSpec,
) -> Result<Vec<DegreeResult>> {
    ensure_admissible(points, s)?;
    let n = degrees.clone().count();
    let mut sums = alloc::vec![BigRational::zero(); n];
    for fp in points {
        for (acc, c) in sums
            .iter_mut()
            .zip(contributions_over(fp, degrees.clone(), s)?)
        {
            *acc += c;
        }
    }
    degrees
        .zip(sums.iter())
        .map(|(d, sum)| finish(d, sum, s, points.len()))
        .collect()
}

/// Number of fixed points recovered from the localization formula itself.
pub fn localized_point_count(points: &[FixedPoint], s: &WeightSpec) -> Result<BigInt> {
    ensure_admissible(points, s)?;
    let mut sum = BigRational::zero();
    for fp in points {
        sum += unit_contribution(fp, s)?;
    }
    integral(&sum)
}
