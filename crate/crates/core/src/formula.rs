//! Exact interpolation of degree values into a polynomial in `d`, and the
//! reference closed form it should reproduce.

use alloc::{collections::BTreeSet, format, string::String, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{
    error::{Error, Result},
    unipoly::UniPoly,
};

/// Newton divided-difference interpolation through `(d, value)` nodes.
pub fn interpolate(nodes: &[(i64, BigInt)]) -> Result<UniPoly> {
    if nodes.len() < 2 {
        return Err(Error::TooFewNodes);
    }
    let mut seen = BTreeSet::new();
    for (d, _) in nodes {
        if !seen.insert(*d) {
            return Err(Error::DuplicateNode(*d));
        }
    }
    let xs: Vec<BigRational> = nodes
        .iter()
        .map(|(d, _)| BigRational::from_integer((*d).into()))
        .collect();
    let mut table: Vec<BigRational> = nodes
        .iter()
        .map(|(_, v)| BigRational::from_integer(v.clone()))
        .collect();
    let n = table.len();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form, innermost coefficient first.
    let mut acc = UniPoly::constant(table[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = &(&acc * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(table[i].clone());
    }
    Ok(acc)
}

/// Coefficients of the degree-29 inner factor, highest degree first.
const INNER_DESCENDING: [&str; 30] = [
    "106984881",
    "-3409514775",
    "57226549167",
    "-643910429259",
    "5267988084411",
    "-31628193518727",
    "126939490699539",
    "-144650681793207",
    "-2701978741671631",
    "28913126128882647",
    "-182919422241175163",
    "858473373993063183",
    "-3061191057059772423",
    "7448109470245631187",
    "-3841505361473930575",
    "-80644842327962348733",
    "568059231910087276234",
    "-2560865812030993315212",
    "9159430737614259196104",
    "-27608527286339077691280",
    "71605637662357479581024",
    "-160009170853633152594240",
    "303685692157317249665152",
    "-473993548940769326728704",
    "571505502502703378479104",
    "-459462480152611231457280",
    "111908571251948243582976",
    "251116612534424272896000",
    "-328452832055501940326400",
    "136886449647246114816000",
];

/// Prime factorization of the divisor under the inner factor.
pub const DIVISOR_FACTORS: [(u32, u32); 6] = [(2, 27), (3, 9), (5, 2), (7, 2), (11, 1), (13, 1)];

/// The inner degree-29 polynomial with integer coefficients.
pub fn inner_factor() -> UniPoly {
    UniPoly::from_integers(INNER_DESCENDING.iter().rev().map(|s| {
        s.parse::<BigInt>()
            .expect("coefficient table holds integer literals")
    }))
}

pub fn divisor() -> BigInt {
    DIVISOR_FACTORS
        .iter()
        .fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
}

/// `(d-2)(d-3)(d-4)`.
pub fn cubic_factor() -> UniPoly {
    UniPoly::from_integers([-24, 26, -9, 1])
}

/// The reference closed form
/// `C(d-2, 3) * inner(d) / (2^27 3^9 5^2 7^2 11 13)`.
pub fn reference_formula() -> UniPoly {
    let scale = BigRational::new(BigInt::one(), divisor() * 6);
    (&cubic_factor() * &inner_factor()).scale(&scale)
}

/// First coefficient where two polynomials differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub degree: usize,
    pub left: BigRational,
    pub right: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub first_mismatch: Option<Mismatch>,
    pub mismatches: usize,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => f.write_str("equal"),
            Some(m) => write!(
                f,
                "{} mismatched coefficients; first at degree {}: {} vs {}",
                self.mismatches, m.degree, m.left, m.right
            ),
        }
    }
}

/// Coefficientwise comparison, scanning from degree 0 upwards.
pub fn compare(a: &UniPoly, b: &UniPoly) -> Comparison {
    let n = a.coeffs().len().max(b.coeffs().len());
    let mut first_mismatch = None;
    let mut mismatches = 0;
    for k in 0..n {
        let (l, r) = (a.coeff(k), b.coeff(k));
        if l != r {
            mismatches += 1;
            first_mismatch.get_or_insert(Mismatch {
                degree: k,
                left: l,
                right: r,
            });
        }
    }
    Comparison {
        first_mismatch,
        mismatches,
    }
}

/// Factors `p = cubic * inner / den` with `inner` primitive over Z and
/// `den > 0`; `None` unless `(d-2)(d-3)(d-4)` divides `p`.
pub fn factor_out_cubic(p: &UniPoly) -> Option<(UniPoly, BigInt)> {
    let (quo, rem) = p.div_rem(&cubic_factor());
    if !rem.is_zero() || quo.is_zero() {
        return None;
    }
    let den = quo.common_denominator();
    let ints = quo.scale(&BigRational::from_integer(den.clone()));
    let content = ints.coeffs().iter().fold(BigInt::zero(), |g, c| {
        num_integer::Integer::gcd(&g, c.numer())
    });
    let mut inner = ints.scale(&BigRational::new(BigInt::one(), content.clone()));
    let mut den = den / content;
    if quo.coeffs().last().is_some_and(|c| c.is_negative()) {
        inner = inner.scale(&-BigRational::one());
        den = -den;
    }
    Some((inner, den))
}

/// Trial division into small primes, `(p, e)` pairs; the cofactor is kept
/// as a final entry with exponent 1 if it is not 1.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n && p < BigInt::from(1_000_000) {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

fn render_factorization(n: &BigInt) -> String {
    let parts: Vec<String> = factorize(n)
        .into_iter()
        .map(|(p, e)| {
            if e == 1 {
                format!("{p}")
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// `C(d-2,3)*(inner)/(factored divisor)` when the cubic factor splits off,
/// the expanded form otherwise.
pub fn render_factored(p: &UniPoly) -> String {
    match factor_out_cubic(p) {
        Some((inner, den)) => {
            // inner/den * (d-2)(d-3)(d-4) = C(d-2,3) * inner / (den/6)
            let den6 = BigRational::new(den, BigInt::from(6));
            if den6.is_integer() {
                format!(
                    "C(d-2,3)*({inner})/({})",
                    render_factorization(&den6.to_integer())
                )
            } else {
                format!(
                    "(d-2)*(d-3)*(d-4)*({inner})/({})",
                    render_factorization(&den6.numer().clone())
                )
            }
        }
        None => format!("{p}"),
    }
}

/// The expanded polynomial, highest degree first.
pub fn render_expanded(p: &UniPoly) -> String {
    format!("{p}")
}

/// Coefficients as decimal strings `"n"` or `"n/m"`, ascending degree.
pub fn coefficient_strings(p: &UniPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| format!("{c}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn nodes(v: &[(i64, i64)]) -> Vec<(i64, BigInt)> {
        v.iter().map(|&(d, x)| (d, BigInt::from(x))).collect()
    }

    #[test]
    fn interpolates_a_line() {
        let p = interpolate(&nodes(&[(0, 1), (1, 3), (2, 5)])).unwrap();
        assert_eq!(p, UniPoly::from_integers([1, 2]));
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert_eq!(
            interpolate(&nodes(&[(1, 1), (1, 2)])),
            Err(Error::DuplicateNode(1))
        );
        assert_eq!(interpolate(&nodes(&[(1, 1)])), Err(Error::TooFewNodes));
    }

    #[test]
    fn reference_shape() {
        let p = reference_formula();
        assert_eq!(p.degree(), Some(32));
        let lead = BigRational::new(BigInt::from(106984881), divisor() * 6);
        assert_eq!(p.coeff(32), lead);
        assert_eq!(
            inner_factor().coeff(0),
            BigRational::from_integer("136886449647246114816000".parse().unwrap())
        );
        for d in [2, 3, 4] {
            assert!(p.eval_int(d).is_zero());
        }
    }

    #[test]
    fn reference_is_integral_for_d_at_least_5() {
        let p = reference_formula();
        for d in 5..=100 {
            assert!(p.eval_int(d).is_integer(), "d = {d}");
        }
    }

    #[test]
    fn factored_roundtrip() {
        let (inner, den) = factor_out_cubic(&reference_formula()).unwrap();
        assert_eq!(inner, inner_factor());
        assert_eq!(den, divisor() * 6);
        assert_eq!(
            render_factored(&reference_formula()),
            format!("C(d-2,3)*({})/(2^27*3^9*5^2*7^2*11*13)", inner_factor())
        );
    }

    #[test]
    fn comparisons() {
        let p = UniPoly::from_integers([1, 2]);
        assert!(compare(&p, &p).is_equal());
        let c = compare(&p, &UniPoly::from_integers([0, 2]));
        assert_eq!(c.first_mismatch.unwrap().degree, 0);
        assert_eq!(c.mismatches, 1);
    }

    #[test]
    fn factorization() {
        assert_eq!(
            factorize(&BigInt::from(360)),
            vec![
                (BigInt::from(2), 3),
                (BigInt::from(3), 2),
                (BigInt::from(5), 1)
            ]
        );
    }
}
