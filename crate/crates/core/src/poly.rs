//! Sparse polynomials over Q in the projective coordinates `x0..x3` and one
//! deformation parameter `t`.
//!
//! Terms are kept strictly decreasing in graded reverse-lexicographic order on
//! `(x0, x1, x2, x3, t)`, so every mathematical polynomial has exactly one
//! representation and `==` is polynomial equality.

use alloc::{collections::BTreeMap, string::String, vec::Vec};
use core::{
    cmp::Ordering,
    fmt::{self, Write as _},
    ops::{Add, Mul, Neg, Sub},
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const NVARS: usize = 5;
/// Index of the deformation parameter in the exponent vector.
pub const T_VAR: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["x0", "x1", "x2", "x3", "t"];

/// Exponent vector over `(x0, x1, x2, x3, t)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub const fn new(exponents: [u32; NVARS]) -> Self {
        Monomial(exponents)
    }

    /// Monomial in `x0..x3` only.
    pub const fn xs(e: [u32; 4]) -> Self {
        Monomial([e[0], e[1], e[2], e[3], 0])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32; NVARS] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn x_degree(&self) -> u32 {
        self.0[..T_VAR].iter().sum()
    }

    pub fn t_degree(&self) -> u32 {
        self.0[T_VAR]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(e)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Drops the `t` exponent.
    pub fn x_part(&self) -> Monomial {
        let mut e = self.0;
        e[T_VAR] = 0;
        Monomial(e)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..NVARS).filter(move |&i| self.0[i] > 0)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order with `x0 > x1 > x2 > x3 > t`.
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn grevlex<const N: usize>(a: &[u32; N], b: &[u32; N]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..N).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for i in self.support() {
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(VAR_NAMES[i])?;
            if self.0[i] > 1 {
                write!(f, "^{}", self.0[i])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn monomial_gcd(a: &Monomial, b: &Monomial) -> Monomial {
    a.gcd(b)
}

/// All monomials of degree `d` in `x0..x3`, largest first.
pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(sdim(d) as usize);
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push(Monomial::xs([a, b, c, d - a - b - c]));
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// `dim S_d = C(d+3, 3)`, the number of degree-`d` forms on P^3.
pub fn sdim(d: u32) -> u64 {
    let d = u64::from(d);
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Dimension record for the space of degree-`d` forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SDim {
    pub d: u32,
    pub dim: u64,
}

impl SDim {
    pub fn new(d: u32) -> Self {
        SDim { d, dim: sdim(d) }
    }
}

/// A polynomial in canonical form: nonzero coefficients, strictly decreasing
/// monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(BigRational, Monomial)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial {
            terms: alloc::vec![(BigRational::one(), m)],
        }
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: alloc::vec![(c, m)],
            }
        }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i))
    }

    /// Collects arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, Monomial)>) -> Self {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (c, m) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        Polynomial { terms }
    }

    /// Builds from terms already sorted strictly decreasing with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(BigRational, Monomial)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].1 > w[1].1));
        debug_assert!(terms.iter().all(|(c, _)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(BigRational, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|(_, m)| *m)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(c, _)| c)
    }

    /// Total degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(_, m)| i64::from(m.degree()))
            .max()
            .unwrap_or(-1)
    }

    /// The common x-degree when every term has the same one (`t` has weight 0).
    pub fn x_homogeneous_degree(&self) -> Option<u32> {
        let first = self.terms.first()?.1.x_degree();
        self.terms
            .iter()
            .all(|(_, m)| m.x_degree() == first)
            .then_some(first)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn involves_t(&self) -> bool {
        self.terms.iter().any(|(_, m)| m.t_degree() > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(a, m)| (a * c, *m)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(a, n)| (a.clone(), *n * *m))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Substitutes `t = 0`.
    pub fn at_t_zero(&self) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(_, m)| m.t_degree() == 0)
                .cloned()
                .collect(),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(c, n)| n.checked_div(m).map(|q| (c.clone(), q)))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { terms })
    }

    /// Gcd of all monomials in the support (the monomial content).
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.iter().map(|(_, m)| *m);
        let first = it.next()?;
        Some(it.fold(first, |g, m| g.gcd(&m)))
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |c: &BigRational| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].1.cmp(&b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((take_b(&b[j].0), b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].0 - &b[j].0
                    } else {
                        &a[i].0 + &b[j].0
                    };
                    if !c.is_zero() {
                        out.push((c, a[i].1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(c, m)| (take_b(c), *m)));
        Polynomial { terms: out }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(c, m)| (-c, *m)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        mul(self, rhs)
    }
}

/// Exact product in canonical form.
pub fn mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    for (ca, ma) in &a.terms {
        for (cb, mb) in &b.terms {
            *acc.entry(*ma * *mb).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    let terms = acc
        .into_iter()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (c, m))
        .collect();
    Polynomial::from_sorted_unchecked(terms)
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_char('-')?;
            } else if k > 0 {
                f.write_char('+')?;
            }
            if m.is_one() {
                write_rational(f, &mag)?;
            } else {
                if !mag.is_one() {
                    write_rational(f, &mag)?;
                    f.write_char('*')?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[-]term ((+|-) term)*` where a term is an optional rational
/// coefficient followed by `var[^exp]` factors, optionally separated by `*`.
pub fn parse(text: &str) -> Result<Polynomial> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return self.err("empty input"),
            _ => false,
        };
        loop {
            let (mut c, m) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((c, m));
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(terms))
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).ok()?;
        BigInt::parse_bytes(digits.as_bytes(), 10)
    }

    fn term(&mut self) -> Result<(BigRational, Monomial)> {
        let mut coeff = BigRational::one();
        let mut mono = Monomial::ONE;
        let mut factors = 0usize;
        if let Some(n) = self.integer() {
            let mut c = BigRational::from_integer(n);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                match self.integer() {
                    Some(d) if !d.is_zero() => c /= BigRational::from_integer(d),
                    Some(_) => return self.err("zero denominator"),
                    None => return self.err("expected denominator"),
                }
            }
            coeff = c;
            factors += 1;
        }
        loop {
            let star = if factors > 0 && self.peek() == Some(b'*') {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.peek() {
                Some(ch) if ch.is_ascii_alphabetic() => {
                    let var = self.variable()?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = match self.integer().map(u32::try_from) {
                            Some(Ok(e)) => e,
                            _ => return self.err("expected exponent"),
                        };
                    }
                    let mut ex = [0; NVARS];
                    ex[var] = e;
                    mono = mono * Monomial::new(ex);
                    factors += 1;
                }
                Some(ch) if ch.is_ascii_digit() && factors > 0 => {
                    // a bare integer factor such as `x0*2`
                    let n = self.integer().unwrap_or_default();
                    coeff *= BigRational::from_integer(n);
                    factors += 1;
                }
                _ if star => return self.err("expected factor after `*`"),
                _ => break,
            }
        }
        if factors == 0 {
            return self.err("expected term");
        }
        Ok((coeff, mono))
    }

    fn variable(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match VAR_NAMES.iter().position(|v| *v == name) {
            Some(i) => Ok(i),
            None => Err(Error::UnknownVariable {
                pos: start,
                name: String::from(name),
            }),
        }
    }
}
