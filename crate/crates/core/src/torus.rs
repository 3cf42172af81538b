//! Characters of the diagonal torus of P^3 and the weight bookkeeping used by
//! the localization formula.

use alloc::{collections::BTreeMap, vec::Vec};
use core::{
    fmt,
    ops::{Add, Neg, Sub},
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{
    error::{Error, Result},
    poly::Monomial,
};

/// An additive torus weight: the coefficients of `x0..x3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Character(pub [i64; 4]);

impl Character {
    pub const ZERO: Character = Character([0; 4]);

    /// Coprime monomials `(num, den)` with `self = char(num) - char(den)`.
    pub fn as_ratio(&self) -> (Monomial, Monomial) {
        let pos = self.0.map(|v| v.max(0) as u32);
        let neg = self.0.map(|v| (-v).max(0) as u32);
        (Monomial::xs(pos), Monomial::xs(neg))
    }

    /// The monomial with this character, if all entries are non-negative.
    pub fn to_monomial(&self) -> Option<Monomial> {
        self.0
            .iter()
            .all(|&v| v >= 0)
            .then(|| Monomial::xs(self.0.map(|v| v as u32)))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Add for Character {
    type Output = Character;

    fn add(self, rhs: Character) -> Character {
        Character([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl Sub for Character {
    type Output = Character;

    fn sub(self, rhs: Character) -> Character {
        self + (-rhs)
    }
}

impl Neg for Character {
    type Output = Character;

    fn neg(self) -> Character {
        Character(self.0.map(|v| -v))
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// Weight of a monomial in `x0..x3`.
pub fn char_of(m: &Monomial) -> Result<Character> {
    if m.t_degree() != 0 {
        return Err(Error::NonzeroTExponent(alloc::format!("{m}")));
    }
    let e = m.exponents();
    Ok(Character([
        i64::from(e[0]),
        i64::from(e[1]),
        i64::from(e[2]),
        i64::from(e[3]),
    ]))
}

/// A signed multiset of characters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CharBag {
    entries: BTreeMap<Character, i64>,
}

impl CharBag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, c: Character, mult: i64) {
        let slot = self.entries.entry(c).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.entries.remove(&c);
        }
    }

    pub fn multiplicity(&self, c: &Character) -> i64 {
        self.entries.get(c).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn len(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|&m| m > 0)
    }

    /// True when every character has multiplicity one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.values().all(|&m| m == 1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Character, &i64)> {
        self.entries.iter()
    }

    /// Distinct characters in increasing order.
    pub fn distinct(&self) -> impl Iterator<Item = &Character> {
        self.entries.keys()
    }

    /// Characters repeated by multiplicity; only meaningful for effective bags.
    pub fn expanded(&self) -> impl Iterator<Item = Character> + '_ {
        self.entries
            .iter()
            .flat_map(|(c, &m)| core::iter::repeat_n(*c, m.max(0) as usize))
    }

    pub fn union(&self, other: &CharBag) -> CharBag {
        let mut out = self.clone();
        for (c, m) in &other.entries {
            out.insert(*c, *m);
        }
        out
    }

    pub fn difference(&self, other: &CharBag) -> CharBag {
        let mut out = self.clone();
        for (c, m) in &other.entries {
            out.insert(*c, -*m);
        }
        out
    }

    /// Every character shifted by `by`.
    pub fn shifted(&self, by: Character) -> CharBag {
        CharBag {
            entries: self.entries.iter().map(|(c, m)| (*c + by, *m)).collect(),
        }
    }

    /// Multiset inclusion for effective bags.
    pub fn is_sub_bag_of(&self, other: &CharBag) -> bool {
        self.entries
            .iter()
            .all(|(c, &m)| m <= other.multiplicity(c))
    }

    pub fn sum(&self) -> Character {
        self.entries.iter().fold(Character::ZERO, |acc, (c, &m)| {
            acc + Character(c.0.map(|v| v * m))
        })
    }
}

impl FromIterator<Character> for CharBag {
    fn from_iter<I: IntoIterator<Item = Character>>(iter: I) -> Self {
        let mut bag = CharBag::new();
        for c in iter {
            bag.insert(c, 1);
        }
        bag
    }
}

impl fmt::Debug for CharBag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

/// Tangent space of a Grassmannian at a coordinate subspace:
/// `Hom(sub, ambient/sub)`, i.e. `{q - a : q ∈ ambient∖sub, a ∈ sub}`.
pub fn grass_tangent(sub: &CharBag, ambient: &CharBag) -> Result<CharBag> {
    if !sub.is_effective() || !ambient.is_effective() {
        return Err(Error::NotEffective);
    }
    if !sub.is_sub_bag_of(ambient) {
        return Err(Error::NotContained);
    }
    let quotient = ambient.difference(sub);
    let mut out = CharBag::new();
    for (q, mq) in quotient.entries() {
        for (a, ma) in sub.entries() {
            out.insert(*q - *a, mq * ma);
        }
    }
    Ok(out)
}

/// Tangent space of a blow-up at the fixed point of the exceptional divisor
/// lying over the normal direction `e`: the base tangent, the tautological
/// line `e`, and the projective-space directions `n - e` for `n ∈ nml ⊖ {e}`.
pub fn blowup_tangent(base: &CharBag, nml: &CharBag, e: Character) -> Result<CharBag> {
    if nml.multiplicity(&e) <= 0 {
        return Err(Error::MissingCharacter(e));
    }
    let mut rest = nml.clone();
    rest.insert(e, -1);
    let mut out = base.union(&rest.shifted(-e));
    out.insert(e, 1);
    Ok(out)
}

/// Integer values assigned to `x0..x3` when specializing characters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WeightSpec(pub [i64; 4]);

impl WeightSpec {
    pub const DEFAULT: WeightSpec = WeightSpec([0, 1, 5, 18]);
    pub const FALLBACK: WeightSpec = WeightSpec([0, 1, 7, 23]);

    pub fn values(&self) -> [i64; 4] {
        self.0
    }

    pub fn has_distinct_values(&self) -> bool {
        let v = self.0;
        (0..4).all(|i| (i + 1..4).all(|j| v[i] != v[j]))
    }
}

impl Default for WeightSpec {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

pub fn specialize(c: &Character, s: &WeightSpec) -> i64 {
    c.0.iter().zip(s.0.iter()).map(|(a, b)| a * b).sum()
}

/// `e_0, ..., e_k` of `values` by truncated product accumulation:
/// the coefficients of `Π (1 + v_i z)` up to `z^k`.
pub fn elem_sym_upto(k: usize, values: &[i64]) -> Vec<BigInt> {
    let mut e = alloc::vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for (n, &v) in values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let top = k.min(n + 1);
        for j in (1..=top).rev() {
            let step = &e[j - 1] * v;
            e[j] += step;
        }
    }
    e
}

/// The `k`-th elementary symmetric polynomial of `values`.
pub fn elem_sym(k: usize, values: &[i64]) -> Result<BigInt> {
    if k > values.len() {
        return Err(Error::OutOfRange { k, n: values.len() });
    }
    Ok(elem_sym_upto(k, values).pop().expect("k + 1 entries"))
}

/// True iff no character in any bag specializes to zero.
pub fn check_generic<'a>(s: &WeightSpec, bags: impl IntoIterator<Item = &'a CharBag>) -> bool {
    bags.into_iter()
        .all(|bag| bag.distinct().all(|c| specialize(c, s) != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_of_degree;

    fn ch(v: [i64; 4]) -> Character {
        Character(v)
    }

    fn mono_bag(d: u32) -> CharBag {
        monomials_of_degree(d)
            .iter()
            .map(|m| char_of(m).unwrap())
            .collect()
    }

    #[test]
    fn characters_of_monomials() {
        assert_eq!(
            char_of(&Monomial::xs([1, 1, 0, 0])).unwrap(),
            ch([1, 1, 0, 0])
        );
        assert_eq!(
            char_of(&Monomial::xs([2, 0, 0, 0])).unwrap(),
            ch([2, 0, 0, 0])
        );
        assert_eq!(
            char_of(&Monomial::xs([0, 0, 0, 4])).unwrap(),
            ch([0, 0, 0, 4])
        );
        assert!(char_of(&Monomial::new([1, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn ratio_presentation() {
        let (num, den) = ch([1, -2, 0, 1]).as_ratio();
        assert_eq!(num, Monomial::xs([1, 0, 0, 1]));
        assert_eq!(den, Monomial::xs([0, 2, 0, 0]));
    }

    #[test]
    fn grassmannian_tangents() {
        let quads = mono_bag(2);
        let sub: CharBag = [ch([2, 0, 0, 0]), ch([0, 2, 0, 0])].into_iter().collect();
        let tg = grass_tangent(&sub, &quads).unwrap();
        assert_eq!(tg.len(), 16);
        assert!(tg.multiplicity(&ch([-1, 1, 0, 0])) > 0);
        assert!(tg.multiplicity(&ch([0, -2, 0, 2])) > 0);
        assert!(grass_tangent(&quads, &quads).unwrap().is_empty());
        let lin = mono_bag(1);
        let point: CharBag = [ch([1, 0, 0, 0])].into_iter().collect();
        let p3 = grass_tangent(&point, &lin).unwrap();
        assert_eq!(p3.len(), 3);
        let stray: CharBag = [ch([3, 0, 0, 0])].into_iter().collect();
        assert_eq!(grass_tangent(&stray, &lin), Err(Error::NotContained));
    }

    #[test]
    fn blowups() {
        let base: CharBag = [ch([1, -1, 0, 0])].into_iter().collect();
        let e = ch([0, 1, -1, 0]);
        let rank_one: CharBag = [e].into_iter().collect();
        let out = blowup_tangent(&base, &rank_one, e).unwrap();
        assert_eq!(out, base.union(&rank_one));
        assert_eq!(
            blowup_tangent(&base, &rank_one, ch([5, 0, 0, -5])),
            Err(Error::MissingCharacter(ch([5, 0, 0, -5])))
        );
    }

    #[test]
    fn specializations() {
        let s = WeightSpec::DEFAULT;
        assert_eq!(specialize(&ch([1, 1, 0, 0]), &s), 1);
        assert_eq!(specialize(&Character::ZERO, &s), 0);
        assert_eq!(specialize(&ch([-2, 0, 0, 2]), &s), 36);
    }

    #[test]
    fn elementary_symmetric() {
        assert_eq!(elem_sym(0, &[4, 5]).unwrap(), BigInt::one());
        assert_eq!(elem_sym(2, &[1, 2, 3]).unwrap(), BigInt::from(11));
        assert_eq!(elem_sym(3, &[1, 2, 3]).unwrap(), BigInt::from(6));
        assert!(elem_sym(4, &[1, 2, 3]).is_err());
    }

    #[test]
    fn genericity() {
        let quads = mono_bag(2);
        let sub: CharBag = [ch([2, 0, 0, 0]), ch([0, 2, 0, 0])].into_iter().collect();
        let tg = grass_tangent(&sub, &quads).unwrap();
        // x0x2 / x1^2 has weight (1,-2,1,0), which vanishes at (0,1,2,3)
        assert!(!check_generic(&WeightSpec([0, 1, 2, 3]), [&tg]));
        assert!(check_generic(&WeightSpec::DEFAULT, [&tg]));
        assert!(!check_generic(&WeightSpec([0, 1, 1, 18]), [&tg]));
    }
}
