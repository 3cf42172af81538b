//! Homogeneous ideals in `Q[x0..x3, t]`: reduced bases, normal forms,
//! standard monomials, saturation by `t` and Hilbert polynomials.
//!
//! Homogeneity is measured in the x-degree; `t` is a deformation parameter
//! with weight zero, so deformations like `x0*x1 + t*x2^2` stay homogeneous.

use alloc::{collections::BTreeMap, string::ToString, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{
    error::{Error, Result},
    groebner::{self, Order, Poly},
    poly::{monomials_of_degree, sdim, Monomial, Polynomial, NVARS, T_VAR},
    unipoly::{binomial_poly, UniPoly},
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Drops zero generators, normalizes to monic, sorts by leading monomial
    /// (largest first) and rejects the zero ideal and non-homogeneous
    /// generators.
    pub fn new(gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if g.x_homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
            let g = g.monic();
            if !out.contains(&g) {
                out.push(g);
            }
        }
        if out.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        out.sort_by(|a, b| {
            let key = |p: &Polynomial| {
                p.terms()
                    .iter()
                    .map(|(c, m)| (*m, c.clone()))
                    .collect::<Vec<_>>()
            };
            key(b).cmp(&key(a))
        });
        Ok(Ideal { gens: out })
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        Self::new(ms.into_iter().map(Polynomial::monomial))
    }

    pub fn parse(gens: &[&str]) -> Result<Self> {
        Self::new(
            gens.iter()
                .map(|s| Polynomial::parse(s))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn involves_t(&self) -> bool {
        self.gens.iter().any(Polynomial::involves_t)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Reduced Gröbner basis under grevlex, sorted by decreasing leading monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroebnerBasis {
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().expect("basis elements are nonzero"))
            .collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.basis.iter().all(Polynomial::is_monomial)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        normal_form(p, self).is_zero()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal {
            gens: self.basis.clone(),
        }
    }
}

fn to_engine(p: &Polynomial) -> Poly<NVARS> {
    Poly {
        terms: p
            .terms()
            .iter()
            .map(|(c, m)| (c.clone(), *m.exponents()))
            .collect(),
    }
}

fn from_engine(p: &Poly<NVARS>) -> Polynomial {
    Polynomial::from_sorted_unchecked(
        p.terms
            .iter()
            .map(|(c, e)| (c.clone(), Monomial::new(*e)))
            .collect(),
    )
}

fn lift(p: &Polynomial, extra: u32) -> Poly<{ NVARS + 1 }> {
    let terms = p
        .terms()
        .iter()
        .map(|(c, m)| {
            let mut e = [0u32; NVARS + 1];
            e[..NVARS].copy_from_slice(m.exponents());
            e[NVARS] = extra;
            (c.clone(), e)
        })
        .collect();
    Poly::from_unsorted(terms, Order::ElimLast)
}

pub fn reduce_gb(ideal: &Ideal) -> GroebnerBasis {
    let gens: Vec<_> = ideal.gens.iter().map(to_engine).collect();
    let basis = groebner::groebner(&gens, Order::GrevLex)
        .iter()
        .map(from_engine)
        .collect();
    GroebnerBasis { basis }
}

pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    let basis: Vec<_> = gb.basis.iter().map(to_engine).collect();
    from_engine(&groebner::normal_form(
        &to_engine(p),
        &basis,
        Order::GrevLex,
    ))
}

/// Degree-`d` monomials in `x0..x3` outside the leading-term ideal, largest
/// first.
pub fn kbase(gb: &GroebnerBasis, d: u32) -> Vec<Monomial> {
    let leads = x_leads(gb);
    let mut out: Vec<Monomial> = StandardMonomials::new(leads)
        .nth(d as usize)
        .expect("infinite iterator");
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn x_leads(gb: &GroebnerBasis) -> Vec<Monomial> {
    // leading monomials involving t never divide a t-free monomial
    gb.leading_monomials()
        .into_iter()
        .filter(|m| m.t_degree() == 0)
        .collect()
}

/// Standard monomials of a monomial ideal degree by degree, starting at 0.
///
/// Each degree is lifted from the previous one: the complement of a monomial
/// ideal is closed under division, so every standard monomial of degree
/// `k + 1` is a variable times a standard monomial of degree `k`.
#[derive(Clone, Debug)]
pub struct StandardMonomials {
    leads: Vec<Monomial>,
    current: Option<Vec<Monomial>>,
}

impl StandardMonomials {
    pub fn new(leads: Vec<Monomial>) -> Self {
        StandardMonomials {
            leads,
            current: None,
        }
    }

    pub fn of(gb: &GroebnerBasis) -> Self {
        Self::new(x_leads(gb))
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }
}

impl Iterator for StandardMonomials {
    type Item = Vec<Monomial>;

    fn next(&mut self) -> Option<Vec<Monomial>> {
        let next = match &self.current {
            None => {
                if self.is_standard(&Monomial::ONE) {
                    alloc::vec![Monomial::ONE]
                } else {
                    Vec::new()
                }
            }
            Some(prev) => {
                let mut lifted: Vec<Monomial> = prev
                    .iter()
                    .flat_map(|m| (0..T_VAR).map(move |i| *m * Monomial::var(i)))
                    .filter(|m| self.is_standard(m))
                    .collect();
                lifted.sort_unstable();
                lifted.dedup();
                lifted
            }
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// Dimension of the degree-`d` slice of the ideal.
pub fn degree_part_dim(gb: &GroebnerBasis, d: u32) -> u64 {
    sdim(d) - kbase(gb, d).len() as u64
}

/// Basis of the degree-`d` slice of a monomial ideal.
pub fn monomials_in_degree(gb: &GroebnerBasis, d: u32) -> Vec<Monomial> {
    let leads = x_leads(gb);
    monomials_of_degree(d)
        .into_iter()
        .filter(|m| leads.iter().any(|l| l.divides(m)))
        .collect()
}

/// All products `generator * x_i`, deduplicated.
pub fn ideal_times_linears(ideal: &Ideal) -> Ideal {
    let gens = ideal
        .gens
        .iter()
        .flat_map(|g| (0..T_VAR).map(move |i| g.mul_monomial(&Monomial::var(i))));
    Ideal::new(gens).expect("products of nonzero homogeneous generators")
}

/// Substitutes `t = 0` in every generator.
pub fn set_t_zero(ideal: &Ideal) -> Result<Ideal> {
    match Ideal::new(ideal.gens.iter().map(Polynomial::at_t_zero)) {
        Err(Error::ZeroIdeal) => Err(Error::VanishesAtTZero),
        other => other,
    }
}

/// `I : t`, computed as `(I ∩ <t>) / t` with the intersection obtained by
/// eliminating an auxiliary variable `s` from `s*I + (1-s)*<t>`.
pub fn colon_t(ideal: &Ideal) -> Ideal {
    let mut gens: Vec<Poly<{ NVARS + 1 }>> = ideal.gens.iter().map(|g| lift(g, 1)).collect();
    let t = Polynomial::var(T_VAR);
    let st = lift(&t, 1);
    let tt = lift(&t, 0);
    let mut diff = tt.terms.clone();
    diff.extend(st.terms.iter().map(|(c, e)| (-c.clone(), *e)));
    gens.push(Poly::from_unsorted(diff, Order::ElimLast));
    let t_mono = Monomial::var(T_VAR);
    let quotients = eliminate_extra(&gens).into_iter().map(|p| {
        p.div_monomial(&t_mono)
            .expect("elements of I ∩ <t> are divisible by t")
    });
    Ideal::new(quotients).expect("I : t contains I")
}

/// Elements of a Gröbner basis in `x0..x3, t, s` free of `s`.
fn eliminate_extra(gens: &[Poly<{ NVARS + 1 }>]) -> Vec<Polynomial> {
    groebner::groebner(gens, Order::ElimLast)
        .iter()
        .filter(|g| g.terms.iter().all(|(_, e)| e[NVARS] == 0))
        .map(|g| {
            Polynomial::from_terms(g.terms.iter().map(|(c, e)| {
                let mut five = [0u32; NVARS];
                five.copy_from_slice(&e[..NVARS]);
                (c.clone(), Monomial::new(five))
            }))
        })
        .collect()
}

/// `I : t^∞` in one elimination, `(I + <1 - s*t>) ∩ Q[x0..x3, t]`.
///
/// Independent of [`saturate_t`]; kept as a cross-check.
pub fn saturate_t_by_inversion(ideal: &Ideal) -> Ideal {
    let mut gens: Vec<Poly<{ NVARS + 1 }>> = ideal.gens.iter().map(|g| lift(g, 0)).collect();
    let mut st = [0u32; NVARS + 1];
    st[T_VAR] = 1;
    st[NVARS] = 1;
    gens.push(Poly::from_unsorted(
        alloc::vec![
            (BigRational::one(), [0u32; NVARS + 1]),
            (-BigRational::one(), st),
        ],
        Order::ElimLast,
    ));
    let kept = eliminate_extra(&gens);
    reduce_gb(&Ideal::new(kept).expect("I : t^∞ contains I")).to_ideal()
}

/// `I : t^∞` by the stabilizing chain `I ⊆ I:t ⊆ I:t^2 ⊆ ...`, returned as the
/// reduced basis of the limit.
pub fn saturate_t(ideal: &Ideal) -> Ideal {
    let mut current = reduce_gb(ideal);
    loop {
        let next = reduce_gb(&colon_t(&current.to_ideal()));
        if next == current {
            return current.to_ideal();
        }
        current = next;
    }
}

/// Hilbert polynomial of `S/I` in the variable `t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HilbertPoly(pub UniPoly);

impl HilbertPoly {
    /// `a*t + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        HilbertPoly(UniPoly::from_integers([b, a]))
    }

    pub fn eval(&self, n: i64) -> BigRational {
        self.0.eval_int(n)
    }

    /// True for the Hilbert polynomial `4t` of an elliptic quartic.
    pub fn is_elliptic_quartic(&self) -> bool {
        *self == Self::linear(4, 0)
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_in("t", f)
    }
}

impl fmt::Debug for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Hilbert polynomial of `S/I` from the leading-term ideal, by
/// inclusion–exclusion over lcms of the leading monomials:
/// `HF(n) = Σ_A (-1)^|A| C(n - deg lcm(A) + 3, 3)`.
///
/// Subsets with equal lcm are merged as they are generated, so the work is
/// bounded by the number of distinct lcms rather than `2^|gens|`.
pub fn hilbert_polynomial(gb: &GroebnerBasis) -> Result<HilbertPoly> {
    if let Some(g) = gb.basis.iter().find(|g| g.involves_t()) {
        return Err(Error::InvolvesT(g.to_string()));
    }
    let signed = lcm_inclusion_exclusion(&gb.leading_monomials());
    let mut by_degree: BTreeMap<u32, BigInt> = BTreeMap::new();
    for (m, c) in signed {
        *by_degree.entry(m.degree()).or_insert_with(BigInt::zero) += c;
    }
    let mut hp = UniPoly::zero();
    for (deg, c) in by_degree {
        if c.is_zero() {
            continue;
        }
        let term = binomial_poly(3 - i64::from(deg), 3).scale(&BigRational::from_integer(c));
        hp = &hp + &term;
    }
    Ok(HilbertPoly(hp))
}

/// Signed lcm multiset `{lcm(A): (-1)^|A|}` over all subsets `A`, with equal
/// lcms merged and cancelled entries dropped.
pub(crate) fn lcm_inclusion_exclusion(gens: &[Monomial]) -> BTreeMap<Monomial, BigInt> {
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    acc.insert(Monomial::ONE, BigInt::one());
    for g in gens {
        let mut next = acc.clone();
        for (m, c) in &acc {
            *next.entry(m.lcm(g)).or_insert_with(BigInt::zero) -= c;
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::parse(gens).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    #[test]
    fn rejects_zero_and_inhomogeneous() {
        assert_eq!(Ideal::parse(&["0"]), Err(Error::ZeroIdeal));
        assert!(matches!(
            Ideal::parse(&["x0^2+x1"]),
            Err(Error::NotHomogeneous(_))
        ));
        // t has weight zero
        assert!(Ideal::parse(&["x0*x1+t*x2^2"]).is_ok());
    }

    #[test]
    fn monomial_ideals_are_their_own_basis() {
        let gb = reduce_gb(&ideal(&["x0^2", "x1^2"]));
        assert_eq!(gb.basis(), &[p("x0^2"), p("x1^2")]);
        let closed = ideal(&["x0^2", "x0*x1", "x0*x2^2", "x1^4"]);
        let gb = reduce_gb(&closed);
        assert_eq!(gb.basis().len(), 4);
        assert!(gb.is_monomial());
        for g in closed.generators() {
            assert!(gb.basis().contains(g));
        }
    }

    #[test]
    fn two_generator_buchberger() {
        // by hand: the leading term of x0*x1 + t*x2^2 is t*x2^2 (total degree 3),
        // S(f, x0*x2) = x0*f - t*x2*(x0*x2) = x0^2*x1, which is reduced; the
        // remaining S-pairs reduce to zero.
        let gb = reduce_gb(&ideal(&["x0*x1+t*x2^2", "x0*x2"]));
        assert_eq!(gb.basis(), &[p("x0^2*x1"), p("t*x2^2+x0*x1"), p("x0*x2")]);
        assert!(gb.contains(&p("x0^2*x1")));
        assert!(gb.contains(&p("t*x2^3")));
        assert!(gb.contains(&p("x0^2*x2*x3")));
        assert!(!gb.contains(&p("x2^3")));
        assert!(!gb.contains(&p("x0*x1")));
    }

    #[test]
    fn normal_forms() {
        let gb = reduce_gb(&ideal(&["x0^2", "x1^2"]));
        assert!(normal_form(&p("x0^3"), &gb).is_zero());
        assert_eq!(normal_form(&p("x0*x1*x2+x0^2"), &gb), p("x0*x1*x2"));
    }

    #[test]
    fn closed_orbit_normal_forms_leave_16() {
        let gb = reduce_gb(&ideal(&["x0^2", "x0*x1", "x0*x2^2", "x1^4"]));
        let survivors = monomials_of_degree(4)
            .into_iter()
            .filter(|m| !normal_form(&Polynomial::monomial(*m), &gb).is_zero())
            .count();
        assert_eq!(survivors, 16);
        assert_eq!(kbase(&gb, 4).len(), 16);
    }

    #[test]
    fn kbase_examples() {
        let gb = reduce_gb(&ideal(&["x0^2", "x1^2"]));
        let k5 = kbase(&gb, 5);
        assert_eq!(k5.len(), 20);
        assert!(k5.contains(&Monomial::xs([1, 1, 3, 0])));
        assert!(k5.contains(&Monomial::xs([1, 0, 0, 4])));
        assert_eq!(kbase(&gb, 4).len(), 16);
        let all = reduce_gb(&ideal(&["x0", "x1", "x2", "x3"]));
        assert!(kbase(&all, 1).is_empty());
        assert_eq!(kbase(&all, 0), vec![Monomial::ONE]);
    }

    #[test]
    fn kbase_matches_sieve() {
        let gb = reduce_gb(&ideal(&["x0^2", "x0*x1", "x0*x2^2", "x1^4", "x2^3*x3"]));
        for d in 0..9 {
            let sieve: Vec<Monomial> = monomials_of_degree(d)
                .into_iter()
                .filter(|m| !gb.leading_monomials().iter().any(|l| l.divides(m)))
                .collect();
            assert_eq!(kbase(&gb, d), sieve);
        }
    }

    #[test]
    fn degree_parts() {
        let gb = reduce_gb(&ideal(&["x0^2", "x1^2"]));
        assert_eq!(degree_part_dim(&gb, 4), 19);
        assert_eq!(degree_part_dim(&gb, 5), 36);
        let all = reduce_gb(&ideal(&["x0", "x1", "x2", "x3"]));
        assert_eq!(degree_part_dim(&all, 1), 4);
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturate_t(&ideal(&["t*x0"])), ideal(&["x0"]));
        let principal = ideal(&["x0*x1+t*x2^2"]);
        assert_eq!(saturate_t(&principal), principal);
        let twice = ideal(&["t^2*x0", "x1"]);
        assert_eq!(
            reduce_gb(&saturate_t(&twice)),
            reduce_gb(&ideal(&["x0", "x1"]))
        );
    }

    #[test]
    fn set_t_zero_examples() {
        assert_eq!(set_t_zero(&ideal(&["x0+t*x1"])).unwrap(), ideal(&["x0"]));
        assert_eq!(
            set_t_zero(&ideal(&["t*x0", "x1^2"])).unwrap(),
            ideal(&["x1^2"])
        );
        assert_eq!(set_t_zero(&ideal(&["t*x0"])), Err(Error::VanishesAtTZero));
    }

    #[test]
    fn hilbert_polynomials() {
        let hp = |g: &[&str]| hilbert_polynomial(&reduce_gb(&ideal(g))).unwrap();
        assert_eq!(hp(&["x0^2", "x1^2"]), HilbertPoly::linear(4, 0));
        assert_eq!(
            hp(&["x0^2", "x0*x1", "x0*x2^2", "x1^4"]),
            HilbertPoly::linear(4, 0)
        );
        assert_eq!(hp(&["x1^2", "x2^2"]), HilbertPoly::linear(4, 0));
        assert_eq!(hp(&["x1*x2", "x1^2", "x2^3"]), HilbertPoly::linear(4, 0));
        assert_eq!(hp(&["x0", "x1"]), HilbertPoly::linear(1, 1));
        assert_eq!(hp(&["x0", "x1"]).to_string(), "t+1");
        assert_eq!(hp(&["x0^2", "x1^2"]).to_string(), "4*t");
        // a plane: C(t+2, 2)
        assert_eq!(hp(&["x0"]).0, binomial_poly(2, 2));
        assert!(matches!(
            hilbert_polynomial(&reduce_gb(&ideal(&["t*x0"]))),
            Err(Error::InvolvesT(_))
        ));
    }

    #[test]
    fn ideal_times_linears_examples() {
        let out = ideal_times_linears(&ideal(&["x0"]));
        assert_eq!(out, ideal(&["x0^2", "x0*x1", "x0*x2", "x0*x3"]));
        let pencil = ideal(&["x0^2", "x1^2"]);
        let quartics = ideal_times_linears(&ideal_times_linears(&pencil));
        assert_eq!(degree_part_dim(&reduce_gb(&quartics), 4), 19);
    }
}
