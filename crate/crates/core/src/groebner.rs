//! Buchberger's algorithm on sparse exponent vectors of fixed arity.
//!
//! The public ideal toolkit works in the five variables `x0..x3, t` under
//! grevlex. Colon ideals need one extra elimination variable, so the engine is
//! generic over the arity and the term order.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::grevlex;

pub(crate) type Exps<const N: usize> = [u32; N];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Order {
    GrevLex,
    /// The last variable is eliminated: compare its exponent first, then
    /// grevlex on the others.
    ElimLast,
}

impl Order {
    pub(crate) fn cmp<const N: usize>(self, a: &Exps<N>, b: &Exps<N>) -> Ordering {
        match self {
            Order::GrevLex => grevlex(a, b),
            Order::ElimLast => a[N - 1].cmp(&b[N - 1]).then_with(|| {
                let mut a2 = *a;
                let mut b2 = *b;
                a2[N - 1] = 0;
                b2[N - 1] = 0;
                grevlex(&a2, &b2)
            }),
        }
    }
}

fn divides<const N: usize>(a: &Exps<N>, b: &Exps<N>) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm<const N: usize>(a: &Exps<N>, b: &Exps<N>) -> Exps<N> {
    let mut out = *a;
    for (o, y) in out.iter_mut().zip(b) {
        *o = (*o).max(*y);
    }
    out
}

fn quotient<const N: usize>(a: &Exps<N>, b: &Exps<N>) -> Exps<N> {
    let mut out = *a;
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    out
}

fn product<const N: usize>(a: &Exps<N>, b: &Exps<N>) -> Exps<N> {
    let mut out = *a;
    for (o, y) in out.iter_mut().zip(b) {
        *o += y;
    }
    out
}

fn coprime<const N: usize>(a: &Exps<N>, b: &Exps<N>) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Terms sorted strictly decreasing in the engine's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly<const N: usize> {
    pub terms: Vec<(BigRational, Exps<N>)>,
}

impl<const N: usize> Poly<N> {
    pub(crate) fn from_unsorted(mut terms: Vec<(BigRational, Exps<N>)>, ord: Order) -> Self {
        terms.sort_by(|a, b| ord.cmp(&b.1, &a.1));
        let mut out: Vec<(BigRational, Exps<N>)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            match out.last_mut() {
                Some(last) if last.1 == e => last.0 += c,
                _ => out.push((c, e)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Poly { terms: out }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Exps<N> {
        &self.terms[0].1
    }

    fn monic(mut self) -> Self {
        if let Some((c, _)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for (a, _) in &mut self.terms {
                    *a *= &inv;
                }
            }
        }
        self
    }

    /// `self - c * m * g`.
    fn sub_scaled(&self, c: &BigRational, m: &Exps<N>, g: &Poly<N>, ord: Order) -> Poly<N> {
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let ge = product(&g.terms[j].1, m);
            if i == a.len() {
                out.push((-(c * &g.terms[j].0), ge));
                j += 1;
                continue;
            }
            match ord.cmp(&a[i].1, &ge) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((-(c * &g.terms[j].0), ge));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].0 - c * &g.terms[j].0;
                    if !v.is_zero() {
                        out.push((v, ge));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }
}

/// Full reduction of `p` by `basis`; the result has no term divisible by a
/// leading monomial of `basis`.
pub(crate) fn normal_form<const N: usize>(p: &Poly<N>, basis: &[Poly<N>], ord: Order) -> Poly<N> {
    let mut rest = p.clone();
    let mut done: Vec<(BigRational, Exps<N>)> = Vec::new();
    while !rest.is_zero() {
        let (c, e) = rest.terms[0].clone();
        match basis.iter().find(|g| divides(g.lead(), &e)) {
            Some(g) => {
                let m = quotient(&e, g.lead());
                let f = &c / &g.terms[0].0;
                rest = rest.sub_scaled(&f, &m, g, ord);
            }
            None => {
                done.push((c, e));
                rest.terms.remove(0);
            }
        }
    }
    Poly { terms: done }
}

fn spoly<const N: usize>(f: &Poly<N>, g: &Poly<N>, ord: Order) -> Poly<N> {
    let l = lcm(f.lead(), g.lead());
    let mf = quotient(&l, f.lead());
    let mg = quotient(&l, g.lead());
    let scaled_f = Poly {
        terms: f
            .terms
            .iter()
            .map(|(c, e)| (c / &f.terms[0].0, product(e, &mf)))
            .collect(),
    };
    scaled_f.sub_scaled(&g.terms[0].0.recip(), &mg, g, ord)
}

/// Reduced, monic Gröbner basis sorted by decreasing leading monomial.
pub(crate) fn groebner<const N: usize>(gens: &[Poly<N>], ord: Order) -> Vec<Poly<N>> {
    let mut basis: Vec<Poly<N>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push = |p: Poly<N>, basis: &mut Vec<Poly<N>>, pairs: &mut Vec<(usize, usize)>| {
        let k = basis.len();
        basis.push(p.monic());
        for i in 0..k {
            pairs.push((i, k));
        }
    };
    for g in gens {
        let r = normal_form(g, &basis, ord);
        if !r.is_zero() {
            push(r, &mut basis, &mut pairs);
        }
    }
    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lcm(basis[a.0].lead(), basis[a.1].lead());
                let lb = lcm(basis[b.0].lead(), basis[b.1].lead());
                ord.cmp(&la, &lb)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        let (li, lj) = (*basis[i].lead(), *basis[j].lead());
        if coprime(&li, &lj) {
            continue;
        }
        let l = lcm(&li, &lj);
        // chain criterion: some k whose lead divides the lcm and whose pairs
        // with i and j are already gone
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lead(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = normal_form(&spoly(&basis[i], &basis[j], ord), &basis, ord);
        if !r.is_zero() {
            push(r, &mut basis, &mut pairs);
        }
    }
    reduce_basis(basis, ord)
}

fn reduce_basis<const N: usize>(mut basis: Vec<Poly<N>>, ord: Order) -> Vec<Poly<N>> {
    basis.sort_by(|a, b| ord.cmp(a.lead(), b.lead()));
    let mut minimal: Vec<Poly<N>> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(h.lead(), g.lead())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<N>> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(normal_form(&minimal[k], &others, ord).monic());
    }
    reduced.sort_by(|a, b| ord.cmp(b.lead(), a.lead()));
    reduced
}
