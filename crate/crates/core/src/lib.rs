//! Exact algebra and torus localization for the degree of the
//! Noether–Lefschetz locus of degree-`d` surfaces in P^3 containing an
//! elliptic quartic curve.
//!
//! The crate is `no_std` (it needs `alloc`). Layers, bottom up:
//!
//! * [`poly`] – monomials and polynomials over Q in `x0..x3, t`;
//! * [`groebner`], [`ideal`] – Buchberger bases, kbase, saturation in `t`,
//!   Hilbert polynomials;
//! * [`torus`] – characters of the diagonal torus, weight bags,
//!   specialization and elementary symmetric functions;
//! * [`fixlocus`] – the 525 torus-fixed points of the compactified family;
//! * [`bott`] – the localization sums;
//! * [`formula`] – interpolation in `d` and the reference closed form.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bott;
pub mod error;
pub mod fixlocus;
pub mod formula;
pub mod groebner;
pub mod ideal;
pub mod poly;
pub mod torus;
pub mod unipoly;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial};
pub use unipoly::UniPoly;
