use std::sync::OnceLock;

use nlbott_core::{
    bott::{
        contribution, degree_nl, degree_nl_d4, degree_nl_range, ed_weights, ensure_admissible,
        localized_point_count, plucker_weight, raw_sum_d4, tangent_euler,
    },
    fixlocus::{enumerate_all, FixedPoint, StratumTag},
    formula::{compare, interpolate, reference_formula},
    poly::parse,
    torus::{char_of, elem_sym, elem_sym_upto, specialize, Character, WeightSpec},
    Error,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn points() -> &'static [FixedPoint] {
    static POINTS: OnceLock<Vec<FixedPoint>> = OnceLock::new();
    POINTS.get_or_init(|| enumerate_all().unwrap())
}

fn reference_at(d: i64) -> BigInt {
    let v = reference_formula().eval_int(d);
    assert!(v.is_integer());
    v.to_integer()
}

fn first_g2() -> &'static FixedPoint {
    let x02 = char_of(&parse("x0^2").unwrap().leading_monomial().unwrap()).unwrap();
    let x12 = char_of(&parse("x1^2").unwrap().leading_monomial().unwrap()).unwrap();
    points()
        .iter()
        .find(|fp| fp.tag == StratumTag::G2 && fp.pencil == [x02, x12])
        .unwrap()
}

#[test]
fn quartic_surfaces() {
    let s = WeightSpec::DEFAULT;
    let raw = raw_sum_d4(points(), &s).unwrap();
    assert_eq!(raw, BigRational::from_integer(BigInt::from(153900)));
    let r = degree_nl_d4(points(), &s).unwrap();
    assert_eq!(r.degree, BigInt::from(38475));
    assert_eq!(r.fixpoint_count, 525);
    assert_eq!(
        degree_nl_d4(points(), &WeightSpec::FALLBACK)
            .unwrap()
            .degree,
        BigInt::from(38475)
    );
}

#[test]
fn plucker_class_at_the_first_pencil() {
    assert_eq!(plucker_weight(first_g2(), &WeightSpec::DEFAULT), -2);
}

#[test]
fn single_point_terms() {
    let fp = first_g2();
    let s = WeightSpec::DEFAULT;
    let weights = ed_weights(fp, 5).unwrap();
    assert_eq!(weights.len(), 20);
    assert_eq!(weights.multiplicity(&Character([1, 1, 3, 0])), 1);
    assert_eq!(ed_weights(fp, 4).unwrap().len(), 16);

    let values: Vec<i64> = weights.expanded().map(|c| specialize(&c, &s)).collect();
    assert_eq!(
        elem_sym(16, &values).unwrap(),
        elem_sym_upto(16, &values).pop().unwrap()
    );

    let tangent: Vec<i64> = fp.tangent.expanded().map(|c| specialize(&c, &s)).collect();
    assert!(tangent.contains(&1)); // x1/x0
    assert!(tangent.contains(&34)); // x3^2/x1^2
    let product: BigInt = tangent.iter().map(|v| BigInt::from(*v)).product();
    assert_eq!(elem_sym(16, &tangent).unwrap(), product);
    assert_eq!(tangent_euler(fp, &s).unwrap(), product);

    let c = contribution(fp, 5, &s).unwrap();
    assert_eq!(c, BigRational::new(elem_sym(16, &values).unwrap(), product));
}

#[test]
fn summation_order_is_irrelevant() {
    let s = WeightSpec::DEFAULT;
    let terms: Vec<BigRational> = points()
        .iter()
        .map(|fp| contribution(fp, 6, &s).unwrap())
        .collect();
    let forward = terms.iter().fold(BigRational::zero(), |a, b| a + b);
    let backward = terms.iter().rev().fold(BigRational::zero(), |a, b| a + b);
    assert_eq!(forward, backward);
    assert_eq!(forward, BigRational::from_integer(reference_at(6)));
}

#[test]
fn small_degrees_match_the_closed_form() {
    for d in [5u32, 6] {
        let a = degree_nl(points(), d, &WeightSpec::DEFAULT).unwrap();
        let b = degree_nl(points(), d, &WeightSpec::FALLBACK).unwrap();
        assert_eq!(a.degree, reference_at(i64::from(d)));
        assert_eq!(a.degree, b.degree);
    }
}

#[test]
fn fixed_points_are_counted_by_localization() {
    assert_eq!(
        localized_point_count(points(), &WeightSpec::DEFAULT).unwrap(),
        BigInt::from(525)
    );
}

#[test]
fn genericity() {
    assert!(ensure_admissible(points(), &WeightSpec::DEFAULT).is_ok());
    let bad = WeightSpec([0, 1, 2, 3]);
    assert_eq!(
        ensure_admissible(points(), &bad),
        Err(Error::Inadmissible([0, 1, 2, 3]))
    );
    assert!(ensure_admissible(points(), &WeightSpec([0, 1, 1, 5])).is_err());
    assert!(degree_nl(points(), 5, &bad).is_err());
}

#[test]
fn low_degrees_are_rejected() {
    let s = WeightSpec::DEFAULT;
    assert_eq!(degree_nl(points(), 4, &s), Err(Error::UnsupportedDegree(4)));
    assert!(contribution(first_g2(), 3, &s).is_err());
    assert!(ed_weights(first_g2(), 3).is_err());
}

#[test]
fn interpolation_reproduces_the_closed_form() {
    let results = degree_nl_range(points(), 5..=53, &WeightSpec::DEFAULT).unwrap();
    assert_eq!(results.len(), 49);
    let nodes: Vec<(i64, BigInt)> = results
        .iter()
        .map(|r| (i64::from(r.d), r.degree.clone()))
        .collect();
    let fitted = interpolate(&nodes).unwrap();
    assert_eq!(fitted.degree(), Some(32));
    assert!(compare(&fitted, &reference_formula()).is_equal());
    for (d, v) in &nodes {
        assert_eq!(fitted.eval_int(*d), BigRational::from_integer(v.clone()));
    }

    // the minimal node set already determines it
    let minimal = interpolate(&nodes[..33]).unwrap();
    assert!(compare(&minimal, &reference_formula()).is_equal());
}
