use std::collections::BTreeSet;

use nlbott_core::{
    bott::ed_weights,
    fixlocus::{
        classify_e1, e1_deformation_ideal, enumerate_pairs, euler_characteristic_oracle,
        split_strata, Cascade, Census, E1Class, StratumTag, DIM, QUARTIC_RANK,
    },
    ideal::{
        degree_part_dim, hilbert_polynomial, kbase, monomials_in_degree, reduce_gb, saturate_t,
        saturate_t_by_inversion, Ideal,
    },
    poly::{parse, Monomial},
    torus::{char_of, Character},
};

fn m(s: &str) -> Monomial {
    parse(s).unwrap().leading_monomial().unwrap()
}

fn cascade() -> Cascade {
    Cascade::run().unwrap()
}

#[test]
fn census_matches_euler_characteristic() {
    let c = cascade();
    assert_eq!(c.pairs.len(), 45);
    assert_eq!(c.z.len(), 24);
    assert_eq!(c.e1.len(), 216);
    assert_eq!(c.w.len(), 36);
    let census = c.counts();
    assert_eq!(
        census,
        Census {
            g2: 21,
            g2e1: 180,
            e2: 324
        }
    );
    assert_eq!(census.total(), euler_characteristic_oracle());
    assert_eq!(45 + 24 * 8 + 36 * 8, 525);
    assert_eq!(census.to_string(), "G2=21 G2E1=180 E2=324 total=525");
}

#[test]
fn pairs_and_strata() {
    let pairs = enumerate_pairs();
    assert!(pairs.iter().all(|p| p.tangent.len() == DIM as i64));
    let first = pairs
        .iter()
        .find(|p| p.q1 == m("x0^2") && p.q2 == m("x1^2"))
        .unwrap();
    let ratio = char_of(&m("x0*x1")).unwrap() - char_of(&m("x0^2")).unwrap();
    assert_eq!(first.tangent.multiplicity(&ratio), 1);

    let (g2, z) = split_strata(&pairs).unwrap();
    assert_eq!((g2.len(), z.len()), (21, 24));
    let coprime = g2
        .iter()
        .find(|fp| fp.pencil == [char_of(&m("x0*x1")).unwrap(), char_of(&m("x2*x3")).unwrap()]);
    assert!(coprime.is_some());
    let zp = z
        .iter()
        .find(|zp| zp.generators() == [m("x0^2"), m("x0*x1")])
        .unwrap();
    assert_eq!((zp.plane, zp.l1, zp.l2), (m("x0"), m("x0"), m("x1")));
    assert!(zp.is_y_incident());
    assert_eq!(z.iter().filter(|zp| zp.is_y_incident()).count(), 12);
}

#[test]
fn every_point_is_valid_and_distinct() {
    let points = cascade().into_fixed_points();
    assert_eq!(points.len(), 525);
    for fp in &points {
        fp.validate().unwrap();
        assert!(fp.tangent.is_effective());
        assert_eq!(fp.tangent.len(), 16);
        assert_eq!(fp.quartics.len(), QUARTIC_RANK);
    }
    type Key = (Vec<Monomial>, Vec<(Character, i64)>);
    let distinct: BTreeSet<Key> = points
        .iter()
        .map(|fp| {
            (
                fp.quartics.clone(),
                fp.tangent.entries().map(|(c, m)| (*c, *m)).collect(),
            )
        })
        .collect();
    assert_eq!(distinct.len(), 525);
}

#[test]
fn standard_monomials_have_rank_4d() {
    let points = cascade().into_fixed_points();
    for fp in &points {
        let gb = fp.quartic_basis();
        for d in 4..=10u32 {
            assert_eq!(kbase(&gb, d).len(), 4 * d as usize);
            assert_eq!(ed_weights(fp, d).unwrap().len(), 4 * i64::from(d));
        }
    }
}

#[test]
fn e1_limits_are_eight_monomial_cubics() {
    let c = cascade();
    for rec in &c.e1 {
        assert_eq!(rec.cubics.len(), 8);
        assert!(rec.cubics.iter().all(|m| m.x_degree() == 3));
        assert_eq!(rec.tangent.len(), 16);
    }
}

#[test]
fn degenerate_limits_sit_over_y() {
    let c = cascade();
    for (zi, zp) in c.z.iter().enumerate() {
        let degenerate = c
            .e1
            .iter()
            .enumerate()
            .filter(|(_, rec)| rec.z == zi)
            .filter(|(k, rec)| matches!(classify_e1(rec, *k, zp).unwrap(), E1Class::Degenerate(_)))
            .count();
        assert_eq!(degenerate, if zp.is_y_incident() { 3 } else { 0 });
    }
    for w in &c.w {
        assert_eq!(w.tangent_w.len(), 7);
        assert_eq!(w.normal.len(), 9);
        assert!(w.normal.is_multiplicity_free());
    }
}

#[test]
fn deformation_ideals_saturate_consistently() {
    let c = cascade();
    for rec in c.e1.iter().step_by(7) {
        let def = e1_deformation_ideal(&c.z[rec.z], rec.direction).unwrap();
        let sat = saturate_t(&def);
        assert_eq!(saturate_t(&sat), sat);
        assert_eq!(sat, saturate_t_by_inversion(&def));
    }
}

#[test]
fn e2_points_have_the_singular_plane_shape() {
    let c = cascade();
    for fp in &c.e2 {
        assert_eq!(fp.tag, StratumTag::E2);
        let w = &c.w[fp.provenance[2]];
        let (plane, line, f) = (w.plane, w.line, w.doublet);
        let not_on_plane: Vec<&Monomial> =
            fp.quartics.iter().filter(|q| !plane.divides(q)).collect();
        assert_eq!(not_on_plane.len(), 1);
        let g = *not_on_plane[0];
        let shape = Ideal::from_monomials([plane * plane, plane * line, plane * f, g]).unwrap();
        let gb = reduce_gb(&shape);
        assert_eq!(degree_part_dim(&gb, 4), 19);
        let mut slice = monomials_in_degree(&gb, 4);
        slice.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(slice, fp.quartics);
        assert!(hilbert_polynomial(&fp.quartic_basis())
            .unwrap()
            .is_elliptic_quartic());
    }
}

#[test]
fn strata_tags_round_trip() {
    for tag in [StratumTag::G2, StratumTag::G2E1, StratumTag::E2] {
        assert_eq!(StratumTag::parse(tag.as_str()), Some(tag));
    }
    assert_eq!(StratumTag::parse("E3"), None);
}
