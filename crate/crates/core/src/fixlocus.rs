//! Torus-fixed points of the double blow-up of the Grassmannian of pencils of
//! quadrics.
//!
//! The cascade runs in four stages:
//!
//! 1. pairs of distinct quadric monomials (the fixed points of `G(2, S2)`);
//! 2. pairs with a common linear factor lie on `Z` (pencils with a fixed
//!    plane) and are replaced by the points of the first exceptional divisor,
//!    one per normal weight, whose cubic systems are flat limits computed by
//!    deforming the pencil and saturating in `t`;
//! 3. limits whose cubic system is a plane times quadrics through a doublet
//!    lie on the second center `W` and are replaced again, one point per
//!    normal weight, by quartic systems singular at the doublet;
//! 4. every surviving point carries a 16-weight tangent space and a rank-19
//!    quartic system.

use alloc::{format, vec::Vec};
use core::fmt;

use crate::{
    error::{structural, Result},
    ideal::{
        hilbert_polynomial, ideal_times_linears, monomials_in_degree, reduce_gb, saturate_t,
        set_t_zero, GroebnerBasis, HilbertPoly, Ideal,
    },
    poly::{monomials_of_degree, Monomial, Polynomial, T_VAR},
    torus::{blowup_tangent, char_of, grass_tangent, CharBag, Character},
};

/// Dimension of the parameter space.
pub const DIM: usize = 16;
/// Rank of the quartic system at every point.
pub const QUARTIC_RANK: usize = 19;
const CUBIC_RANK: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StratumTag {
    G2,
    G2E1,
    E2,
}

impl StratumTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            StratumTag::G2 => "G2",
            StratumTag::G2E1 => "G2E1",
            StratumTag::E2 => "E2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "G2" => Some(StratumTag::G2),
            "G2E1" => Some(StratumTag::G2E1),
            "E2" => Some(StratumTag::E2),
            _ => None,
        }
    }
}

impl fmt::Display for StratumTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn bag_of(ms: &[Monomial]) -> CharBag {
    ms.iter()
        .map(|m| char_of(m).expect("t-free monomial"))
        .collect()
}

fn single(m: &Monomial) -> CharBag {
    bag_of(core::slice::from_ref(m))
}

fn var_index(linear: &Monomial) -> usize {
    linear.support().next().expect("linear monomial")
}

/// A coordinate pencil `<q1, q2>` with its Grassmannian tangent space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadPair {
    pub q1: Monomial,
    pub q2: Monomial,
    pub tangent: CharBag,
}

/// All 45 coordinate pencils of quadrics.
pub fn enumerate_pairs() -> Vec<QuadPair> {
    let quads = monomials_of_degree(2);
    let ambient = bag_of(&quads);
    let mut out = Vec::with_capacity(45);
    for i in 0..quads.len() {
        for j in i + 1..quads.len() {
            let sub = bag_of(&[quads[i], quads[j]]);
            out.push(QuadPair {
                q1: quads[i],
                q2: quads[j],
                tangent: grass_tangent(&sub, &ambient).expect("pair lies in the quadrics"),
            });
        }
    }
    out
}

/// A fixed pencil with a common plane: `<p*l1, p*l2>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoint {
    pub pair: usize,
    pub plane: Monomial,
    pub l1: Monomial,
    pub l2: Monomial,
    pub tangent_z: CharBag,
    pub normal: CharBag,
}

impl ZPoint {
    pub fn generators(&self) -> [Monomial; 2] {
        [self.plane * self.l1, self.plane * self.l2]
    }

    /// The pencil lies on the closed orbit `Y`: its plane contains the line.
    pub fn is_y_incident(&self) -> bool {
        self.plane == self.l1 || self.plane == self.l2
    }
}

/// One summand of the localization formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    pub tag: StratumTag,
    pub tangent: CharBag,
    /// Basis of the degree-4 slice, largest first.
    pub quartics: Vec<Monomial>,
    /// Weights of the two pencil generators at the image point in `G(2, S2)`.
    pub pencil: [Character; 2],
    pub provenance: Vec<usize>,
}

impl FixedPoint {
    pub fn quartic_ideal(&self) -> Ideal {
        Ideal::from_monomials(self.quartics.iter().copied()).expect("nonempty quartic system")
    }

    pub fn quartic_basis(&self) -> GroebnerBasis {
        reduce_gb(&self.quartic_ideal())
    }

    /// Checks the structural invariants every summand must satisfy.
    pub fn validate(&self) -> Result<()> {
        if !self.tangent.is_effective() || self.tangent.len() != DIM as i64 {
            return Err(structural(
                "fixed point",
                format!("{} tangent is not 16 effective weights", self.tag),
            ));
        }
        let mut sorted = self.quartics.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != QUARTIC_RANK
            || sorted
                .iter()
                .any(|m| m.x_degree() != 4 || m.t_degree() != 0)
        {
            return Err(structural(
                "fixed point",
                format!("{} quartic system is not 19 distinct quartics", self.tag),
            ));
        }
        let gb = self.quartic_basis();
        if monomials_in_degree(&gb, 4).len() != QUARTIC_RANK {
            return Err(structural(
                "fixed point",
                "degree-4 slice is not 19-dimensional",
            ));
        }
        let hp = hilbert_polynomial(&gb)?;
        if !hp.is_elliptic_quartic() {
            return Err(structural(
                "fixed point",
                format!("Hilbert polynomial {hp} instead of 4*t"),
            ));
        }
        Ok(())
    }
}

fn quartic_slice(ideal: &Ideal) -> Vec<Monomial> {
    monomials_in_degree(&reduce_gb(ideal), 4)
}

/// Splits the pencils into points of the open stratum and points on `Z`.
pub fn split_strata(pairs: &[QuadPair]) -> Result<(Vec<FixedPoint>, Vec<ZPoint>)> {
    let linears = monomials_of_degree(1);
    let lin_bag = bag_of(&linears);
    let quads = monomials_of_degree(2);
    let mut g2 = Vec::new();
    let mut z = Vec::new();
    for (idx, pair) in pairs.iter().enumerate() {
        let p = pair.q1.gcd(&pair.q2);
        if p.is_one() {
            let pencil = Ideal::from_monomials([pair.q1, pair.q2])?;
            let products = Ideal::from_monomials(pencil.generators().iter().flat_map(|g| {
                quads
                    .iter()
                    .map(move |q| g.leading_monomial().unwrap() * *q)
            }))?;
            let quartics = quartic_slice(&products);
            if quartics.len() != QUARTIC_RANK {
                return Err(structural(
                    "split_strata",
                    format!("pair {idx} spans {} quartics", quartics.len()),
                ));
            }
            g2.push(FixedPoint {
                tag: StratumTag::G2,
                tangent: pair.tangent.clone(),
                quartics,
                pencil: [char_of(&pair.q1)?, char_of(&pair.q2)?],
                provenance: alloc::vec![idx],
            });
        } else {
            let l1 = pair.q1.checked_div(&p).expect("gcd divides");
            let l2 = pair.q2.checked_div(&p).expect("gcd divides");
            let tangent_z = grass_tangent(&bag_of(&[l1, l2]), &lin_bag)?
                .union(&grass_tangent(&single(&p), &lin_bag)?);
            let normal = pair.tangent.difference(&tangent_z);
            if !normal.is_effective() || normal.len() != 9 || !normal.is_multiplicity_free() {
                return Err(structural(
                    "split_strata",
                    format!("normal space at pair {idx} is not 9 distinct weights: {normal:?}"),
                ));
            }
            z.push(ZPoint {
                pair: idx,
                plane: p,
                l1,
                l2,
                tangent_z,
                normal,
            });
        }
    }
    Ok((g2, z))
}

/// A point of the first exceptional divisor: the limit cubic system along
/// the normal direction `direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Record {
    pub z: usize,
    pub direction: Character,
    /// Degree-3 slice of the flat limit, largest first.
    pub cubics: Vec<Monomial>,
    pub tangent: CharBag,
}

/// The deformed pencil along `direction`: the first generator divisible by
/// the denominator of the reduced ratio presentation of `direction` is moved
/// by `t` times its translate, the other generator is kept.
pub fn e1_deformation(z: &ZPoint, direction: Character) -> Result<[Polynomial; 2]> {
    let (num, den) = direction.as_ratio();
    let gens = z.generators();
    for (k, ll) in gens.iter().enumerate() {
        if let Some(q) = ll.checked_div(&den) {
            let moved = q * num * Monomial::var(T_VAR);
            let deformed = &Polynomial::monomial(*ll) + &Polynomial::monomial(moved);
            return Ok([Polynomial::monomial(gens[1 - k]), deformed]);
        }
    }
    Err(structural(
        "e1_points",
        format!(
            "no generator of pencil {} divisible by {den} for direction {direction:?}",
            z.pair
        ),
    ))
}

/// `<pencil(t)> * <x0..x3>`, whose saturation in `t` gives the limit cubics.
pub fn e1_deformation_ideal(z: &ZPoint, direction: Character) -> Result<Ideal> {
    let pencil = Ideal::new(e1_deformation(z, direction)?)?;
    Ok(ideal_times_linears(&pencil))
}

/// Degree-3 slice of the flat limit at `t = 0` of a deformation ideal.
pub fn limit_cubics(deformation: &Ideal) -> Result<Vec<Monomial>> {
    let limit = reduce_gb(&set_t_zero(&saturate_t(deformation))?);
    if !limit.is_monomial() {
        return Err(structural(
            "e1_points",
            "flat limit is not a monomial ideal",
        ));
    }
    Ok(monomials_in_degree(&limit, 3))
}

/// One record per normal weight of `z`.
pub fn e1_points(z: &ZPoint, z_index: usize) -> Result<Vec<E1Record>> {
    let mut out = Vec::with_capacity(9);
    for &e in z.normal.distinct() {
        let cubics = limit_cubics(&e1_deformation_ideal(z, e)?)?;
        if cubics.len() != CUBIC_RANK {
            return Err(structural(
                "e1_points",
                format!(
                    "limit along {e:?} at Z point {z_index} has {} cubics",
                    cubics.len()
                ),
            ));
        }
        let tangent = blowup_tangent(&z.tangent_z, &z.normal, e)?;
        out.push(E1Record {
            z: z_index,
            direction: e,
            cubics,
            tangent,
        });
    }
    Ok(out)
}

/// A point of the second blow-up center: plane `plane`, line
/// `<plane, line>`, doublet cut on the line by the quadric `doublet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPoint {
    pub e1: usize,
    pub plane: Monomial,
    pub line: Monomial,
    pub doublet: Monomial,
    /// `plane * residual`, largest first.
    pub cubics: Vec<Monomial>,
    pub residual: Vec<Monomial>,
    pub tangent_w: CharBag,
    pub normal: CharBag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum E1Class {
    Curve(FixedPoint),
    Degenerate(WPoint),
}

/// Sorts an E1 record by the Hilbert polynomial of its cubic system.
pub fn classify_e1(record: &E1Record, e1_index: usize, z: &ZPoint) -> Result<E1Class> {
    let cubic_ideal = Ideal::from_monomials(record.cubics.iter().copied())?;
    let hp = hilbert_polynomial(&reduce_gb(&cubic_ideal))?;
    if hp.is_elliptic_quartic() {
        let quartics = quartic_slice(&ideal_times_linears(&cubic_ideal));
        if quartics.len() != QUARTIC_RANK {
            return Err(structural(
                "classify_e1",
                format!("E1 record {e1_index} spans {} quartics", quartics.len()),
            ));
        }
        let [g1, g2] = z.generators();
        return Ok(E1Class::Curve(FixedPoint {
            tag: StratumTag::G2E1,
            tangent: record.tangent.clone(),
            quartics,
            pencil: [char_of(&g1)?, char_of(&g2)?],
            provenance: alloc::vec![z.pair, record.z, e1_index],
        }));
    }
    degenerate_point(record, e1_index, z, &hp).map(E1Class::Degenerate)
}

fn degenerate_point(
    record: &E1Record,
    e1_index: usize,
    z: &ZPoint,
    hp: &HilbertPoly,
) -> Result<WPoint> {
    let fail = |detail: alloc::string::String| structural("classify_e1", detail);
    let plane = record
        .cubics
        .iter()
        .skip(1)
        .fold(record.cubics[0], |g, m| g.gcd(m));
    if plane.degree() != 1 {
        return Err(fail(format!(
            "E1 record {e1_index} has Hilbert polynomial {hp} but no common plane"
        )));
    }
    let line = if plane == z.l1 {
        z.l2
    } else if plane == z.l2 {
        z.l1
    } else {
        return Err(fail(format!(
            "common plane {plane} of E1 record {e1_index} is not on the pencil line"
        )));
    };
    let residual: Vec<Monomial> = record
        .cubics
        .iter()
        .map(|m| m.checked_div(&plane).expect("common factor"))
        .collect();
    let (pv, lv) = (var_index(&plane), var_index(&line));
    let rest: Vec<usize> = (0..4).filter(|&i| i != pv && i != lv).collect();
    let on_line: Vec<Monomial> = residual
        .iter()
        .copied()
        .filter(|m| m.exponent(pv) == 0 && m.exponent(lv) == 0)
        .collect();
    if on_line.len() != 1 {
        return Err(fail(format!(
            "E1 record {e1_index}: {} residual quadrics on the line, expected one",
            on_line.len()
        )));
    }
    let doublet = on_line[0];
    let linears = bag_of(&monomials_of_degree(1));
    let (a, b) = (Monomial::var(rest[0]), Monomial::var(rest[1]));
    let line_quadrics = bag_of(&[a * a, a * b, b * b]);
    let others = linears.difference(&single(&plane));
    let tangent_w = grass_tangent(&single(&plane), &linears)?
        .union(&grass_tangent(&single(&line), &others)?)
        .union(&grass_tangent(&single(&doublet), &line_quadrics)?);
    let normal = record.tangent.difference(&tangent_w);
    if tangent_w.len() != 7
        || !normal.is_effective()
        || normal.len() != 9
        || !normal.is_multiplicity_free()
    {
        return Err(fail(format!(
            "E1 record {e1_index}: W tangent {tangent_w:?} does not split off 9 distinct normal weights"
        )));
    }
    Ok(WPoint {
        e1: e1_index,
        plane,
        line,
        doublet,
        cubics: record.cubics.clone(),
        residual,
        tangent_w,
        normal,
    })
}

/// Plane quartics singular at the doublet: monomials of degree 4 in the
/// ideal `<line, doublet>^2` not involving the plane.
pub fn singular_plane_quartics(w: &WPoint) -> Vec<Monomial> {
    let pv = var_index(&w.plane);
    let square = [w.line * w.line, w.line * w.doublet, w.doublet * w.doublet];
    monomials_of_degree(4)
        .into_iter()
        .filter(|m| m.exponent(pv) == 0 && square.iter().any(|s| s.divides(m)))
        .collect()
}

/// The twist `c` with `normal + c = weights of the singular plane quartics`.
///
/// The exceptional fiber over a point of `W` is the projective space of
/// those quartics, so its normal weights are their weights up to one common
/// character.
pub fn e2_twist(w: &WPoint) -> Result<Character> {
    let quartics = bag_of(&singular_plane_quartics(w));
    if quartics.len() != w.normal.len() {
        return Err(structural(
            "e2_points",
            format!(
                "{} singular plane quartics for a rank-9 normal space",
                quartics.len()
            ),
        ));
    }
    let diff = quartics.sum() - w.normal.sum();
    let n = w.normal.len();
    if diff.0.iter().any(|v| v % n != 0) {
        return Err(structural(
            "e2_points",
            "normal weights are not a translate",
        ));
    }
    let twist = Character(diff.0.map(|v| v / n));
    if w.normal.shifted(twist) != quartics {
        return Err(structural(
            "e2_points",
            "normal weights are not a translate",
        ));
    }
    Ok(twist)
}

/// One point per normal weight of `w`: `<plane * cubics-residual> * <x0..x3>`
/// plus the plane quartic of the matching weight.
pub fn e2_points(w: &WPoint, w_index: usize, z: &ZPoint) -> Result<Vec<FixedPoint>> {
    let twist = e2_twist(w)?;
    let base = quartic_slice(&ideal_times_linears(&Ideal::from_monomials(
        w.cubics.iter().copied(),
    )?));
    let mut out = Vec::with_capacity(9);
    for (k, &e) in w.normal.distinct().enumerate() {
        let g = (e + twist)
            .to_monomial()
            .ok_or_else(|| structural("e2_points", "twisted weight is not a monomial"))?;
        if base.contains(&g) {
            return Err(structural(
                "e2_points",
                format!("quartic {g} already lies in the base system"),
            ));
        }
        let mut quartics = base.clone();
        quartics.push(g);
        quartics.sort_unstable_by(|a, b| b.cmp(a));
        if quartics.len() != QUARTIC_RANK {
            return Err(structural(
                "e2_points",
                format!("W point {w_index} gives {} quartics", quartics.len()),
            ));
        }
        out.push(FixedPoint {
            tag: StratumTag::E2,
            tangent: blowup_tangent(&w.tangent_w, &w.normal, e)?,
            quartics,
            pencil: [
                char_of(&(w.plane * w.plane))?,
                char_of(&(w.plane * w.line))?,
            ],
            provenance: alloc::vec![z.pair, w.e1, w_index, k],
        });
    }
    Ok(out)
}

/// Every intermediate list of the enumeration.
#[derive(Clone, Debug)]
pub struct Cascade {
    pub pairs: Vec<QuadPair>,
    pub z: Vec<ZPoint>,
    pub e1: Vec<E1Record>,
    pub w: Vec<WPoint>,
    pub g2: Vec<FixedPoint>,
    pub g2e1: Vec<FixedPoint>,
    pub e2: Vec<FixedPoint>,
}

impl Cascade {
    pub fn run() -> Result<Self> {
        let pairs = enumerate_pairs();
        let (g2, z) = split_strata(&pairs)?;
        let mut e1 = Vec::new();
        for (zi, zp) in z.iter().enumerate() {
            e1.extend(e1_points(zp, zi)?);
        }
        let mut g2e1 = Vec::new();
        let mut w = Vec::new();
        for (k, rec) in e1.iter().enumerate() {
            match classify_e1(rec, k, &z[rec.z])? {
                E1Class::Curve(fp) => g2e1.push(fp),
                E1Class::Degenerate(wp) => w.push(wp),
            }
        }
        let mut e2 = Vec::new();
        for (wi, wp) in w.iter().enumerate() {
            let zp = &z[e1[wp.e1].z];
            e2.extend(e2_points(wp, wi, zp)?);
        }
        Ok(Cascade {
            pairs,
            z,
            e1,
            w,
            g2,
            g2e1,
            e2,
        })
    }

    pub fn counts(&self) -> Census {
        Census {
            g2: self.g2.len(),
            g2e1: self.g2e1.len(),
            e2: self.e2.len(),
        }
    }

    pub fn into_fixed_points(self) -> Vec<FixedPoint> {
        let mut out = self.g2;
        out.extend(self.g2e1);
        out.extend(self.e2);
        out
    }
}

/// Stratum counts of an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Census {
    pub g2: usize,
    pub g2e1: usize,
    pub e2: usize,
}

impl Census {
    pub fn of(points: &[FixedPoint]) -> Self {
        let mut c = Census::default();
        for p in points {
            match p.tag {
                StratumTag::G2 => c.g2 += 1,
                StratumTag::G2E1 => c.g2e1 += 1,
                StratumTag::E2 => c.e2 += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.g2 + self.g2e1 + self.e2
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G2={} G2E1={} E2={} total={}",
            self.g2,
            self.g2e1,
            self.e2,
            self.total()
        )
    }
}

/// Euler characteristic of the double blow-up from the blow-up formula
/// `χ(Bl_C X) = χ(X) + χ(C) * (codim C - 1)`.
pub fn euler_characteristic_oracle() -> usize {
    let grassmannian = 45; // C(10, 2)
    let z = 4 * 6; // P^3 dual × G(2, 4)
    let w = 4 * 3 * 3; // flags (plane ⊃ line) × P^2 of doublets
    let first = grassmannian + z * (16 - 7 - 1);
    first + w * (16 - 7 - 1)
}

/// All fixed points in deterministic order: open stratum, first exceptional
/// divisor, second exceptional divisor.
pub fn enumerate_all() -> Result<Vec<FixedPoint>> {
    Ok(Cascade::run()?.into_fixed_points())
}
