//! Odd square q: the conic plus one orbit of internal points.
//!
//! `G` is the lift of PGL(2, sqrt q), the stabilizer of the Baer conic `c`.
//! `K = {[[a^2, 2ac, c^2], [0, a, c], [0, 0, 1]] : a^(sqrt q + 1) = 1}`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::{field_value, is_coclique, Certificate, ConstructionId};
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};
use crate::pg::{Collineation, Plane, Point};
use crate::polarity::{PointClass, Polarity, PolarityKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitClass {
    /// Conic points outside the Baer subplane.
    Conic,
    /// External points on a tangent to the Baer conic.
    ExternalTangent,
    External,
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CensusEntry {
    pub class: OrbitClass,
    pub size: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub q: u32,
    /// Sorted by class, then size.
    pub entries: Vec<CensusEntry>,
}

impl OrbitCensus {
    /// The decomposition of the points off the Baer subplane predicted for
    /// odd square `q`.
    pub fn expected(q: u32) -> Vec<CensusEntry> {
        let r = super::exact_sqrt(q as u64).expect("square q") as usize;
        let q = q as usize;
        let half = (q * r - r) / 2;
        let mut v = vec![
            CensusEntry {
                class: OrbitClass::Conic,
                size: q - r,
                multiplicity: 1,
            },
            CensusEntry {
                class: OrbitClass::ExternalTangent,
                size: q * r - r,
                multiplicity: 1,
            },
            CensusEntry {
                class: OrbitClass::External,
                size: half,
                multiplicity: r - 2,
            },
            CensusEntry {
                class: OrbitClass::Internal,
                size: half,
                multiplicity: r,
            },
        ];
        v.retain(|e| e.multiplicity > 0);
        v
    }

    pub fn matches_expected(&self) -> bool {
        self.entries == Self::expected(self.q)
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.size * e.multiplicity).sum()
    }
}

/// An orbit of internal points with the coclique test applied to it.
#[derive(Clone, Debug)]
pub struct OrbitCheck {
    pub base: Point,
    pub points: Vec<Point>,
    /// `|P^perp ∩ O| = 0` for the base point.
    pub base_point_clear: bool,
    /// The same for every point of the orbit.
    pub all_points_clear: bool,
}

fn odd_square_root(pol: &Polarity) -> Result<u32> {
    let f = pol.plane().field();
    match (pol.kind(), f.sqrt_order()) {
        (PolarityKind::Orthogonal, Some(r)) => Ok(r),
        _ => Err(Error::NotOddSquare(pol.q())),
    }
}

fn require_residue(pol: &Polarity, expected: u32) -> Result<u32> {
    let r = odd_square_root(pol)?;
    if r % 4 != expected {
        return Err(Error::WrongResidue {
            q: pol.q(),
            expected,
        });
    }
    Ok(r)
}

/// Generators of `G`: `x -> x+1`, `x -> g x` (g primitive in the subfield)
/// and `x -> 1/x`, lifted.
pub fn g_generators(pl: &Plane) -> Result<Vec<Collineation>> {
    let f = pl.field();
    if f.p() == 2 || f.n() % 2 == 1 {
        return Err(Error::NotOddSquare(f.q()));
    }
    let prim = f.subfield_embed(f.subfield()?.generator())?;
    let (o, z) = (Fe::ONE, Fe::ZERO);
    Ok(vec![
        pl.pgl2_lift(o, o, z, o)?,
        pl.pgl2_lift(prim, z, z, o)?,
        pl.pgl2_lift(z, o, o, z)?,
    ])
}

/// Elements of `K` by direct enumeration, `q (sqrt q + 1)` of them.
pub fn k_group(pl: &Plane) -> Result<Vec<Collineation>> {
    let f = pl.field();
    if f.p() == 2 {
        return Err(Error::NotOddSquare(f.q()));
    }
    let r = f.sqrt_order().ok_or(Error::NotOddSquare(f.q()))?;
    let two = f.from_int(2);
    let z = Fe::ZERO;
    let units: Vec<Fe> = f
        .elements()
        .filter(|&a| f.pow(a, r as u64 + 1) == Fe::ONE)
        .collect();
    let mut out = Vec::with_capacity(units.len() * f.q() as usize);
    for &a in &units {
        for c in f.elements() {
            out.push(pl.collineation([
                [f.square(a), f.mul(two, f.mul(a, c)), f.square(c)],
                [z, a, c],
                [z, z, Fe::ONE],
            ])?);
        }
    }
    Ok(out)
}

fn absolute_points(pol: &Polarity) -> Vec<Point> {
    pol.plane().points().filter(|p| pol.is_absolute(p)).collect()
}

/// Number of points of `orbit` on the polar line of `p`.
fn polar_hits(pol: &Polarity, member: &[bool], p: &Point) -> usize {
    pol.plane()
        .points_on_line(&pol.polar(p))
        .iter()
        .filter(|r| member[r.index()])
        .count()
}

fn check_orbit(pol: &Polarity, base: Point, points: Vec<Point>) -> OrbitCheck {
    let mut member = vec![false; pol.plane().num_points()];
    for p in &points {
        member[p.index()] = true;
    }
    let base_point_clear = polar_hits(pol, &member, &base) == 0;
    let all_points_clear = points.iter().all(|p| polar_hits(pol, &member, p) == 0);
    OrbitCheck {
        base,
        points,
        base_point_clear,
        all_points_clear,
    }
}

/// `(1, 0, w)` with `w` the first nonsquare; an internal point on `X2 = 0`.
fn base_point(pol: &Polarity) -> Result<(Fe, Point)> {
    let f = pol.plane().field();
    let w = f.find_nonsquare()?;
    let p = pol.plane().point_from([Fe::ONE, Fe::ZERO, w])?;
    debug_assert_eq!(pol.classify(&p), PointClass::Internal);
    Ok((w, p))
}

/// Orbits of `G` on the points off the Baer subplane, tallied by class and size.
pub fn orbit_census_odd_square(pol: &Polarity) -> Result<OrbitCensus> {
    odd_square_root(pol)?;
    let pl = pol.plane();
    let gens = g_generators(pl)?;
    let baer = pl.baer_subplane()?;
    let baer_conic: Vec<Point> = baer.iter().copied().filter(|p| pol.is_absolute(p)).collect();
    let mut seen = vec![false; pl.num_points()];
    for p in &baer {
        seen[p.index()] = true;
    }
    let classify = |p: &Point| match pol.classify(p) {
        PointClass::Absolute => OrbitClass::Conic,
        PointClass::Internal => OrbitClass::Internal,
        PointClass::External if baer_conic.iter().any(|r| pol.conjugate(r, p)) => OrbitClass::ExternalTangent,
        _ => OrbitClass::External,
    };
    let mut tally: BTreeMap<(OrbitClass, usize), usize> = BTreeMap::new();
    for p in pl.points() {
        if seen[p.index()] {
            continue;
        }
        let orbit = pl.orbit_marking(&gens, &p, &mut seen);
        let class = classify(&p);
        assert!(
            orbit.iter().all(|x| classify(x) == class),
            "G-orbit of {p:?} mixes point classes"
        );
        *tally.entry((class, orbit.len())).or_default() += 1;
    }
    Ok(OrbitCensus {
        q: pol.q(),
        entries: tally
            .into_iter()
            .map(|((class, size), multiplicity)| CensusEntry {
                class,
                size,
                multiplicity,
            })
            .collect(),
    })
}

/// The `G`-orbits of the internal points of `X2 = 0`, each tested for the
/// coclique property. For `sqrt q ≡ 3 (mod 4)` every one passes.
pub fn good_internal_orbits(pol: &Polarity) -> Result<Vec<OrbitCheck>> {
    odd_square_root(pol)?;
    let pl = pol.plane();
    let gens = g_generators(pl)?;
    let mut seen = vec![false; pl.num_points()];
    let mut out = Vec::new();
    for p in pl.points() {
        let [_, x2, _] = p.coords();
        if !x2.is_zero() || seen[p.index()] || pol.classify(&p) != PointClass::Internal {
            continue;
        }
        let orbit = pl.orbit_marking(&gens, &p, &mut seen);
        out.push(check_orbit(pol, p, orbit));
    }
    Ok(out)
}

/// For each pair of orbits from [`good_internal_orbits`], whether the conic
/// together with both orbits is still a coclique.
pub fn orbit_union_experiment(pol: &Polarity) -> Result<Vec<(usize, usize, bool)>> {
    let orbits = good_internal_orbits(pol)?;
    let conic = absolute_points(pol);
    let mut out = Vec::new();
    for i in 0..orbits.len() {
        for j in i + 1..orbits.len() {
            let mut set = conic.clone();
            set.extend(&orbits[i].points);
            set.extend(&orbits[j].points);
            out.push((i, j, is_coclique(pol, &set)));
        }
    }
    Ok(out)
}

/// Partition of the internal points into `K`-orbits, in order of least element.
pub fn k_internal_orbits(pol: &Polarity) -> Result<Vec<Vec<Point>>> {
    odd_square_root(pol)?;
    let pl = pol.plane();
    let k = k_group(pl)?;
    let mut seen = vec![false; pl.num_points()];
    let mut out = Vec::new();
    for p in pl.points() {
        if seen[p.index()] || pol.classify(&p) != PointClass::Internal {
            continue;
        }
        let mut orbit: Vec<Point> = k.iter().map(|g| pl.apply(g, &p)).collect();
        orbit.sort();
        orbit.dedup();
        for x in &orbit {
            seen[x.index()] = true;
        }
        out.push(orbit);
    }
    Ok(out)
}

fn orbit_certificate(
    id: ConstructionId,
    pol: &Polarity,
    w: Fe,
    check: OrbitCheck,
    expected_orbit: usize,
    group: &str,
) -> Certificate {
    let f = pol.plane().field();
    let mut parameters = BTreeMap::new();
    parameters.insert("w".to_string(), field_value(f, w));
    parameters.insert(
        "orbit_base".to_string(),
        json!(check.base.coords().map(|c| f.coeffs(c))),
    );
    parameters.insert("orbit_size".to_string(), json!(check.points.len()));
    parameters.insert("group".to_string(), json!(group));
    let mut points = absolute_points(pol);
    points.extend(&check.points);
    let mut cert = Certificate::new(id, pol, points, parameters);
    cert.verified.insert("orbit_size_matches".into(), check.points.len() == expected_orbit);
    cert.verified.insert("base_point_clear".into(), check.base_point_clear);
    cert.verified.insert("all_points_clear".into(), check.all_points_clear);
    cert
}

/// `sqrt q ≡ 3 (mod 4)`: conic plus the `G`-orbit of `(1, 0, w)`.
pub fn coclique_odd_sq_neg(pol: &Polarity) -> Result<Certificate> {
    let r = require_residue(pol, 3)? as usize;
    let pl = pol.plane();
    let (w, base) = base_point(pol)?;
    let orbit = pl.orbit(&g_generators(pl)?, &base);
    let check = check_orbit(pol, base, orbit);
    let q = pol.q() as usize;
    Ok(orbit_certificate(
        ConstructionId::OddSqNeg,
        pol,
        w,
        check,
        (q * r - r) / 2,
        "pgl2_subfield_lift",
    ))
}

/// `sqrt q ≡ 1 (mod 4)`: conic plus the `K`-orbit of `(1, 0, w)`.
pub fn coclique_odd_sq_pos(pol: &Polarity) -> Result<Certificate> {
    let r = require_residue(pol, 1)? as usize;
    let pl = pol.plane();
    let (w, base) = base_point(pol)?;
    let mut orbit: Vec<Point> = k_group(pl)?.iter().map(|g| pl.apply(g, &base)).collect();
    orbit.sort();
    orbit.dedup();
    let check = check_orbit(pol, base, orbit);
    let q = pol.q() as usize;
    Ok(orbit_certificate(
        ConstructionId::OddSqPos,
        pol,
        w,
        check,
        q * (r + 1) / 2,
        "k_affine_unit_norm",
    ))
}

/// Elements `a` where `a^(sqrt q + 1)` being a square in the subfield
/// disagrees with `a` being a square.
pub fn lemma_square_counterexamples(f: &FieldCtx) -> Result<Vec<Fe>> {
    if f.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let sub = f.subfield()?;
    let mut bad = Vec::new();
    for a in f.elements() {
        if sub.is_square(f.norm_to_subfield(a)?) != f.is_square(a) {
            bad.push(a);
        }
    }
    Ok(bad)
}

/// Unit-norm `a` with `a^2 + 1` a nonsquare; needs `sqrt q ≡ 1 (mod 4)`.
pub fn lemma_tec_counterexamples(f: &FieldCtx) -> Result<Vec<Fe>> {
    if f.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let r = f.sqrt_order().ok_or(Error::NotOddSquare(f.q()))?;
    if r % 4 != 1 {
        return Err(Error::WrongResidue { q: f.q(), expected: 1 });
    }
    Ok(f.elements()
        .filter(|&a| f.pow(a, r as u64 + 1) == Fe::ONE)
        .filter(|&a| !f.is_square(f.add(f.square(a), Fe::ONE)))
        .collect())
}
