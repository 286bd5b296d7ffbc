//! Even q: Denniston arcs as cocliques, and the triangle-free set.
//!
//! With `Tr(alpha) = 1`, the conics `C_mu : X2^2 + X2 X3 + alpha X3^2 + mu X1^2 = 0`
//! together with the absolute line `X1 = 0` partition the plane; `C_0 = {U1}`.
//! A point `(1, y, z)` lies on `C_mu` for `mu = y^2 + yz + alpha z^2`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::{field_value, Certificate, ConstructionId};
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};
use crate::graphs::Graph;
use crate::pg::{Collineation, Point};
use crate::polarity::Polarity;

fn require_even(pol: &Polarity) -> Result<&FieldCtx> {
    let f = pol.plane().field();
    if f.p() != 2 {
        return Err(Error::NotEven(f.q()));
    }
    Ok(f)
}

/// The `mu` with `p ∈ C_mu`, or `None` for points of the absolute line.
pub fn pencil_parameter(f: &FieldCtx, alpha: Fe, p: &Point) -> Option<Fe> {
    let [x1, y, z] = p.coords();
    if x1.is_zero() {
        return None;
    }
    Some(f.add(f.add(f.square(y), f.mul(y, z)), f.mul(alpha, f.square(z))))
}

pub fn conic_points(pol: &Polarity, alpha: Fe, mu: Fe) -> Vec<Point> {
    let f = pol.plane().field();
    pol.plane()
        .points()
        .filter(|p| pencil_parameter(f, alpha, p) == Some(mu))
        .collect()
}

/// A set `N` with `Tr(xy) = 0` for all `x, y ∈ N`, sorted.
///
/// Odd `n`: a maximal totally isotropic subspace of the trace-zero hyperplane
/// under `(x, y) -> Tr(xy)`, of size `2^((n-1)/2)`, built greedily in canonical
/// order. Even `n`: the subfield GF(sqrt q).
pub fn trace_zero_set(f: &FieldCtx) -> Result<Vec<Fe>> {
    if f.p() != 2 {
        return Err(Error::OddCharacteristic(f.p()));
    }
    if f.n().is_multiple_of(2) {
        let mut v = f.subfield_elements()?.to_vec();
        v.sort();
        return Ok(v);
    }
    let target = (f.n() - 1) / 2;
    let mut basis: Vec<Fe> = Vec::new();
    let mut span = vec![Fe::ZERO];
    for x in f.elements() {
        if basis.len() as u32 == target {
            break;
        }
        if f.trace_bit(x) == 1 || span.contains(&x) || basis.iter().any(|&b| f.trace_bit(f.mul(x, b)) == 1) {
            continue;
        }
        basis.push(x);
        let shifted: Vec<Fe> = span.iter().map(|&s| f.add(s, x)).collect();
        span.extend(shifted);
    }
    assert_eq!(basis.len() as u32, target, "isotropic subspace of full dimension");
    span.sort();
    Ok(span)
}

#[derive(Clone, Debug)]
pub struct MaximalArc {
    pub degree: usize,
    /// Sorted by canonical index.
    pub points: Vec<Point>,
    /// The additive subgroup `A` of pencil parameters, sorted.
    pub additive: Vec<Fe>,
    /// Number of lines meeting the set in `k` points, keyed by `k`.
    pub line_profile: BTreeMap<usize, usize>,
}

impl MaximalArc {
    /// Every line meets the set in 0 or `degree` points, and the size is
    /// `(degree - 1) q + degree`.
    pub fn is_maximal(&self, q: u32) -> bool {
        let q = q as usize;
        self.points.len() == (self.degree - 1) * q + self.degree
            && self.line_profile.keys().all(|&k| k == 0 || k == self.degree)
    }
}

fn line_profile(pol: &Polarity, member: &[bool]) -> BTreeMap<usize, usize> {
    let pl = pol.plane();
    let mut profile = BTreeMap::new();
    for l in pl.lines() {
        let k = pl.points_on_line(&l).iter().filter(|p| member[p.index()]).count();
        *profile.entry(k).or_default() += 1;
    }
    profile
}

/// Union of the conics `C_mu` for `mu ∈ A = {lambda^2 : lambda ∈ N}`.
pub fn denniston_arc(pol: &Polarity, alpha: Fe, n_set: &[Fe]) -> Result<MaximalArc> {
    let f = require_even(pol)?;
    let mut additive: Vec<Fe> = n_set.iter().map(|&l| f.square(l)).collect();
    additive.sort();
    additive.dedup();
    for &a in &additive {
        for &b in &additive {
            if additive.binary_search(&f.add(a, b)).is_err() {
                return Err(Error::NotAdditive);
            }
        }
    }
    let pl = pol.plane();
    let mut in_a = vec![false; f.q() as usize];
    for a in &additive {
        in_a[a.index() as usize] = true;
    }
    let points: Vec<Point> = pl
        .points()
        .filter(|p| pencil_parameter(f, alpha, p).is_some_and(|mu| in_a[mu.index() as usize]))
        .collect();
    let mut member = vec![false; pl.num_points()];
    for p in &points {
        member[p.index()] = true;
    }
    Ok(MaximalArc {
        degree: additive.len(),
        points,
        additive,
        line_profile: line_profile(pol, &member),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    /// Points off the set whose polar line misses the set.
    pub candidates: usize,
    pub expected_candidates: Option<u64>,
    /// Size after greedily adding candidates in canonical order.
    pub greedy_size: usize,
    #[serde(skip)]
    pub candidate_points: Vec<Point>,
    #[serde(skip)]
    pub greedy_points: Vec<Point>,
}

/// Extension candidates of a coclique and a greedy extension by them; not
/// certified against any formula.
pub fn extension_report(pol: &Polarity, set: &[Point]) -> ExtensionReport {
    let pl = pol.plane();
    let mut member = vec![false; pl.num_points()];
    for p in set {
        member[p.index()] = true;
    }
    let misses = |p: &Point, member: &[bool]| {
        pl.points_on_line(&pol.polar(p))
            .iter()
            .all(|r| r == p || !member[r.index()])
    };
    let candidate_points: Vec<Point> = pl
        .points()
        .filter(|p| !member[p.index()] && misses(p, &member))
        .collect();
    let mut greedy_points = set.to_vec();
    for c in &candidate_points {
        if misses(c, &member) {
            member[c.index()] = true;
            greedy_points.push(*c);
        }
    }
    greedy_points.sort();
    let q = pol.q() as u64;
    let n = pl.field().n();
    let expected_candidates = (n % 2 == 1 && pl.field().p() == 2).then(|| (1u64 << ((n - 1) / 2)) * (q + 1));
    ExtensionReport {
        candidates: candidate_points.len(),
        expected_candidates,
        greedy_size: greedy_points.len(),
        candidate_points,
        greedy_points,
    }
}

fn arc_certificate(id: ConstructionId, pol: &Polarity, alpha: Fe, n_set: &[Fe]) -> Result<Certificate> {
    let f = pol.plane().field();
    let arc = denniston_arc(pol, alpha, n_set)?;
    let products_clear = n_set
        .iter()
        .all(|&x| n_set.iter().all(|&y| f.trace_bit(f.mul(x, y)) == 0));
    let mut parameters = BTreeMap::new();
    parameters.insert("alpha".to_string(), field_value(f, alpha));
    parameters.insert(
        "n_set".to_string(),
        json!(n_set.iter().map(|&x| f.coeffs(x)).collect::<Vec<_>>()),
    );
    parameters.insert(
        "additive_subgroup".to_string(),
        json!(arc.additive.iter().map(|&x| f.coeffs(x)).collect::<Vec<_>>()),
    );
    parameters.insert("degree".to_string(), json!(arc.degree));
    parameters.insert(
        "line_profile".to_string(),
        json!(arc
            .line_profile
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect::<BTreeMap<_, _>>()),
    );
    let maximal = arc.is_maximal(f.q());
    let mut cert = Certificate::new(id, pol, arc.points, parameters);
    cert.verified.insert("maximal_arc".into(), maximal);
    cert.verified.insert("trace_products_zero".into(), products_clear);
    Ok(cert)
}

/// `q = 2^n`, `n >= 3` odd: the Denniston arc of degree `sqrt(q/2)` as a
/// coclique, with its extension report.
pub fn coclique_even(pol: &Polarity) -> Result<(Certificate, ExtensionReport)> {
    let f = pol.plane().field();
    if f.p() != 2 || f.n().is_multiple_of(2) || f.n() < 3 {
        return Err(Error::NotOddPower(f.q()));
    }
    let alpha = f.find_trace_one()?;
    let n_set = trace_zero_set(f)?;
    let cert = arc_certificate(ConstructionId::EvenArc, pol, alpha, &n_set)?;
    let report = extension_report(pol, &cert.points);
    Ok((cert, report))
}

/// `q = 4^k`: the Denniston arc of degree `sqrt q` built on the subfield.
pub fn coclique_even_square(pol: &Polarity) -> Result<Certificate> {
    let f = require_even(pol)?;
    if f.n() % 2 == 1 {
        return Err(Error::OddDegree(f.n()));
    }
    let alpha = f.find_trace_one()?;
    let n_set = trace_zero_set(f)?;
    arc_certificate(ConstructionId::EvenSqSubfieldArc, pol, alpha, &n_set)
}

/// Whether every point of `C_{lambda^2}` has a polar line missing `C_{lambda^2}`.
pub fn lemma_conics_check(pol: &Polarity, alpha: Fe, lambda: Fe) -> Result<bool> {
    let f = require_even(pol)?;
    let conic = conic_points(pol, alpha, f.square(lambda));
    let mut member = vec![false; pol.plane().num_points()];
    for p in &conic {
        member[p.index()] = true;
    }
    Ok(conic.iter().all(|r| {
        pol.plane()
            .points_on_line(&pol.polar(r))
            .iter()
            .all(|x| !member[x.index()])
    }))
}

/// A generator of `C = {[[1,0,0],[0,a,alpha b],[0,b,a+b]] : a^2+ab+alpha b^2 = 1}`,
/// the first in `(a, b)` canonical order whose order is `q + 1`.
pub fn cyclic_group_generator(pol: &Polarity, alpha: Fe) -> Result<Collineation> {
    let f = require_even(pol)?;
    let pl = pol.plane();
    let id = pl.identity();
    let order = f.q() as usize + 1;
    let z = Fe::ZERO;
    for a in f.elements() {
        for b in f.elements() {
            let norm = f.add(f.add(f.square(a), f.mul(a, b)), f.mul(alpha, f.square(b)));
            if norm != Fe::ONE {
                continue;
            }
            let g = pl.collineation([[Fe::ONE, z, z], [z, a, f.mul(alpha, b)], [z, b, f.add(a, b)]])?;
            let mut x = g.clone();
            let mut k = 1;
            while x != id && k <= order {
                x = pl.compose(&g, &x);
                k += 1;
            }
            if k == order {
                return Ok(g);
            }
        }
    }
    unreachable!("C is cyclic of order q + 1")
}

#[derive(Clone, Debug)]
pub struct TriangleFreeSet {
    pub q: u32,
    pub alpha: Fe,
    pub lambda: Fe,
    /// Sorted by canonical index.
    pub points: Vec<Point>,
    /// Membership by the trace criterion agrees with the secant definition.
    pub trace_criterion_agrees: bool,
    /// Points off the absolute line covered by the dual conic `(P_lambda^perp)^C`
    /// agree with the secant definition.
    pub dual_conic_agrees: bool,
    /// The set is mapped to itself by a generator of `C`.
    pub cyclic_invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleFreeReport {
    pub size: usize,
    pub size_matches: bool,
    pub triangles: u64,
    pub regular_degree: Option<usize>,
    pub girth: Option<usize>,
    pub no_absolute: bool,
}

impl TriangleFreeReport {
    pub fn all_ok(&self, q: u32) -> bool {
        self.size_matches
            && self.triangles == 0
            && self.regular_degree == Some(q as usize / 2)
            && self.girth.is_none_or(|g| g >= 5)
            && self.no_absolute
    }
}

/// `S = {R off X1 = 0 : R^perp is secant to C_{lambda^2}}`, `|S| = q(q+1)/2`.
/// `lambda` defaults to the first nonzero trace-zero element.
pub fn triangle_free_set(pol: &Polarity, lambda: Option<Fe>) -> Result<TriangleFreeSet> {
    let f = require_even(pol)?;
    let pl = pol.plane();
    let lambda = match lambda {
        Some(l) if l.is_zero() || f.trace_bit(l) == 1 => return Err(Error::InvalidLambda),
        Some(l) => l,
        None => f
            .elements()
            .find(|&l| !l.is_zero() && f.trace_bit(l) == 0)
            .ok_or(Error::NoValidLambda(f.q()))?,
    };
    let alpha = f.find_trace_one()?;
    let l2 = f.square(lambda);
    let mut on_conic = vec![false; pl.num_points()];
    for p in conic_points(pol, alpha, l2) {
        on_conic[p.index()] = true;
    }
    let points: Vec<Point> = pl
        .points()
        .filter(|r| !r.coords()[0].is_zero())
        .filter(|r| {
            pl.points_on_line(&pol.polar(r))
                .iter()
                .filter(|x| on_conic[x.index()])
                .count()
                == 2
        })
        .collect();
    let mut member = vec![false; pl.num_points()];
    for p in &points {
        member[p.index()] = true;
    }

    // R = (1, y, x): Tr(alpha l^2 x^2 + l^2 y^2 + l^4 x^2 y^2) = 1
    let trace_criterion_agrees = pl.points().filter(|r| !r.coords()[0].is_zero()).all(|r| {
        let [_, y, x] = r.coords();
        let (x2, y2) = (f.square(x), f.square(y));
        let t = f.add(
            f.add(f.mul(alpha, f.mul(l2, x2)), f.mul(l2, y2)),
            f.mul(f.square(l2), f.mul(x2, y2)),
        );
        (f.trace_bit(t) == 1) == member[r.index()]
    });

    let gen = cyclic_group_generator(pol, alpha)?;
    let p_lambda = pl.point_from([Fe::ONE, lambda, Fe::ZERO])?;
    let mut line = pol.polar(&p_lambda);
    let mut cover = vec![0u8; pl.num_points()];
    for _ in 0..=f.q() {
        for x in pl.points_on_line(&line) {
            cover[x.index()] += 1;
        }
        line = pl.apply_to_line(&gen, &line);
    }
    let dual_conic_agrees = line == pol.polar(&p_lambda)
        && pl
            .points()
            .filter(|r| !r.coords()[0].is_zero())
            .all(|r| (cover[r.index()] > 0) == member[r.index()]);

    let cyclic_invariant = points.iter().all(|p| member[pl.apply(&gen, p).index()]);

    Ok(TriangleFreeSet {
        q: f.q(),
        alpha,
        lambda,
        points,
        trace_criterion_agrees,
        dual_conic_agrees,
        cyclic_invariant,
    })
}

impl TriangleFreeSet {
    pub fn indices(&self) -> Vec<usize> {
        self.points.iter().map(Point::index).collect()
    }

    pub fn verify(&self, pol: &Polarity, er: &Graph) -> Result<TriangleFreeReport> {
        let sub = er.induced(&self.indices())?;
        let q = self.q as u64;
        let degree = sub.degree(0);
        Ok(TriangleFreeReport {
            size: self.points.len(),
            size_matches: self.points.len() as u64 == q * (q + 1) / 2,
            triangles: sub.triangle_count(),
            regular_degree: sub.is_regular(degree).then_some(degree),
            girth: sub.girth(),
            no_absolute: self.points.iter().all(|p| !pol.is_absolute(p)),
        })
    }

    pub fn certificate(&self, pol: &Polarity, er: &Graph) -> Result<Certificate> {
        let f = pol.plane().field();
        let report = self.verify(pol, er)?;
        let mut parameters = BTreeMap::new();
        parameters.insert("alpha".to_string(), field_value(f, self.alpha));
        parameters.insert("lambda".to_string(), field_value(f, self.lambda));
        parameters.insert("regular_degree".to_string(), json!(report.regular_degree));
        parameters.insert("girth".to_string(), json!(report.girth));
        let mut cert = Certificate::new(ConstructionId::TriangleFree, pol, self.points.clone(), parameters);
        let v = &mut cert.verified;
        v.insert("triangle_free".into(), report.triangles == 0);
        v.insert("regular".into(), report.regular_degree == Some(self.q as usize / 2));
        v.insert("girth_at_least_5".into(), report.girth.is_none_or(|g| g >= 5));
        v.insert("no_absolute".into(), report.no_absolute);
        v.insert("trace_criterion_agrees".into(), self.trace_criterion_agrees);
        v.insert("dual_conic_agrees".into(), self.dual_conic_agrees);
        v.insert("cyclic_invariant".into(), self.cyclic_invariant);
        Ok(cert)
    }
}
