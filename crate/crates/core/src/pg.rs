//! Points, lines and collineations of PG(2,q).
//!
//! Points and lines are normalized homogeneous triples (first nonzero entry 1)
//! carrying a canonical index in `[0, q^2+q+1)`:
//! `(0,0,1) -> 0`, `(0,1,z) -> 1 + z`, `(1,y,z) -> 1 + q + y*q + z`.
//! Collineations act on column vectors from the left; lines transform by the
//! inverse transpose so incidence is preserved.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};

pub type Matrix3 = [[Fe; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    index: u32,
    coords: [Fe; 3],
}

impl Point {
    #[inline]
    pub fn index(&self) -> usize {
        self.index as usize
    }

    #[inline]
    pub fn coords(&self) -> [Fe; 3] {
        self.coords
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    index: u32,
    coeffs: [Fe; 3],
}

impl Line {
    #[inline]
    pub fn index(&self) -> usize {
        self.index as usize
    }

    #[inline]
    pub fn coeffs(&self) -> [Fe; 3] {
        self.coeffs
    }
}

/// An element of PGL(3,q), stored with its first nonzero entry equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Collineation {
    matrix: Matrix3,
    /// Cofactor matrix, proportional to the inverse transpose.
    cofactor: Matrix3,
}

impl Collineation {
    pub fn matrix(&self) -> &Matrix3 {
        &self.matrix
    }
}

#[derive(Clone, Debug)]
pub struct Plane {
    field: FieldCtx,
}

impl Plane {
    pub fn new(field: FieldCtx) -> Self {
        Plane { field }
    }

    pub fn with_order(q: u64) -> Result<Self> {
        Ok(Plane::new(FieldCtx::with_order(q)?))
    }

    #[inline]
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `q^2 + q + 1`, also the number of lines.
    #[inline]
    pub fn num_points(&self) -> usize {
        let q = self.q() as usize;
        q * q + q + 1
    }

    fn normalize(&self, v: [Fe; 3]) -> Result<([Fe; 3], u32)> {
        let f = &self.field;
        let lead = v.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        let s = f.inv(v[lead])?;
        let mut out = [Fe::ZERO; 3];
        for i in lead..3 {
            out[i] = f.mul(v[i], s);
        }
        let q = self.q();
        let index = match lead {
            2 => 0,
            1 => 1 + out[2].index(),
            _ => 1 + q + out[1].index() * q + out[2].index(),
        };
        Ok((out, index))
    }

    fn decode(&self, index: usize) -> Option<[Fe; 3]> {
        if index >= self.num_points() {
            return None;
        }
        let q = self.q();
        let i = index as u32;
        let el = |k: u32| self.field.element(k).expect("index within field");
        Some(match i {
            0 => [Fe::ZERO, Fe::ZERO, Fe::ONE],
            i if i <= q => [Fe::ZERO, Fe::ONE, el(i - 1)],
            i => {
                let r = i - 1 - q;
                [Fe::ONE, el(r / q), el(r % q)]
            }
        })
    }

    /// Normalizes a nonzero triple into a point.
    pub fn point_from(&self, v: [Fe; 3]) -> Result<Point> {
        let (coords, index) = self.normalize(v)?;
        Ok(Point { index, coords })
    }

    pub fn line_from(&self, v: [Fe; 3]) -> Result<Line> {
        let (coeffs, index) = self.normalize(v)?;
        Ok(Line { index, coeffs })
    }

    pub fn point(&self, index: usize) -> Option<Point> {
        self.decode(index).map(|coords| Point {
            index: index as u32,
            coords,
        })
    }

    pub fn line(&self, index: usize) -> Option<Line> {
        self.decode(index).map(|coeffs| Line {
            index: index as u32,
            coeffs,
        })
    }

    /// All points in canonical order: `(0,0,1)`, then `(0,1,z)`, then `(1,y,z)`.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.num_points()).map(|i| self.point(i).expect("in range"))
    }

    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        (0..self.num_points()).map(|i| self.line(i).expect("in range"))
    }

    #[inline]
    pub fn dot(&self, a: [Fe; 3], b: [Fe; 3]) -> Fe {
        let f = &self.field;
        f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
    }

    #[inline]
    pub fn incident(&self, p: &Point, l: &Line) -> bool {
        self.dot(p.coords, l.coeffs).is_zero()
    }

    /// The `q+1` points of `l`.
    pub fn points_on_line(&self, l: &Line) -> Vec<Point> {
        let f = &self.field;
        let [a, b, c] = l.coeffs;
        let mut out = Vec::with_capacity(self.q() as usize + 1);
        if !a.is_zero() {
            // a = 1: x1 = -(b x2 + c x3)
            let mut push = |x2: Fe, x3: Fe| {
                let x1 = f.neg(f.add(f.mul(b, x2), f.mul(c, x3)));
                out.push(self.point_from([x1, x2, x3]).expect("nonzero"));
            };
            push(Fe::ZERO, Fe::ONE);
            for t in f.elements() {
                push(Fe::ONE, t);
            }
        } else if !b.is_zero() {
            // x2 = -c x3
            out.push(self.point_from([Fe::ONE, Fe::ZERO, Fe::ZERO]).expect("nonzero"));
            let x2 = f.neg(c);
            for t in f.elements() {
                out.push(self.point_from([t, x2, Fe::ONE]).expect("nonzero"));
            }
        } else {
            out.push(self.point_from([Fe::ZERO, Fe::ONE, Fe::ZERO]).expect("nonzero"));
            for t in f.elements() {
                out.push(self.point_from([Fe::ONE, t, Fe::ZERO]).expect("nonzero"));
            }
        }
        out
    }

    fn cross(&self, u: [Fe; 3], v: [Fe; 3]) -> [Fe; 3] {
        let f = &self.field;
        let m = |a: Fe, b: Fe, c: Fe, d: Fe| f.sub(f.mul(a, b), f.mul(c, d));
        [
            m(u[1], v[2], u[2], v[1]),
            m(u[2], v[0], u[0], v[2]),
            m(u[0], v[1], u[1], v[0]),
        ]
    }

    /// The line through two distinct points.
    pub fn join(&self, p: &Point, r: &Point) -> Result<Line> {
        self.line_from(self.cross(p.coords, r.coords))
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, l: &Line, m: &Line) -> Result<Point> {
        self.point_from(self.cross(l.coeffs, m.coeffs))
    }

    /// True iff the point has a representative over the embedded GF(sqrt(q)).
    pub fn in_baer_subplane(&self, p: &Point) -> Result<bool> {
        self.field.subfield()?;
        Ok(p.coords.iter().all(|&c| self.field.in_subfield(c)))
    }

    /// The standard Baer subplane PG(2, sqrt(q)), in canonical order.
    pub fn baer_subplane(&self) -> Result<Vec<Point>> {
        self.field.subfield()?;
        Ok(self
            .points()
            .filter(|p| p.coords.iter().all(|&c| self.field.in_subfield(c)))
            .collect())
    }

    fn det(&self, m: &Matrix3) -> Fe {
        let c = self.cofactors(m);
        self.dot(m[0], c[0])
    }

    fn cofactors(&self, m: &Matrix3) -> Matrix3 {
        let f = &self.field;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]))
        };
        [
            [minor(1, 2, 1, 2), f.neg(minor(1, 2, 0, 2)), minor(1, 2, 0, 1)],
            [f.neg(minor(0, 2, 1, 2)), minor(0, 2, 0, 2), f.neg(minor(0, 2, 0, 1))],
            [minor(0, 1, 1, 2), f.neg(minor(0, 1, 0, 2)), minor(0, 1, 0, 1)],
        ]
    }

    fn scale_to_leading_one(&self, m: &Matrix3) -> Matrix3 {
        let f = &self.field;
        let lead = m
            .iter()
            .flatten()
            .copied()
            .find(|c| !c.is_zero())
            .expect("nonsingular matrix has a nonzero entry");
        let s = f.inv(lead).expect("nonzero");
        m.map(|row| row.map(|c| f.mul(c, s)))
    }

    pub fn collineation(&self, m: Matrix3) -> Result<Collineation> {
        if self.det(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let matrix = self.scale_to_leading_one(&m);
        let cofactor = self.scale_to_leading_one(&self.cofactors(&matrix));
        Ok(Collineation { matrix, cofactor })
    }

    pub fn identity(&self) -> Collineation {
        let mut m = [[Fe::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Fe::ONE;
        }
        self.collineation(m).expect("identity is invertible")
    }

    fn mat_vec(&self, m: &Matrix3, v: [Fe; 3]) -> [Fe; 3] {
        m.map(|row| self.dot(row, v))
    }

    #[inline]
    pub fn apply(&self, g: &Collineation, p: &Point) -> Point {
        self.point_from(self.mat_vec(&g.matrix, p.coords))
            .expect("nonsingular image")
    }

    pub fn apply_to_line(&self, g: &Collineation, l: &Line) -> Line {
        self.line_from(self.mat_vec(&g.cofactor, l.coeffs))
            .expect("nonsingular image")
    }

    /// `a * b`: apply `b` first.
    pub fn compose(&self, a: &Collineation, b: &Collineation) -> Collineation {
        let f = &self.field;
        let mut m = [[Fe::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).fold(Fe::ZERO, |acc, k| {
                    f.add(acc, f.mul(a.matrix[i][k], b.matrix[k][j]))
                });
            }
        }
        self.collineation(m).expect("product of nonsingular matrices")
    }

    /// Lift of the 2x2 matrix `[[a, b], [c, d]]` into PGL(3,q).
    ///
    /// Odd q: the conic stabilizer representation
    /// `(a^2, 2ac, c^2 / ab, ad+bc, cd / b^2, 2bd, d^2)`, which fixes `X2^2 = X1 X3`.
    /// Even q: `diag(1, A)` with `A` rescaled so that `ad + bc = 1`, which
    /// commutes with the pseudo polarity.
    pub fn pgl2_lift(&self, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Collineation> {
        let f = &self.field;
        if f.p() == 2 {
            let det = f.add(f.mul(a, d), f.mul(b, c));
            if det.is_zero() {
                return Err(Error::Degenerate2x2);
            }
            let s = f.inv(f.sqrt_char2(det)?)?;
            let (a, b, c, d) = (f.mul(a, s), f.mul(b, s), f.mul(c, s), f.mul(d, s));
            let z = Fe::ZERO;
            return self.collineation([[Fe::ONE, z, z], [z, a, b], [z, c, d]]);
        }
        if f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
            return Err(Error::Degenerate2x2);
        }
        let two = f.from_int(2);
        self.collineation([
            [f.square(a), f.mul(two, f.mul(a, c)), f.square(c)],
            [f.mul(a, b), f.add(f.mul(a, d), f.mul(b, c)), f.mul(c, d)],
            [f.square(b), f.mul(two, f.mul(b, d)), f.square(d)],
        ])
    }

    /// Breadth-first closure of `{p}` under the generators; insertion order is
    /// BFS order with generators tried in the given order.
    pub fn orbit(&self, gens: &[Collineation], p: &Point) -> Vec<Point> {
        let mut seen = vec![false; self.num_points()];
        self.orbit_marking(gens, p, &mut seen)
    }

    /// As [`Plane::orbit`], recording visited points in a caller-owned table
    /// so several orbits can be peeled off one partition.
    pub fn orbit_marking(&self, gens: &[Collineation], p: &Point, seen: &mut [bool]) -> Vec<Point> {
        let mut out = vec![*p];
        seen[p.index()] = true;
        let mut queue = VecDeque::from([*p]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.apply(g, &x);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// All elements of the group generated by `gens`. Only for small groups.
    pub fn group_elements(&self, gens: &[Collineation]) -> Vec<Collineation> {
        let id = self.identity();
        let mut seen: HashSet<Collineation> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.compose(g, &x);
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plane(q: u64) -> Plane {
        Plane::with_order(q).unwrap()
    }

    fn random_collineation(pl: &Plane, rng: &mut ChaCha8Rng) -> Collineation {
        let q = pl.q();
        loop {
            let mut m = [[Fe::ZERO; 3]; 3];
            for row in m.iter_mut() {
                for e in row.iter_mut() {
                    *e = pl.field().element(rng.gen_range(0..q)).unwrap();
                }
            }
            if let Ok(g) = pl.collineation(m) {
                return g;
            }
        }
    }

    /// Generators of PGL(2, F) lifted: translation, a primitive diagonal, the swap.
    fn pgl2_generators(pl: &Plane, prim: Fe) -> Vec<Collineation> {
        let (z, o) = (Fe::ZERO, Fe::ONE);
        vec![
            pl.pgl2_lift(o, o, z, o).unwrap(),
            pl.pgl2_lift(prim, z, z, o).unwrap(),
            pl.pgl2_lift(z, o, o, z).unwrap(),
        ]
    }

    #[test]
    fn enumeration_order_and_counts() {
        for q in [2u64, 3, 4, 5, 9, 16] {
            let pl = plane(q);
            let pts: Vec<Point> = pl.points().collect();
            assert_eq!(pts.len() as u64, q * q + q + 1);
            assert_eq!(pts[0].coords(), [Fe::ZERO, Fe::ZERO, Fe::ONE]);
            for (i, p) in pts.iter().enumerate() {
                assert_eq!(p.index(), i);
                assert_eq!(pl.point_from(p.coords()).unwrap(), *p);
                // normalization is scale invariant
                let s = pl.field().generator();
                let scaled = p.coords().map(|c| pl.field().mul(c, s));
                assert_eq!(pl.point_from(scaled).unwrap(), *p);
            }
        }
        assert_eq!(plane(2).num_points(), 7);
        assert_eq!(plane(9).num_points(), 91);
        assert_eq!(plane(3).point_from([Fe::ZERO; 3]), Err(Error::ZeroVector));
    }

    #[test]
    fn incidence_examples() {
        let pl = plane(3);
        let f = pl.field();
        let (z, o) = (Fe::ZERO, Fe::ONE);
        let p = pl.point_from([o, z, z]).unwrap();
        assert!(pl.incident(&p, &pl.line_from([z, z, o]).unwrap()));
        let p = pl.point_from([o, o, o]).unwrap();
        assert!(pl.incident(&p, &pl.line_from([o, o, o]).unwrap()));
        assert!(!pl.incident(&p, &pl.line_from([o, o, z]).unwrap()));
        // 1 + 2 = 0 over GF(3)
        assert!(pl.incident(&p, &pl.line_from([o, f.from_int(2), z]).unwrap()));
    }

    #[test]
    fn line_and_point_degrees() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
            let pl = plane(q);
            let mut per_point = vec![0usize; pl.num_points()];
            for l in pl.lines() {
                let brute: Vec<Point> = pl.points().filter(|p| pl.incident(p, &l)).collect();
                assert_eq!(brute.len() as u64, q + 1);
                let mut listed = pl.points_on_line(&l);
                listed.sort();
                assert_eq!(listed, brute);
                for p in brute {
                    per_point[p.index()] += 1;
                }
            }
            assert!(per_point.iter().all(|&d| d as u64 == q + 1));
        }
    }

    #[test]
    fn join_and_meet() {
        let pl = plane(7);
        let pts: Vec<Point> = pl.points().step_by(5).collect();
        for a in &pts {
            for b in &pts {
                if a != b {
                    let l = pl.join(a, b).unwrap();
                    assert!(pl.incident(a, &l) && pl.incident(b, &l));
                    let m = pl.line(a.index()).unwrap();
                    if m != l {
                        let x = pl.meet(&l, &m).unwrap();
                        assert!(pl.incident(&x, &l) && pl.incident(&x, &m));
                    }
                }
            }
        }
    }

    #[test]
    fn collineations_preserve_incidence() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let pl = plane(q);
            let id = pl.identity();
            assert!(pl.points().all(|p| pl.apply(&id, &p) == p));
            for _ in 0..3 {
                let g = random_collineation(&pl, &mut rng);
                for l in pl.lines() {
                    let gl = pl.apply_to_line(&g, &l);
                    for p in pl.points() {
                        assert_eq!(pl.incident(&p, &l), pl.incident(&pl.apply(&g, &p), &gl));
                    }
                }
                // c*M acts like M
                let c = pl.field().generator();
                let scaled = g.matrix().map(|r| r.map(|e| pl.field().mul(e, c)));
                let g2 = pl.collineation(scaled).unwrap();
                assert_eq!(g2, g);
            }
        }
        let pl = plane(5);
        let z = [Fe::ZERO; 3];
        assert_eq!(pl.collineation([z, z, z]), Err(Error::SingularMatrix));
    }

    #[test]
    fn lift_identity_and_degenerate() {
        for q in [9u64, 8] {
            let pl = plane(q);
            let (z, o) = (Fe::ZERO, Fe::ONE);
            assert_eq!(pl.pgl2_lift(o, z, z, o).unwrap(), pl.identity());
            assert_eq!(pl.pgl2_lift(o, o, o, o), Err(Error::Degenerate2x2));
        }
    }

    /// The conic lift reverses the order of products: the induced Möbius map
    /// on the conic parameter is `t -> (d t + b) / (c t + a)`.
    #[test]
    fn lift_composition_over_gf3_matrices() {
        let pl = plane(9);
        let f = pl.field();
        let sub: Vec<Fe> = f.subfield_elements().unwrap().to_vec();
        let mut mats = Vec::new();
        for &a in &sub {
            for &b in &sub {
                for &c in &sub {
                    for &d in &sub {
                        if !f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
                            mats.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        assert_eq!(mats.len(), 48);
        let mul2 = |x: [Fe; 4], y: [Fe; 4]| {
            [
                f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
                f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
                f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
                f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
            ]
        };
        let lift = |x: [Fe; 4]| pl.pgl2_lift(x[0], x[1], x[2], x[3]).unwrap();
        for &x in &mats {
            for &y in &mats {
                let lhs = pl.compose(&lift(x), &lift(y));
                assert_eq!(lhs, lift(mul2(y, x)));
            }
        }
    }

    #[test]
    fn even_lift_commutes_with_pseudo_polarity() {
        let pl = plane(8);
        let f = pl.field();
        let polar = |p: &Point| {
            let [x1, x2, x3] = p.coords();
            pl.line_from([x1, x3, x2]).unwrap()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let e: Vec<Fe> = (0..4).map(|_| f.element(rng.gen_range(0..8)).unwrap()).collect();
            let Ok(g) = pl.pgl2_lift(e[0], e[1], e[2], e[3]) else { continue };
            for p in pl.points() {
                assert_eq!(polar(&pl.apply(&g, &p)), pl.apply_to_line(&g, &polar(&p)));
            }
        }
    }

    #[test]
    fn sampled_lifts_stabilize_the_conic() {
        let pl = plane(9);
        let f = pl.field();
        let on_conic = |p: &Point| {
            let [x1, x2, x3] = p.coords();
            f.sub(f.square(x2), f.mul(x1, x3)).is_zero()
        };
        let conic: Vec<usize> = pl.points().filter(on_conic).map(|p| p.index()).collect();
        assert_eq!(conic.len(), 10);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut sampled = 0;
        while sampled < 100 {
            let e: Vec<Fe> = (0..4).map(|_| f.element(rng.gen_range(0..9)).unwrap()).collect();
            let Ok(g) = pl.pgl2_lift(e[0], e[1], e[2], e[3]) else { continue };
            let mut image: Vec<usize> = conic
                .iter()
                .map(|&i| pl.apply(&g, &pl.point(i).unwrap()).index())
                .collect();
            image.sort();
            assert_eq!(image, conic);
            sampled += 1;
        }
    }

    #[test]
    fn orbits() {
        let pl = plane(9);
        let f = pl.field();
        let u2 = pl.point_from([Fe::ZERO, Fe::ONE, Fe::ZERO]).unwrap();
        assert_eq!(pl.orbit(&[], &u2), vec![u2]);

        let gens = pgl2_generators(&pl, f.generator());
        let mut orbit: Vec<usize> = pl.orbit(&gens, &u2).iter().map(|p| p.index()).collect();
        orbit.sort();
        let external: Vec<usize> = pl
            .points()
            .filter(|p| {
                let [x1, x2, x3] = p.coords();
                let v = f.sub(f.square(x2), f.mul(x1, x3));
                !v.is_zero() && f.is_square(v)
            })
            .map(|p| p.index())
            .collect();
        assert_eq!(orbit.len(), 45);
        assert_eq!(orbit, external);

        // orbit-stabilizer over the subfield group PGL(2,3), order 24
        let prim = f.subfield_embed(f.subfield().unwrap().generator()).unwrap();
        let gens = pgl2_generators(&pl, prim);
        let group = pl.group_elements(&gens);
        assert_eq!(group.len(), 24);
        let mut seen = vec![false; pl.num_points()];
        for p in pl.points() {
            if !seen[p.index()] {
                let o = pl.orbit_marking(&gens, &p, &mut seen);
                assert_eq!(group.len() % o.len(), 0);
            }
        }
    }

    #[test]
    fn baer_subplane() {
        let pl = plane(9);
        let f = pl.field();
        let baer = pl.baer_subplane().unwrap();
        assert_eq!(baer.len(), 13);
        let u1 = pl.point_from([Fe::ONE, Fe::ZERO, Fe::ZERO]).unwrap();
        assert!(pl.in_baer_subplane(&u1).unwrap());
        for g in f.elements().filter(|&g| !f.in_subfield(g)) {
            let p = pl.point_from([Fe::ONE, g, Fe::ZERO]).unwrap();
            assert!(!pl.in_baer_subplane(&p).unwrap());
        }
        assert_eq!(plane(8).baer_subplane(), Err(Error::OddDegree(3)));

        // every point off B is on exactly one line meeting B in sqrt(q)+1 points
        let in_b: Vec<bool> = pl.points().map(|p| pl.in_baer_subplane(&p).unwrap()).collect();
        let baer_lines: Vec<Line> = pl
            .lines()
            .filter(|l| pl.points_on_line(l).iter().filter(|p| in_b[p.index()]).count() == 4)
            .collect();
        assert_eq!(baer_lines.len(), 13);
        for p in pl.points().filter(|p| !in_b[p.index()]) {
            let through = baer_lines.iter().filter(|l| pl.incident(&p, l)).count();
            assert_eq!(through, 1);
        }
    }
}
