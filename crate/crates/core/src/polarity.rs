//! Polarities of PG(2,q) and the Erdős–Rényi graph.
//!
//! q odd: the orthogonal polarity of the conic `X2^2 - X1 X3 = 0`,
//! `(x1,x2,x3) -> [x3, -2 x2, x1]`.
//! q even: the pseudo polarity `(x1,x2,x3) -> [x1, x3, x2]`, whose absolute
//! points form the line `X1 = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::graphs::Graph;
use crate::pg::{Line, Plane, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarityKind {
    Orthogonal,
    Pseudo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Absolute,
    /// On two tangents of the conic (q odd).
    External,
    /// On no tangent of the conic (q odd).
    Internal,
    /// Off the absolute line (q even).
    NonAbsolute,
}

#[derive(Clone, Debug)]
pub struct Polarity {
    kind: PolarityKind,
    plane: Plane,
}

impl Polarity {
    /// Orthogonal polarity for odd q, pseudo polarity for even q.
    pub fn new(plane: Plane) -> Self {
        let kind = if plane.field().p() == 2 {
            PolarityKind::Pseudo
        } else {
            PolarityKind::Orthogonal
        };
        Polarity { kind, plane }
    }

    pub fn with_kind(plane: Plane, kind: PolarityKind) -> Result<Self> {
        match (kind, plane.field().p()) {
            (PolarityKind::Orthogonal, 2) => Err(Error::EvenCharacteristic),
            (PolarityKind::Pseudo, p) if p != 2 => Err(Error::OddCharacteristic(p)),
            _ => Ok(Polarity { kind, plane }),
        }
    }

    pub fn for_order(q: u64) -> Result<Self> {
        Ok(Polarity::new(Plane::with_order(q)?))
    }

    pub fn kind(&self) -> PolarityKind {
        self.kind
    }

    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    pub fn q(&self) -> u32 {
        self.plane.q()
    }

    pub fn polar(&self, p: &Point) -> Line {
        let f = self.plane.field();
        let [x1, x2, x3] = p.coords();
        let v = match self.kind {
            PolarityKind::Orthogonal => [x3, f.neg(f.mul(f.from_int(2), x2)), x1],
            PolarityKind::Pseudo => [x1, x3, x2],
        };
        self.plane.line_from(v).expect("polar of a point is a line")
    }

    /// Inverse of [`Polarity::polar`].
    pub fn pole(&self, l: &Line) -> Point {
        let f = self.plane.field();
        let [a, b, c] = l.coeffs();
        let v = match self.kind {
            PolarityKind::Orthogonal => {
                let half = f.inv(f.from_int(2)).expect("odd characteristic");
                [c, f.neg(f.mul(half, b)), a]
            }
            PolarityKind::Pseudo => [a, c, b],
        };
        self.plane.point_from(v).expect("pole of a line is a point")
    }

    /// `x2^2 - x1 x3` for the orthogonal polarity, `x1` for the pseudo one.
    fn form(&self, p: &Point) -> Fe {
        let f = self.plane.field();
        let [x1, x2, x3] = p.coords();
        match self.kind {
            PolarityKind::Orthogonal => f.sub(f.square(x2), f.mul(x1, x3)),
            PolarityKind::Pseudo => x1,
        }
    }

    #[inline]
    pub fn is_absolute(&self, p: &Point) -> bool {
        self.form(p).is_zero()
    }

    pub fn classify(&self, p: &Point) -> PointClass {
        let v = self.form(p);
        match self.kind {
            _ if v.is_zero() => PointClass::Absolute,
            PolarityKind::Pseudo => PointClass::NonAbsolute,
            PolarityKind::Orthogonal if self.plane.field().is_square(v) => PointClass::External,
            PolarityKind::Orthogonal => PointClass::Internal,
        }
    }

    /// Point classes indexed by canonical point index.
    pub fn classes(&self) -> Vec<PointClass> {
        self.plane.points().map(|p| self.classify(&p)).collect()
    }

    /// True iff `r` lies on the polar line of `p`.
    pub fn conjugate(&self, p: &Point, r: &Point) -> bool {
        self.plane.incident(r, &self.polar(p))
    }

    /// `ER_q`: vertices are point indices, `u ~ v` iff `u != v` are conjugate.
    pub fn er_graph(&self) -> Graph {
        let mut g = Graph::new(self.plane.num_points());
        for p in self.plane.points() {
            let u = p.index();
            for r in self.plane.points_on_line(&self.polar(&p)) {
                let v = r.index();
                if v > u {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

/// `ER_q` with the polarity picked by the parity of q.
pub fn build_er_graph(q: u64) -> Result<(Polarity, Graph)> {
    let pol = Polarity::for_order(q)?;
    let g = pol.er_graph();
    Ok((pol, g))
}
