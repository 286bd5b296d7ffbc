//! The 3-graph `H_q` whose edges are the triangles of `ER_q`.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::polarity::Polarity;

#[derive(Clone, Debug)]
pub struct TriangleHypergraph {
    /// Non-absolute point indices, ascending.
    vertices: Vec<usize>,
    is_vertex: Vec<bool>,
    /// Sorted triples, sorted lexicographically.
    edges: Vec<[usize; 3]>,
}

/// Enumerates the triangles of `er` (the graph of `pol`).
///
/// Panics if a triangle passes through an absolute point: two neighbours of an
/// absolute point P lie on P's polar line, and their own polars meet that line
/// only in P.
pub fn build_hypergraph(pol: &Polarity, er: &Graph) -> TriangleHypergraph {
    let pl = pol.plane();
    let is_vertex: Vec<bool> = pl.points().map(|p| !pol.is_absolute(&p)).collect();
    let edges: Vec<[usize; 3]> = er.triangles().collect();
    for t in &edges {
        assert!(
            t.iter().all(|&v| is_vertex[v]),
            "triangle {t:?} of ER_{} contains an absolute point",
            pol.q()
        );
    }
    let vertices = (0..is_vertex.len()).filter(|&v| is_vertex[v]).collect();
    TriangleHypergraph {
        vertices,
        is_vertex,
        edges,
    }
}

impl TriangleHypergraph {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn is_vertex(&self, v: usize) -> bool {
        self.is_vertex.get(v).copied().unwrap_or(false)
    }

    /// `None` if no edge lies inside `set`, otherwise the first such edge.
    pub fn independence_witness(&self, set: &[usize]) -> Result<Option<[usize; 3]>> {
        let mut inside = vec![false; self.is_vertex.len()];
        for &v in set {
            if !self.is_vertex(v) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.is_vertex.len(),
                });
            }
            inside[v] = true;
        }
        Ok(self.edges.iter().find(|e| e.iter().all(|&v| inside[v])).copied())
    }

    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        Ok(self.independence_witness(set)?.is_none())
    }

    /// One `u,v,w` line per edge, sorted.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for [u, v, w] in &self.edges {
            writeln!(s, "{u},{v},{w}").expect("write to String");
        }
        s
    }

    /// Number of edges contained in `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        self.edges
            .iter()
            .filter(|e| e.iter().all(|v| set.contains(v)))
            .count()
    }

    /// Samples 8-vertex sets and returns the first one spanning 4 or more
    /// edges. Half the samples are uniform; the other half are grown from a
    /// random edge by repeatedly adding random edges that touch the current
    /// set, which is where dense configurations would show up.
    pub fn find_dense_octet(&self, samples: usize, seed: u64) -> Option<Vec<usize>> {
        if self.vertices.len() < 8 {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.is_vertex.len()];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                incident[v].push(i);
            }
        }
        for s in 0..samples {
            let mut set: Vec<usize> = Vec::with_capacity(8);
            if s % 2 == 1 && !self.edges.is_empty() {
                let first = self.edges[rng.gen_range(0..self.edges.len())];
                set.extend(first);
                for _ in 0..16 {
                    if set.len() >= 8 {
                        break;
                    }
                    let v = set[rng.gen_range(0..set.len())];
                    let Some(&e) = incident[v].choose(&mut rng) else { continue };
                    let fresh: Vec<usize> =
                        self.edges[e].iter().copied().filter(|x| !set.contains(x)).collect();
                    if set.len() + fresh.len() <= 8 {
                        set.extend(fresh);
                    }
                }
            }
            while set.len() < 8 {
                let v = self.vertices[rng.gen_range(0..self.vertices.len())];
                if !set.contains(&v) {
                    set.push(v);
                }
            }
            let mut touched: Vec<usize> = set.iter().flat_map(|&v| incident[v].iter().copied()).collect();
            touched.sort_unstable();
            touched.dedup();
            let spanned = touched
                .iter()
                .filter(|&&e| self.edges[e].iter().all(|v| set.contains(v)))
                .count();
            if spanned >= 4 {
                set.sort_unstable();
                return Some(set);
            }
        }
        None
    }
}

/// Lower bound from the triangle-free construction next to the leading terms
/// `q^2/2 + q^{3/2}` of the known upper bound on the independence number of `H_q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MwBoundReport {
    pub q: u32,
    pub lower: u64,
    pub upper_leading: f64,
}

pub fn mw_bound_report(q: u32) -> Result<MwBoundReport> {
    if !q.is_multiple_of(2) {
        return Err(Error::NotEven(q));
    }
    let qf = q as f64;
    let report = MwBoundReport {
        q,
        lower: q as u64 * (q as u64 + 1) / 2,
        upper_leading: qf * qf / 2.0 + qf.powf(1.5),
    };
    // sanity only: the upper bound carries an O(q) term
    assert!(report.lower as f64 <= report.upper_leading + 2.0 * qf);
    Ok(report)
}
