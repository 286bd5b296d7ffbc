//! Dense bitset graphs and the predicates used to certify constructions.

mod bitset;
pub mod format;
pub mod solver;

use std::collections::VecDeque;

pub use bitset::BitSet;
pub use format::{export, from_dimacs, from_graph6, to_dimacs, to_edgelist_csv, to_graph6, ExportFormat};
pub use solver::{
    exhaustive_independence_number, max_independent_set_exact, max_independent_set_seeded, MisResult,
    SolveBudget, SolveStatus,
};

use crate::error::{Error, Result};

/// Simple undirected graph with one adjacency bitset per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    labels: Option<Vec<u32>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Original vertex ids (point indices) when the graph was cut out of a larger one.
    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels.as_ref().map_or(v, |l| l[v] as usize)
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bitset::ones(self.row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn num_edges(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && self.neighbors(u).all(|v| self.has_edge(v, u)))
    }

    fn check_range(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&v| v >= self.n) {
            Some(&v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    fn mask(&self, set: &[usize]) -> Vec<u64> {
        let mut m = vec![0u64; self.words];
        for &v in set {
            m[v / 64] |= 1 << (v % 64);
        }
        m
    }

    /// `None` if `set` is independent, otherwise one edge inside it.
    pub fn independence_witness(&self, set: &[usize]) -> Result<Option<(usize, usize)>> {
        self.check_range(set)?;
        let mask = self.mask(set);
        for &u in set {
            let hit = self.row(u).iter().zip(&mask).position(|(a, b)| a & b != 0);
            if let Some(w) = hit {
                let bits = self.row(u)[w] & mask[w];
                let v = w * 64 + bits.trailing_zeros() as usize;
                return Ok(Some((u.min(v), u.max(v))));
            }
        }
        Ok(None)
    }

    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        Ok(self.independence_witness(set)?.is_none())
    }

    /// Triangles `u < v < w`, in lexicographic order.
    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u).filter(move |&v| v > u).flat_map(move |v| {
                let (ru, rv) = (self.row(u), self.row(v));
                let start = v + 1;
                (start / 64..self.words).flat_map(move |w| {
                    let mut bits = ru[w] & rv[w];
                    if w == start / 64 {
                        bits &= u64::MAX.checked_shl((start % 64) as u32).unwrap_or(0);
                    }
                    bitset::word_ones(w, bits).map(move |x| [u, v, x])
                })
            })
        })
    }

    /// Exact triangle count via row intersections.
    pub fn triangle_count(&self) -> u64 {
        let mut total = 0u64;
        for u in 0..self.n {
            let ru = self.row(u);
            for v in self.neighbors(u).filter(|&v| v > u) {
                let rv = self.row(v);
                let start = v + 1;
                for w in start / 64..self.words {
                    let mut bits = ru[w] & rv[w];
                    if w == start / 64 {
                        bits &= u64::MAX.checked_shl((start % 64) as u32).unwrap_or(0);
                    }
                    total += bits.count_ones() as u64;
                }
            }
        }
        total
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let adj: Vec<Vec<usize>> = (0..self.n).map(|u| self.neighbors(u).collect()).collect();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut touched = Vec::new();
        for root in 0..self.n {
            for &t in &touched {
                dist[t] = usize::MAX;
            }
            touched.clear();
            dist[root] = 0;
            parent[root] = usize::MAX;
            touched.push(root);
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(x) = queue.pop_front() {
                // cycles found from here on have length >= 2*dist(x)
                if 2 * dist[x] >= best {
                    break;
                }
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        touched.push(y);
                        queue.push_back(y);
                    } else if parent[x] != y {
                        best = best.min(dist[x] + dist[y] + 1);
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best == 3 {
                break;
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Subgraph induced on `set`; vertex `i` of the result is `set[i]`, and
    /// labels are carried over.
    pub fn induced(&self, set: &[usize]) -> Result<Graph> {
        self.check_range(set)?;
        let mut g = Graph::new(set.len());
        for (i, &u) in set.iter().enumerate() {
            for (j, &v) in set.iter().enumerate().skip(i + 1) {
                if u != v && self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = Some(set.iter().map(|&v| self.label(v) as u32).collect());
        Ok(g)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|u| self.degree(u) == k)
    }

    /// Adds, in increasing index order, every candidate with no neighbour in
    /// the growing set.
    pub fn greedy_extend(&self, set: &[usize], candidates: &[usize]) -> Result<Vec<usize>> {
        self.check_range(candidates)?;
        if let Some((u, v)) = self.independence_witness(set)? {
            return Err(Error::NotIndependentInput(u, v));
        }
        let mut mask = self.mask(set);
        let mut out = set.to_vec();
        let mut cands = candidates.to_vec();
        cands.sort_unstable();
        cands.dedup();
        for v in cands {
            let inside = mask[v / 64] >> (v % 64) & 1 == 1;
            let blocked = self.row(v).iter().zip(&mask).any(|(a, b)| a & b != 0);
            if !inside && !blocked {
                mask[v / 64] |= 1 << (v % 64);
                out.push(v);
            }
        }
        Ok(out)
    }
}
