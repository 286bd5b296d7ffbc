//! Exact maximum independent set by branch and bound over bitset candidate sets.
//!
//! Each node first takes every candidate with at most one neighbour among the
//! candidates (always safe), then bounds with a greedy clique cover of the
//! remaining candidates and branches on a candidate of maximum degree
//! (least index on ties): include it, then exclude it.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::{BitSet, Graph};
use crate::error::{Error, Result};

/// Default node cap, overridable through `ERPG_BUDGET_NODES` in the CLI.
pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_nodes: u64,
    pub time_cap: Option<Duration>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_nodes: DEFAULT_MAX_NODES,
            time_cap: None,
        }
    }
}

impl SolveBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SolveBudget {
            max_nodes: max_nodes.max(1),
            time_cap: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisResult {
    pub size: usize,
    /// Sorted vertex ids of the best set found.
    pub set: Vec<usize>,
    pub status: SolveStatus,
    pub nodes: u64,
}

struct Search<'g> {
    g: &'g Graph,
    budget: SolveBudget,
    start: Instant,
    nodes: u64,
    exhausted: bool,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        self.nodes += 1;
        let timed_out = self.nodes.is_multiple_of(1024)
            && self.budget.time_cap.is_some_and(|cap| self.start.elapsed() >= cap);
        if self.nodes > self.budget.max_nodes || timed_out {
            self.exhausted = true;
        }
        self.exhausted
    }

    /// Number of cliques in a greedy clique cover of `cand`; bounds the
    /// independence number of the induced subgraph.
    fn clique_cover(&self, cand: &BitSet) -> usize {
        let mut rest = cand.clone();
        let mut cliques = 0;
        while let Some(v) = rest.first() {
            rest.remove(v);
            let mut common = rest.clone();
            common.intersect_with(self.g.row(v));
            while let Some(w) = common.first() {
                rest.remove(w);
                common.remove(w);
                common.intersect_with(self.g.row(w));
            }
            cliques += 1;
        }
        cliques
    }

    fn expand(&mut self, mut cand: BitSet) {
        if self.out_of_budget() {
            return;
        }
        let mark = self.current.len();

        // vertices of candidate-degree <= 1 belong to some maximum set
        loop {
            let low = cand
                .iter()
                .find(|&v| cand.intersection_len(self.g.row(v)) <= 1);
            let Some(v) = low else { break };
            self.current.push(v);
            cand.remove(v);
            cand.difference_with(self.g.row(v));
        }

        if cand.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            self.current.truncate(mark);
            return;
        }

        let here = self.current.len();
        if here + cand.len() <= self.best.len() || here + self.clique_cover(&cand) <= self.best.len() {
            self.current.truncate(mark);
            return;
        }

        let mut pivot = (0, usize::MAX);
        for v in cand.iter() {
            let d = cand.intersection_len(self.g.row(v));
            if d > pivot.0 || pivot.1 == usize::MAX {
                pivot = (d, v);
            }
        }
        let v = pivot.1;

        let mut with_v = cand.clone();
        with_v.remove(v);
        with_v.difference_with(self.g.row(v));
        self.current.push(v);
        self.expand(with_v);
        self.current.pop();

        cand.remove(v);
        self.expand(cand);

        self.current.truncate(mark);
    }
}

pub fn max_independent_set_exact(g: &Graph, budget: SolveBudget) -> MisResult {
    max_independent_set_seeded(g, budget, &[]).expect("empty seed is independent")
}

/// As [`max_independent_set_exact`], starting from a known independent set
/// as the incumbent.
pub fn max_independent_set_seeded(g: &Graph, budget: SolveBudget, seed: &[usize]) -> Result<MisResult> {
    if let Some((u, v)) = g.independence_witness(seed)? {
        return Err(Error::NotIndependentInput(u, v));
    }
    let mut search = Search {
        g,
        budget,
        start: Instant::now(),
        nodes: 0,
        exhausted: false,
        current: Vec::new(),
        best: seed.to_vec(),
    };
    search.expand(BitSet::full(g.n()));
    let mut set = search.best;
    set.sort_unstable();
    set.dedup();
    Ok(MisResult {
        size: set.len(),
        set,
        status: if search.exhausted {
            SolveStatus::BudgetExhausted
        } else {
            SolveStatus::Optimal
        },
        nodes: search.nodes,
    })
}

/// Independence number by scanning all `2^n` subsets; `n <= 26`.
pub fn exhaustive_independence_number(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 26, "exhaustive scan limited to 26 vertices");
    let nbr: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).fold(0u32, |m, v| m | 1 << v))
        .collect();
    // independent[mask] via the lowest vertex of the mask
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    let mut best = 0;
    for mask in 1u32..(1u32 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = independent[rest as usize] && nbr[low] & rest == 0;
        independent[mask as usize] = ok;
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}
