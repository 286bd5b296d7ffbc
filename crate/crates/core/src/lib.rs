//! Erdős–Rényi polarity graphs `ER_q` over PG(2,q) and explicit large
//! cocliques, arcs and triangle-free subgraphs inside them, each shipped with
//! a machine-checked certificate.
//!
//! Layout:
//! - [`gf`]: GF(p^n) arithmetic, squares, norms, traces, subfields.
//! - [`pg`]: points, lines, collineations and orbits of PG(2,q).
//! - [`polarity`]: orthogonal/pseudo polarities and the graph `ER_q`.
//! - [`graphs`]: bitset graphs, verification predicates, exact independence
//!   number, graph6/DIMACS/CSV.
//! - [`hypergraph`]: the 3-graph of triangles of `ER_q`.
//! - [`constructions`]: the coclique and triangle-free constructions.
//! - [`cli`]: the `erpg` command line.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod gf;
pub mod graphs;
pub mod hypergraph;
pub mod pg;
pub mod polarity;

pub use error::{Error, Result};
