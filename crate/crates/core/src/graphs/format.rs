//! graph6, DIMACS and CSV edge-list interchange.
//!
//! graph6 follows the header-less encoding: `N(n)` then the upper triangle
//! read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), zero padded to a
//! multiple of six bits, every six bits offset by 63.

use std::fmt::Write as _;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Graph6,
    Dimacs,
    EdgelistCsv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(ExportFormat::Graph6),
            "dimacs" => Ok(ExportFormat::Dimacs),
            "csv" | "edgelist_csv" => Ok(ExportFormat::EdgelistCsv),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// File contents for `format`; graph6 gets a trailing newline.
pub fn export(g: &Graph, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Graph6 => {
            let mut s = to_graph6(g);
            s.push('\n');
            s.into_bytes()
        }
        ExportFormat::Dimacs => to_dimacs(g).into_bytes(),
        ExportFormat::EdgelistCsv => to_edgelist_csv(g).into_bytes(),
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    let n = n as u64;
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n <= 68_719_476_735, "graph6 order limit");
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let bad = |msg: &str| Error::Parse(format!("graph6: {msg}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let take = |from: usize, len: usize| -> Result<u64> {
        let chunk = bytes.get(from..from + len).ok_or_else(|| bad("truncated size"))?;
        Ok(chunk.iter().fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64))
    };
    let (n, body) = match bytes {
        [] => return Err(bad("empty")),
        [126, 126, ..] => (take(2, 6)?, 8),
        [126, ..] => (take(1, 3)?, 4),
        [b, ..] => ((b - 63) as u64, 1),
    };
    let n = n as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let data = &bytes[body..];
    if data.len() != bits.div_ceil(6) {
        return Err(bad("wrong body length"));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// `p edge n m`, then `e u v` (1-based, `u < v`, sorted).
pub fn to_dimacs(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(s, "e {} {}", u + 1, v + 1).expect("write to String");
    }
    s
}

pub fn from_dimacs(s: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut declared = 0;
    for line in s.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|e| Error::Parse(format!("dimacs: {e}")));
        match parts.as_slice() {
            [] | ["c", ..] => {}
            ["p", "edge", n, m] => {
                g = Some(Graph::new(num(n)?));
                declared = num(m)?;
            }
            ["e", u, v] => {
                let g = g.as_mut().ok_or_else(|| Error::Parse("dimacs: edge before header".into()))?;
                let (u, v) = (num(u)?, num(v)?);
                if u == 0 || v == 0 || u > g.n() || v > g.n() || u == v {
                    return Err(Error::Parse(format!("dimacs: bad edge {u} {v}")));
                }
                g.add_edge(u - 1, v - 1);
            }
            _ => return Err(Error::Parse(format!("dimacs: unexpected line `{line}`"))),
        }
    }
    let g = g.ok_or_else(|| Error::Parse("dimacs: missing header".into()))?;
    if g.num_edges() != declared {
        return Err(Error::Parse("dimacs: edge count mismatch".into()));
    }
    Ok(g)
}

/// One `u,v` line per edge, 0-based, sorted.
pub fn to_edgelist_csv(g: &Graph) -> String {
    let mut s = String::new();
    for (u, v) in g.edges() {
        writeln!(s, "{u},{v}").expect("write to String");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::tests::random_graph;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn graph6_known_strings() {
        let k3 = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(to_graph6(&k3), "Bw");
        assert_eq!(to_graph6(&Graph::new(1)), "@");
        assert_eq!(to_graph6(&Graph::new(0)), "?");
        // 5 vertices, edges 0-2 0-4 1-3 3-4
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(export(&k3, ExportFormat::Graph6), b"Bw\n");
    }

    #[test]
    fn graph6_large_order_header() {
        let g = Graph::new(100);
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 36]);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("B").is_err());
        assert!(from_graph6("Bw~~").is_err());
        assert!(from_graph6("B\x01").is_err());
    }

    #[test]
    fn dimacs_and_csv() {
        let g = Graph::from_edges(4, [(2, 3), (0, 1), (1, 3)]).unwrap();
        assert_eq!(to_dimacs(&g), "p edge 4 3\ne 1 2\ne 2 4\ne 3 4\n");
        assert_eq!(to_edgelist_csv(&g), "0,1\n1,3\n2,3\n");
        assert_eq!(from_dimacs(&to_dimacs(&g)).unwrap(), g);
        assert!(from_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(from_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert_eq!(
            "gexf".parse::<ExportFormat>(),
            Err(Error::UnsupportedFormat("gexf".into()))
        );
        assert_eq!("csv".parse::<ExportFormat>(), Ok(ExportFormat::EdgelistCsv));
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..80, p in 0.0f64..1.0, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(n, p, &mut rng);
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(from_dimacs(&to_dimacs(&g)).unwrap(), g);
        }
    }
}
