//! `erpg` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 verification failure,
//! 4 a proven bound is violated.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{
    claimed_size, coclique_even, coclique_even_square, coclique_odd_sq_neg, coclique_odd_sq_pos,
    exact_sqrt, orbit_census_odd_square, triangle_free_set, Certificate, ConstructionId, OrbitCensus,
};
use crate::error::Error;
use crate::gf::prime_power;
use crate::graphs::solver::DEFAULT_MAX_NODES;
use crate::graphs::{export, max_independent_set_seeded, ExportFormat, SolveBudget, SolveStatus};
use crate::polarity::Polarity;

/// Largest order for which a dense `ER_q` adjacency is built.
pub const MAX_GRAPH_ORDER: u64 = 128;

pub const BUDGET_ENV: &str = "ERPG_BUDGET_NODES";

#[derive(Parser, Debug)]
#[command(name = "erpg", version, about = "Polarity graphs of PG(2,q): cocliques, certificates and exact checks")]
struct Cli {
    /// Emit a JSON run report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and verify a coclique or triangle-free set.
    Build {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Construction::Auto)]
        construction: Construction,
        /// Write the certificate JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export ER_q.
    Graph {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact independence number of ER_q, checked against the known bounds.
    Solve {
        #[arg(long)]
        q: u64,
        /// Search-node cap; defaults to $ERPG_BUDGET_NODES or 10^8.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Orbit census of PGL(2, sqrt q) off the Baer subplane (odd square q).
    Orbits {
        #[arg(long)]
        q: u64,
    },
    /// Bounds next to constructed sizes for a fixed list of q.
    Table {
        #[arg(long, default_value = "default")]
        set: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    Auto,
    OddNeg,
    OddPos,
    EvenArc,
    TriangleFree,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    parameters: Value,
    result: Value,
    outputs: Vec<String>,
}

enum Failure {
    Input(String),
    Verification(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Outcome {
    report: RunReport,
    human: String,
    failure: Option<Failure>,
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Build { q, construction, out } => cmd_build(q, construction, out),
        Command::Graph { q, format, out } => cmd_graph(q, &format, out),
        Command::Solve { q, budget } => cmd_solve(q, budget),
        Command::Orbits { q } => cmd_orbits(q),
        Command::Table { set } => cmd_table(&set),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(f) => {
            let (code, msg) = failure_parts(&f);
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&outcome.report).expect("report serializes") + "\n"
    } else {
        outcome.human
    };
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    match outcome.failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            let (code, msg) = failure_parts(&f);
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn failure_parts(f: &Failure) -> (u8, &str) {
    match f {
        Failure::Input(m) => (2, m),
        Failure::Verification(m) => (3, m),
        Failure::Bound(m) => (4, m),
    }
}

fn polarity(q: u64) -> Result<Polarity, Failure> {
    if prime_power(q).is_none() {
        return Err(Failure::Input(format!("q = {q} is not a prime power")));
    }
    Ok(Polarity::for_order(q)?)
}

fn require_graph_order(q: u64) -> Result<(), Failure> {
    if q > MAX_GRAPH_ORDER {
        return Err(Failure::Input(format!(
            "dense ER_q adjacency is limited to q <= {MAX_GRAPH_ORDER}"
        )));
    }
    Ok(())
}

fn resolve(q: u64, c: Construction) -> Result<ConstructionId, Failure> {
    let (p, n) = prime_power(q).ok_or_else(|| Failure::Input(format!("q = {q} is not a prime power")))?;
    let id = match (c, p == 2) {
        (Construction::OddNeg, _) => ConstructionId::OddSqNeg,
        (Construction::OddPos, _) => ConstructionId::OddSqPos,
        (Construction::TriangleFree, _) => ConstructionId::TriangleFree,
        (Construction::EvenArc | Construction::Auto, true) if n % 2 == 0 => ConstructionId::EvenSqSubfieldArc,
        (Construction::EvenArc | Construction::Auto, true) => ConstructionId::EvenArc,
        (Construction::EvenArc, false) => return Err(Error::NotEven(q as u32).into()),
        (Construction::Auto, false) => match exact_sqrt(q) {
            Some(r) if r % 4 == 3 => ConstructionId::OddSqNeg,
            Some(_) => ConstructionId::OddSqPos,
            None => {
                return Err(Failure::Input(format!(
                    "no construction is available for odd non-square q = {q}"
                )))
            }
        },
    };
    Ok(id)
}

fn build_certificate(pol: &Polarity, id: ConstructionId) -> Result<(Certificate, Option<Value>), Failure> {
    Ok(match id {
        ConstructionId::OddSqNeg => (coclique_odd_sq_neg(pol)?, None),
        ConstructionId::OddSqPos => (coclique_odd_sq_pos(pol)?, None),
        ConstructionId::EvenSqSubfieldArc => (coclique_even_square(pol)?, None),
        ConstructionId::EvenArc => {
            let (cert, ext) = coclique_even(pol)?;
            (cert, Some(serde_json::to_value(&ext).expect("serializable")))
        }
        ConstructionId::TriangleFree => {
            require_graph_order(pol.q() as u64)?;
            let set = triangle_free_set(pol, None)?;
            let er = pol.er_graph();
            (set.certificate(pol, &er)?, None)
        }
    })
}

fn cmd_build(q: u64, construction: Construction, out: Option<PathBuf>) -> Result<Outcome, Failure> {
    let id = resolve(q, construction)?;
    let pol = polarity(q)?;
    let (mut cert, extension) = build_certificate(&pol, id)?;
    if id != ConstructionId::TriangleFree && q <= MAX_GRAPH_ORDER {
        cert.verify_in_graph(&pol.er_graph())?;
    }
    let doc = cert.to_json(pol.plane().field());
    let mut outputs = Vec::new();
    if let Some(path) = &out {
        let text = serde_json::to_string_pretty(&doc).expect("certificate serializes") + "\n";
        std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        outputs.push(path.display().to_string());
    }
    let mut result = json!({
        "construction": id.as_str(),
        "size": cert.size(),
        "claimed_size": cert.claimed_size,
        "verified": cert.verified,
    });
    if let Some(ext) = &extension {
        result["extension"] = ext.clone();
    }
    if out.is_none() {
        result["certificate"] = doc;
    }

    let mut human = String::new();
    writeln!(human, "construction  {}", id.as_str()).unwrap();
    writeln!(human, "q             {q}").unwrap();
    writeln!(human, "size          {}", cert.size()).unwrap();
    writeln!(human, "claimed size  {}", cert.claimed_size).unwrap();
    for (k, v) in &cert.verified {
        writeln!(human, "  {k:<24} {}", if *v { "ok" } else { "FAILED" }).unwrap();
    }
    if let Some(ext) = &extension {
        writeln!(human, "extension candidates  {}", ext["candidates"]).unwrap();
        writeln!(human, "greedy extended size  {}", ext["greedy_size"]).unwrap();
    }
    for o in &outputs {
        writeln!(human, "wrote {o}").unwrap();
    }

    let failure = (!cert.all_verified()).then(|| {
        Failure::Verification(format!("certificate for {} failed verification", id.as_str()))
    });
    Ok(Outcome {
        report: RunReport {
            command: "build",
            parameters: json!({ "q": q, "construction": id.as_str() }),
            result,
            outputs,
        },
        human,
        failure,
    })
}

fn cmd_graph(q: u64, format: &str, out: PathBuf) -> Result<Outcome, Failure> {
    let fmt: ExportFormat = format.parse()?;
    let pol = polarity(q)?;
    require_graph_order(q)?;
    let g = pol.er_graph();
    std::fs::write(&out, export(&g, fmt)).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    let (n, m) = (g.n(), g.num_edges());
    let expected = q * (q + 1) * (q + 1) / 2;
    let failure = (m as u64 != expected)
        .then(|| Failure::Verification(format!("ER_{q} has {m} edges, expected {expected}")));
    Ok(Outcome {
        report: RunReport {
            command: "graph",
            parameters: json!({ "q": q, "format": format }),
            result: json!({ "n": n, "m": m }),
            outputs: vec![out.display().to_string()],
        },
        human: format!("n {n}\nm {m}\nwrote {}\n", out.display()),
        failure,
    })
}

/// Lower and upper bounds on the independence number of `ER_q` that apply to `q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSet {
    pub class: &'static str,
    /// Best previously known lower bound, rounded up.
    pub prior_lower: u64,
    /// Size promised by a construction in this crate, if one applies.
    pub construction_lower: Option<u64>,
    /// `floor(q^{3/2} + sqrt q + 1)`, tightened for even squares.
    pub upper: u64,
}

impl BoundSet {
    pub fn lower(&self) -> u64 {
        self.prior_lower.max(self.construction_lower.unwrap_or(0))
    }
}

pub fn bounds(q: u64) -> Option<BoundSet> {
    let (p, n) = prime_power(q)?;
    let qf = q as f64;
    let r = qf.sqrt();
    let q32 = qf.powf(1.5);
    let ceil = |x: f64| (x - 1e-9).ceil().max(0.0) as u64;
    let floor = |x: f64| (x + 1e-9).floor() as u64;
    let general_upper = floor(q32 + r + 1.0);
    let square = n % 2 == 0;
    let (class, prior, construction, upper) = match (p == 2, square) {
        (false, true) => {
            let id = if exact_sqrt(q)? % 4 == 3 {
                ConstructionId::OddSqNeg
            } else {
                ConstructionId::OddSqPos
            };
            ("odd_square", ceil((q32 + qf + 2.0) / 2.0), claimed_size(id, q), general_upper)
        }
        (false, false) => (
            "odd_nonsquare",
            ceil(120.0 * q32 / (73.0 * 73f64.sqrt())),
            None,
            general_upper,
        ),
        (true, true) => (
            "even_square",
            ceil(q32 - qf + r),
            claimed_size(ConstructionId::EvenSqSubfieldArc, q),
            general_upper.min(floor(q32 - qf + r + 1.0)),
        ),
        (true, false) => (
            "even_nonsquare",
            ceil(q32 / (2.0 * 2f64.sqrt())),
            claimed_size(ConstructionId::EvenArc, q),
            general_upper,
        ),
    };
    Some(BoundSet {
        class,
        prior_lower: prior,
        construction_lower: construction,
        upper,
    })
}

fn budget_from_env() -> Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{BUDGET_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_NODES),
    }
}

fn cmd_solve(q: u64, budget: Option<u64>) -> Result<Outcome, Failure> {
    let pol = polarity(q)?;
    require_graph_order(q)?;
    let nodes = match budget {
        Some(b) => b,
        None => budget_from_env()?,
    };
    let b = bounds(q).expect("prime power");
    let g = pol.er_graph();
    let seed: Vec<usize> = match resolve(q, Construction::Auto) {
        Ok(id) => match build_certificate(&pol, id) {
            Ok((cert, _)) if cert.all_verified() => cert.indices(),
            _ => Vec::new(),
        },
        Err(_) => Vec::new(),
    };
    let r = max_independent_set_seeded(&g, SolveBudget::nodes(nodes), &seed)?;
    let optimal = r.status == SolveStatus::Optimal;
    let upper_ok = r.size as u64 <= b.upper;
    let lower_ok = !optimal || r.size as u64 >= b.lower();
    let failure = if !upper_ok {
        Some(Failure::Bound(format!("independent set of size {} exceeds the upper bound {}", r.size, b.upper)))
    } else if !lower_ok {
        Some(Failure::Bound(format!("optimum {} is below the lower bound {}", r.size, b.lower())))
    } else {
        None
    };
    let status = serde_json::to_value(r.status).expect("serializable");
    let human = format!(
        "q {q}\nalpha {}\nstatus {}\nnodes {}\nseed size {}\nlower bound {}\nupper bound {}\n",
        r.size,
        status.as_str().unwrap_or_default(),
        r.nodes,
        seed.len(),
        b.lower(),
        b.upper
    );
    Ok(Outcome {
        report: RunReport {
            command: "solve",
            parameters: json!({ "q": q, "budget_nodes": nodes }),
            result: json!({
                "alpha": r.size,
                "status": status,
                "nodes": r.nodes,
                "set": r.set,
                "seed_size": seed.len(),
                "bounds": b,
                "lower_ok": lower_ok,
                "upper_ok": upper_ok,
            }),
            outputs: Vec::new(),
        },
        human,
        failure,
    })
}

fn cmd_orbits(q: u64) -> Result<Outcome, Failure> {
    let pol = polarity(q)?;
    let census = orbit_census_odd_square(&pol)?;
    let pass = census.matches_expected();
    let mut human = String::new();
    writeln!(human, "{:<18} {:>6} {:>6}", "class", "size", "count").unwrap();
    for e in &census.entries {
        let class = serde_json::to_value(e.class).expect("serializable");
        writeln!(human, "{:<18} {:>6} {:>6}", class.as_str().unwrap_or_default(), e.size, e.multiplicity).unwrap();
    }
    writeln!(human, "total {}", census.total()).unwrap();
    writeln!(human, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
    let failure = (!pass).then(|| Failure::Verification(format!("orbit census at q = {q} differs from the expected one")));
    Ok(Outcome {
        report: RunReport {
            command: "orbits",
            parameters: json!({ "q": q }),
            result: json!({
                "census": census.entries,
                "expected": OrbitCensus::expected(census.q),
                "total": census.total(),
                "pass": pass,
            }),
            outputs: Vec::new(),
        },
        human,
        failure,
    })
}

pub const DEFAULT_TABLE: [u64; 16] = [3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128];

fn cmd_table(set: &str) -> Result<Outcome, Failure> {
    if set != "default" {
        return Err(Failure::Input(format!("unknown table set `{set}`")));
    }
    let mut rows = Vec::new();
    let mut human = String::new();
    writeln!(
        human,
        "{:>5} {:<15} {:>11} {:>12} {:>11} {:>7}",
        "q", "class", "prior_lower", "construction", "constructed", "upper"
    )
    .unwrap();
    let mut failure = None;
    for q in DEFAULT_TABLE {
        let b = bounds(q).expect("prime power");
        let constructed = match resolve(q, Construction::Auto) {
            Ok(id) => {
                let pol = polarity(q)?;
                let (cert, _) = build_certificate(&pol, id)?;
                if !cert.all_verified() {
                    failure = Some(Failure::Verification(format!("construction at q = {q} failed verification")));
                }
                Some(cert.size())
            }
            Err(_) => None,
        };
        let dash = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        writeln!(
            human,
            "{:>5} {:<15} {:>11} {:>12} {:>11} {:>7}",
            q,
            b.class,
            b.prior_lower,
            dash(b.construction_lower),
            dash(constructed.map(|c| c as u64)),
            b.upper
        )
        .unwrap();
        rows.push(json!({ "q": q, "bounds": b, "constructed": constructed }));
    }
    Ok(Outcome {
        report: RunReport {
            command: "table",
            parameters: json!({ "set": set }),
            result: json!({ "rows": rows }),
            outputs: Vec::new(),
        },
        human,
        failure,
    })
}
