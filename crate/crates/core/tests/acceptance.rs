//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary is always printed.
//! Extended checks (exact solves at q = 7 and q = 9) run with `--ignored`,
//! `--include-ignored` or `ERPG_EXTENDED=1`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use erpg::constructions::{
    coclique_even, coclique_odd_sq_neg, coclique_odd_sq_pos, lemma_conics_check, lemma_square_counterexamples,
    lemma_tec_counterexamples, orbit_census_odd_square, triangle_free_set, CensusEntry, OrbitClass,
};
use erpg::gf::{Fe, FieldCtx};
use erpg::graphs::{
    exhaustive_independence_number, from_dimacs, from_graph6, max_independent_set_exact, to_dimacs, to_graph6, Graph,
    SolveBudget, SolveStatus,
};
use erpg::hypergraph::build_hypergraph;
use erpg::polarity::{build_er_graph, Polarity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Id, title, time limit, body.
type Criterion = (&'static str, &'static str, Option<Duration>, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: &str, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(lim)) if elapsed > lim => Err(format!("took {:.2?}, limit {:?}", elapsed, lim)),
        (o, _) => o,
    };
    let ok = outcome.is_ok();
    let detail = outcome.unwrap_or_else(|e| e);
    println!(
        "{id} {} {title}: {detail} ({:.2} s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn pol(q: u64) -> Polarity {
    Polarity::for_order(q).expect("prime power")
}

fn c1() -> Check {
    let mut sizes = Vec::new();
    for (q, want) in [(9u64, 22usize), (49, 218), (121, 782)] {
        let (p, g) = build_er_graph(q).map_err(|e| e.to_string())?;
        let mut cert = coclique_odd_sq_neg(&p).map_err(|e| e.to_string())?;
        let in_graph = cert.verify_in_graph(&g).map_err(|e| e.to_string())?;
        ensure(cert.size() == want, || format!("q={q}: size {} != {want}", cert.size()))?;
        ensure(in_graph && cert.all_verified(), || format!("q={q}: {:?}", cert.verified))?;
        sizes.push(cert.size());
    }
    Ok(format!("sizes {sizes:?}"))
}

fn c2() -> Check {
    let mut sizes = Vec::new();
    for (q, want) in [(25u64, 101usize), (81, 487)] {
        let (p, g) = build_er_graph(q).map_err(|e| e.to_string())?;
        let mut cert = coclique_odd_sq_pos(&p).map_err(|e| e.to_string())?;
        let in_graph = cert.verify_in_graph(&g).map_err(|e| e.to_string())?;
        ensure(cert.size() == want, || format!("q={q}: size {} != {want}", cert.size()))?;
        ensure(in_graph && cert.all_verified(), || format!("q={q}: {:?}", cert.verified))?;
        sizes.push(cert.size());
    }
    Ok(format!("sizes {sizes:?}"))
}

fn c3() -> Check {
    let mut rows = Vec::new();
    for (q, degree, want) in [(8u64, 2u64, 10usize), (32, 4, 100), (128, 8, 904)] {
        let (p, g) = build_er_graph(q).map_err(|e| e.to_string())?;
        let (mut cert, _) = coclique_even(&p).map_err(|e| e.to_string())?;
        let in_graph = cert.verify_in_graph(&g).map_err(|e| e.to_string())?;
        let got_degree = cert.parameters["degree"].as_u64();
        ensure(got_degree == Some(degree), || format!("q={q}: degree {got_degree:?}"))?;
        ensure(cert.size() == want, || format!("q={q}: size {} != {want}", cert.size()))?;
        // maximal_arc is the exhaustive line scan
        ensure(in_graph && cert.all_verified(), || format!("q={q}: {:?}", cert.verified))?;
        rows.push((degree, cert.size()));
    }
    Ok(format!("(degree, size) {rows:?}"))
}

fn c4() -> Check {
    let mut counts = Vec::new();
    for (q, want) in [(8u64, 18usize), (32, 132)] {
        let (cert, ext) = coclique_even(&pol(q)).map_err(|e| e.to_string())?;
        ensure(ext.candidates == want, || format!("q={q}: {} candidates, want {want}", ext.candidates))?;
        // every candidate's polar line misses the arc, re-checked directly
        let p = pol(q);
        let member: std::collections::HashSet<usize> = cert.indices().into_iter().collect();
        for c in &ext.candidate_points {
            let hits = p
                .plane()
                .points_on_line(&p.polar(c))
                .iter()
                .filter(|x| member.contains(&x.index()))
                .count();
            ensure(hits == 0, || format!("q={q}: candidate {} meets the arc", c.index()))?;
        }
        counts.push(ext.candidates);
    }
    Ok(format!("candidates {counts:?}"))
}

fn c5() -> Check {
    let e = |class, size, multiplicity| CensusEntry {
        class,
        size,
        multiplicity,
    };
    use OrbitClass::*;
    let cases = [
        (9u64, vec![e(Conic, 6, 1), e(ExternalTangent, 24, 1), e(External, 12, 1), e(Internal, 12, 3)]),
        (25, vec![e(Conic, 20, 1), e(ExternalTangent, 120, 1), e(External, 60, 3), e(Internal, 60, 5)]),
    ];
    for (q, want) in cases {
        let census = orbit_census_odd_square(&pol(q)).map_err(|e| e.to_string())?;
        ensure(census.entries == want, || format!("q={q}: {:?}", census.entries))?;
    }
    Ok("q=9 and q=25 censuses exact".into())
}

fn c6() -> Check {
    let mut rows = Vec::new();
    for q in [4u64, 8, 16, 32, 64] {
        let (p, g) = build_er_graph(q).map_err(|e| e.to_string())?;
        let s = triangle_free_set(&p, None).map_err(|e| e.to_string())?;
        let r = s.verify(&p, &g).map_err(|e| e.to_string())?;
        let want = (q * (q + 1) / 2) as usize;
        ensure(r.size == want, || format!("q={q}: size {}", r.size))?;
        ensure(r.triangles == 0, || format!("q={q}: {} triangles", r.triangles))?;
        ensure(r.regular_degree == Some(q as usize / 2), || format!("q={q}: degree {:?}", r.regular_degree))?;
        ensure(r.girth.is_none_or(|x| x >= 5), || format!("q={q}: girth {:?}", r.girth))?;
        ensure(r.no_absolute, || format!("q={q}: absolute vertex"))?;
        rows.push((q, r.size, r.girth));
    }
    Ok(format!("(q, size, girth) {rows:?}"))
}

fn c7() -> Check {
    let mut counts = Vec::new();
    for (q, want) in [(3u64, 4usize), (4, 10), (5, 20), (7, 56), (8, 84)] {
        let (p, g) = build_er_graph(q).map_err(|e| e.to_string())?;
        let h = build_hypergraph(&p, &g);
        ensure(h.edges().len() == want, || format!("q={q}: {} edges", h.edges().len()))?;
        ensure(want as u64 == q * (q * q - 1) / 6, || "formula".into())?;
        counts.push(want);
    }
    Ok(format!("edges {counts:?}"))
}

fn c8() -> Check {
    for q in [9u64, 25, 49, 81] {
        let f = FieldCtx::with_order(q).map_err(|e| e.to_string())?;
        let bad = lemma_square_counterexamples(&f).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("square lemma fails at q={q}: {bad:?}"))?;
    }
    for q in [25u64, 81] {
        let f = FieldCtx::with_order(q).map_err(|e| e.to_string())?;
        let bad = lemma_tec_counterexamples(&f).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("unit-norm lemma fails at q={q}: {bad:?}"))?;
    }
    let mut checked = 0;
    for q in [8u64, 32] {
        let p = pol(q);
        let f = p.plane().field();
        let alpha = f.find_trace_one().map_err(|e| e.to_string())?;
        for l in f.elements() {
            let holds = lemma_conics_check(&p, alpha, l).map_err(|e| e.to_string())?;
            let tr = f.abs_trace(l).map_err(|e| e.to_string())?;
            ensure(holds == (tr == 0), || format!("conics dichotomy fails at q={q}, lambda={l}"))?;
            checked += 1;
        }
    }
    Ok(format!("zero counterexamples; {checked} conic cases"))
}

/// Plain recursive maximum independent set without bounding; an oracle that
/// shares no code with the branch-and-bound solver.
fn naive_alpha(g: &Graph) -> usize {
    fn go(adj: &[u64], cand: u64) -> usize {
        if cand == 0 {
            return 0;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        let with = 1 + go(adj, rest & !adj[v]);
        // skipping v only helps if a neighbour of v is still available
        if rest & adj[v] == 0 {
            return with;
        }
        with.max(go(adj, rest))
    }
    assert!(g.n() <= 64);
    let adj: Vec<u64> = (0..g.n()).map(|u| g.neighbors(u).fold(0u64, |m, v| m | 1 << v)).collect();
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    go(&adj, all)
}

fn c9() -> Check {
    let mut alphas = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let (_, g) = build_er_graph(q).map_err(|e| e.to_string())?;
        let r = max_independent_set_exact(&g, SolveBudget::default());
        ensure(r.status == SolveStatus::Optimal, || format!("q={q}: not optimal"))?;
        ensure(g.is_independent(&r.set).unwrap_or(false), || format!("q={q}: set not independent"))?;
        let oracle = naive_alpha(&g);
        ensure(oracle == r.size, || format!("q={q}: solver {} vs oracle {oracle}", r.size))?;
        let qf = q as f64;
        let upper = (qf.powf(1.5) + qf.sqrt() + 1.0 + 1e-9).floor() as usize;
        ensure(r.size <= upper, || format!("q={q}: {} > upper {upper}", r.size))?;
        let lower = erpg::cli::bounds(q).expect("prime power").lower() as usize;
        ensure(r.size >= lower, || format!("q={q}: {} < lower {lower}", r.size))?;
        alphas.push(r.size);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let n = rng.gen_range(1..=24);
        let p = rng.gen_range(0.05..0.8);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let r = max_independent_set_exact(&g, SolveBudget::default());
        let want = exhaustive_independence_number(&g);
        ensure(r.size == want, || format!("random graph {i}: {} vs {want}", r.size))?;
    }
    Ok(format!("alpha(ER_q), q=2..5: {alphas:?}; 200 random graphs agree"))
}

fn c10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6);
    for i in 0..100 {
        let n = rng.gen_range(0..=90);
        let p = rng.gen_range(0.0..1.0);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let back = from_graph6(&to_graph6(&g)).map_err(|e| e.to_string())?;
        ensure(back == g, || format!("graph6 round trip {i}"))?;
        let d = from_dimacs(&to_dimacs(&g)).map_err(|e| e.to_string())?;
        ensure(d.num_edges() == g.num_edges(), || format!("dimacs edge count {i}"))?;
    }
    let mut checked = Vec::new();
    for q in 2u64..=16 {
        let Ok((p, g)) = build_er_graph(q) else { continue };
        let f = p.plane().field();
        let pts: Vec<[Fe; 3]> = p.plane().points().map(|x| x.coords()).collect();
        let two = f.from_int(2);
        // x . y' with y' the polar coefficients of y
        let polar = |y: [Fe; 3]| match f.p() {
            2 => [y[0], y[2], y[1]],
            _ => [y[2], f.neg(f.mul(two, y[1])), y[0]],
        };
        let mut m = 0u64;
        for (i, x) in pts.iter().enumerate() {
            for y in &pts[i + 1..] {
                let l = polar(*y);
                let dot = f.add(f.add(f.mul(x[0], l[0]), f.mul(x[1], l[1])), f.mul(x[2], l[2]));
                m += dot.is_zero() as u64;
            }
        }
        ensure(m == q * (q + 1) * (q + 1) / 2, || format!("q={q}: enumerated {m} edges"))?;
        ensure(g.num_edges() as u64 == m, || format!("q={q}: graph has {} edges", g.num_edges()))?;
        let dimacs = to_dimacs(&g);
        let header_m: u64 = dimacs
            .lines()
            .next()
            .and_then(|h| h.split_whitespace().nth(3))
            .and_then(|t| t.parse().ok())
            .unwrap_or(0);
        ensure(header_m == m, || format!("q={q}: dimacs header {header_m}"))?;
        checked.push(q);
    }
    Ok(format!("100 graph6 round trips; ER edge counts for q in {checked:?}"))
}

fn extended(q: u64, want_at_least: usize) -> Check {
    let (_, g) = build_er_graph(q).map_err(|e| e.to_string())?;
    let r = max_independent_set_exact(&g, SolveBudget::nodes(2_000_000_000));
    ensure(r.status == SolveStatus::Optimal, || format!("q={q}: budget exhausted at {}", r.size))?;
    ensure(r.size >= want_at_least, || format!("q={q}: {}", r.size))?;
    let upper = erpg::cli::bounds(q).expect("prime power").upper as usize;
    ensure(r.size <= upper, || format!("q={q}: {} > {upper}", r.size))?;
    Ok(format!("alpha(ER_{q}) = {} in {} nodes", r.size, r.nodes))
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let filter = args.iter().skip(1).find(|a| !a.starts_with('-'));
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    if filter.is_some_and(|f| !"acceptance".contains(f.as_str()) && !f.starts_with('C')) {
        return ExitCode::SUCCESS;
    }
    let extended_on = std::env::var_os("ERPG_EXTENDED").is_some()
        || args.iter().any(|a| a == "--ignored" || a == "--include-ignored");

    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 10] = [
        ("C1", "odd square, sqrt q = 3 mod 4 cocliques", secs(10), c1),
        ("C2", "odd square, sqrt q = 1 mod 4 cocliques", secs(10), c2),
        ("C3", "even non-square maximal arcs", secs(60), c3),
        ("C4", "extension candidates", None, c4),
        ("C5", "orbit census", None, c5),
        ("C6", "triangle-free sets", secs(120), c6),
        ("C7", "hypergraph edge counts", None, c7),
        ("C8", "lemma property suites", None, c8),
        ("C9", "exact solver oracle", None, c9),
        ("C10", "format fidelity", None, c10),
    ];
    let mut all = true;
    for (id, title, limit, f) in criteria {
        all &= run(id, title, limit, f);
    }
    if extended_on {
        all &= run("X1", "extended exact solve q=7", None, || extended(7, 1));
        all &= run("X2", "extended exact solve q=9", None, || extended(9, 22));
    } else {
        println!("X1 SKIP extended exact solve q=7 (run with --ignored)");
        println!("X2 SKIP extended exact solve q=9 (run with --ignored)");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
