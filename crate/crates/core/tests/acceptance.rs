//! Acceptance suite. Runs every criterion, prints one line each and exits
//! non-zero if any fails or overruns its time budget.
//!
//! Audit reports are compared byte for byte with the files in `goldens/`.
//! Run with `KCONN_BLESS=1` to (re)write them.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kconn::oracle::{sequence_universe, DiscrepancyReport};
use kconn::realization::base_edge_count;
use kconn::{
    associated_pair, augment_chain, build_g1, build_g2, corollary_threshold, erdos_gallai_graphic,
    internally_disjoint_path_count, is_maximally_non_k_connected, vertex_connectivity,
    witness_sequence, DegreeSequence, Oracle, SimpleGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c2(m: usize) -> u64 {
    (m * m.saturating_sub(1) / 2) as u64
}

fn oracle(jobs: usize) -> Oracle {
    Oracle::new(10).expect("limit within cap").with_jobs(jobs)
}

fn witness_arithmetic() -> Outcome {
    let mut cases = 0;
    for k in 1..=6 {
        for n in k + 3..=20 {
            let s = witness_sequence(n, k).map_err(|e| e.to_string())?;
            let eps = associated_pair(&s).epsilon;
            let expected = c2(n - 2) + 2 * k as u64 - 1;
            ensure(eps.to_integer() == Some(expected), || {
                format!("witness({n},{k}) = {s} has ε={eps}, expected {expected}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n,k) pairs"))
}

fn witness_connectivity() -> Outcome {
    let o = oracle(1);
    let mut cases = 0;
    let mut violations = Vec::new();
    for k in 1..=4 {
        for n in k + 3..=10 {
            let g1 = build_g1(n, k).map_err(|e| e.to_string())?;
            let g2 = build_g2(n, k).map_err(|e| e.to_string())?;
            let s = witness_sequence(n, k).unwrap();
            ensure(
                g1.degree_sequence().unwrap() == s && g2.degree_sequence().unwrap() == s,
                || format!("G1/G2({n},{k}) do not realize {s}"),
            )?;
            let (c1, c2) = (vertex_connectivity(&g1), vertex_connectivity(&g2));
            let (b1, b2) = (o.connectivity(&g1).unwrap(), o.connectivity(&g2).unwrap());
            ensure(c1 == b1 && c2 == b2, || {
                format!("({n},{k}): flow and separator search disagree")
            })?;
            if c1 != k - 1 {
                violations.push(format!("κ(G1({n},{k}))={c1}, expected {}", k - 1));
            }
            if c2 < k {
                let exists = o.decide(&s, k).unwrap().exists_k_connected;
                violations.push(format!(
                    "κ(G2({n},{k}))={c2} < {k}; {s} has {} {k}-connected realization",
                    if exists { "a" } else { "no" }
                ));
            }
            cases += 1;
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("{cases} (n,k) pairs"))
}

fn witness_maximality() -> Outcome {
    let o = oracle(1);
    let mut added = 0;
    for k in 1..=4 {
        for n in k + 3..=10 {
            let g1 = build_g1(n, k).unwrap();
            ensure(is_maximally_non_k_connected(&g1, k), || {
                format!("G1({n},{k}) not maximally non-{k}-connected")
            })?;
            // Independent confirmation through the separator-search route.
            ensure(o.connectivity(&g1).unwrap() < k, || {
                format!("G1({n},{k}) is {k}-connected")
            })?;
            for e in g1.non_edges().collect::<Vec<_>>() {
                let h = g1.add_edge(e).unwrap();
                ensure(o.connectivity(&h).unwrap() >= k, || {
                    format!("G1({n},{k}) + {e} is not {k}-connected")
                })?;
                added += 1;
            }
        }
    }
    Ok(format!("{added} single-edge additions"))
}

fn chain_reproduction() -> Outcome {
    let o = oracle(1);
    let mut steps = 0;
    for (n, k) in [(5usize, 2usize), (6, 2), (5, 3), (7, 3)] {
        let top = (n * (n - 1) / 2) as u64;
        let chain = augment_chain(n, k, top).map_err(|e| format!("({n},{k}): {e}"))?;
        let mut first = vec![k; n];
        if n % 2 == 1 && k % 2 == 1 {
            first[0] = k + 1;
        }
        let base = if n % 2 == 1 && k % 2 == 1 {
            (k * n).div_ceil(2)
        } else {
            k * n / 2
        } as u64;
        ensure(base_edge_count(n, k) == base, || {
            format!("({n},{k}) base edge count")
        })?;
        ensure(chain[0].sequence.terms() == first.as_slice(), || {
            format!("({n},{k}) first row {}", chain[0].sequence)
        })?;
        let last = chain.last().unwrap();
        ensure(last.sequence.terms() == vec![n - 1; n].as_slice(), || {
            format!("({n},{k}) last row {}", last.sequence)
        })?;
        let counts: Vec<u64> = chain.iter().map(|s| s.epsilon).collect();
        ensure(counts == (base..=top).collect::<Vec<_>>(), || {
            format!("({n},{k}) edge counts {counts:?}")
        })?;
        for step in &chain {
            ensure(step.graph.edge_count() as u64 == step.epsilon, || {
                format!(
                    "({n},{k}) step ε={} has {} edges",
                    step.epsilon,
                    step.graph.edge_count()
                )
            })?;
            ensure(
                step.graph.degree_sequence().unwrap() == step.sequence,
                || format!("({n},{k}) step ε={} sequence mismatch", step.epsilon),
            )?;
            let (flow, sep) = (
                vertex_connectivity(&step.graph),
                o.connectivity(&step.graph).unwrap(),
            );
            ensure(flow >= k && sep == flow, || {
                format!("({n},{k}) step ε={}: κ={flow}/{sep} < {k}", step.epsilon)
            })?;
            steps += 1;
        }
    }
    Ok(format!("{steps} chain steps verified"))
}

/// Every non-increasing positive sequence of length ≤ `len` and terms ≤ `max`.
fn sequences(len: usize, max: usize) -> Vec<DegreeSequence> {
    fn extend(prefix: &mut Vec<i64>, len: usize, cap: i64, out: &mut Vec<DegreeSequence>) {
        if !prefix.is_empty() {
            out.push(kconn::normalize(prefix).unwrap());
        }
        if prefix.len() == len {
            return;
        }
        for t in 1..=cap {
            prefix.push(t);
            extend(prefix, len, t, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), len, max as i64, &mut out);
    out
}

fn graphicality() -> Outcome {
    use rayon::prelude::*;
    let o = oracle(0);
    let all = sequences(7, 6);
    let mismatches: Vec<String> = all
        .par_iter()
        .filter_map(|s| {
            let eg = erdos_gallai_graphic(s);
            let enumerated = o.enumerate_realizations(s).unwrap().next().is_some();
            (eg != enumerated).then(|| format!("{s}: EG={eg} enumeration={enumerated}"))
        })
        .collect();
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    let graphic = all.iter().filter(|s| erdos_gallai_graphic(s)).count();
    Ok(format!(
        "{} sequences, {graphic} graphic, 0 exceptions",
        all.len()
    ))
}

fn goldens_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/goldens")
}

fn blessing() -> bool {
    std::env::var_os("KCONN_BLESS").is_some_and(|v| v == "1")
}

fn render(r: &DiscrepancyReport) -> String {
    let mut s = serde_json::to_string_pretty(r).unwrap();
    s.push('\n');
    s
}

/// Produces a report twice with one worker and once with four, requires
/// identical bytes, then compares with (or writes) the golden file.
fn frozen(
    name: &str,
    make: impl Fn(&Oracle) -> DiscrepancyReport,
) -> Result<DiscrepancyReport, String> {
    let (a, b, c) = (make(&oracle(1)), make(&oracle(1)), make(&oracle(4)));
    let (ra, rb, rc) = (render(&a), render(&b), render(&c));
    ensure(ra == rb, || format!("{name}: two runs differ"))?;
    ensure(ra == rc, || format!("{name}: jobs=1 and jobs=4 differ"))?;
    let path = goldens_dir().join(format!("{name}.json"));
    if blessing() {
        std::fs::create_dir_all(goldens_dir()).map_err(|e| e.to_string())?;
        std::fs::write(&path, &ra).map_err(|e| e.to_string())?;
        return Ok(a);
    }
    let golden = std::fs::read_to_string(&path)
        .map_err(|e| format!("{name}: missing golden {} ({e})", path.display()))?;
    ensure(golden == ra, || {
        format!("{name}: report differs from golden")
    })?;
    Ok(a)
}

fn audits_frozen() -> Outcome {
    let mut reports = 0;
    let mut discrepancies = 0;
    for n in 2..=6 {
        let r = frozen(&format!("k_connected_n{n}_kmax3"), |o| {
            o.audit_theorem1(n, 3).unwrap()
        })?;
        discrepancies += r.entries.len();
        let r = frozen(&format!("necessarily_n{n}_kmax3"), |o| {
            o.audit_theorem2(n, 3).unwrap()
        })?;
        discrepancies += r.entries.len();
        reports += 2;
        for k in 1..=2 {
            for enforce in [true, false] {
                let tag = if enforce { "min_degree" } else { "any_degree" };
                let r = frozen(&format!("corollary_n{n}_k{k}_{tag}"), |o| {
                    o.audit_corollary(n, k, enforce).unwrap()
                })?;
                discrepancies += r.entries.len();
                reports += 1;
            }
        }
    }
    Ok(format!(
        "{reports} reports frozen, {discrepancies} discrepancy entries"
    ))
}

fn separates(g: &SimpleGraph, a: usize, b: usize, removed: u32) -> bool {
    let n = g.n();
    let mut seen = 1u32 << a;
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if removed & (1 << w) == 0 && seen & (1 << w) == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    debug_assert!(n <= 32);
    seen & (1 << b) == 0
}

fn min_separator(g: &SimpleGraph, a: usize, b: usize) -> usize {
    let n = g.n();
    let others: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
    (0u32..1 << others.len())
        .filter(|mask| {
            let removed = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(0u32, |acc, (_, &v)| acc | 1 << v);
            separates(g, a, b, removed)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("removing all other vertices separates non-adjacent vertices")
}

fn menger() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d656e67);
    let mut pairs = 0;
    for trial in 0..500 {
        let n = rng.gen_range(2..=6);
        let p: f64 = rng.gen_range(0.1..0.9);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        let g = SimpleGraph::from_edges(n, edges).unwrap();
        let kappa = vertex_connectivity(&g);
        ensure(kappa <= g.min_degree(), || {
            format!("trial {trial}: κ={kappa} > δ={} for {g:?}", g.min_degree())
        })?;
        let mut brute_kappa = n - 1;
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(a, b) {
                    continue;
                }
                let paths = internally_disjoint_path_count(&g, a, b).unwrap();
                let sep = min_separator(&g, a, b);
                ensure(paths == sep, || {
                    format!("trial {trial}: pair ({a},{b}) paths={paths} separator={sep} in {g:?}")
                })?;
                brute_kappa = brute_kappa.min(sep);
                pairs += 1;
            }
        }
        let expected = if n <= 1 { 0 } else { brute_kappa };
        ensure(kappa == expected, || {
            format!("trial {trial}: κ={kappa}, brute force {expected}")
        })?;
    }
    Ok(format!("500 graphs, {pairs} non-adjacent pairs"))
}

fn corollary_identity() -> Outcome {
    for n in 3..=50 {
        for k in 1..=10 {
            let expected = c2(n - 2) + 2 * k as u64;
            ensure(corollary_threshold(n, k) == expected, || {
                format!(
                    "threshold({n},{k}) = {} != {expected}",
                    corollary_threshold(n, k)
                )
            })?;
        }
    }
    let mut graphs = 0;
    for (n, k) in [(5, 1), (6, 1), (6, 2), (7, 2)] {
        let r = frozen(&format!("corollary_enforced_n{n}_k{k}"), |o| {
            o.audit_corollary(n, k, true).unwrap()
        })?;
        graphs += r.universe.graph_count;
    }
    Ok(format!("480 thresholds, {graphs} graphs audited"))
}

fn main() -> ExitCode {
    // Sanity check that the universe helper and this file's generator agree.
    assert_eq!(
        sequence_universe(4, 3).len(),
        sequences(4, 3).iter().filter(|s| s.len() == 4).count()
    );

    let criteria = [
        Criterion {
            id: 1,
            name: "witness arithmetic",
            budget: Duration::from_secs(1),
            run: witness_arithmetic,
        },
        Criterion {
            id: 2,
            name: "G1/G2 connectivity",
            budget: Duration::from_secs(10),
            run: witness_connectivity,
        },
        Criterion {
            id: 3,
            name: "G1 maximality",
            budget: Duration::from_secs(30),
            run: witness_maximality,
        },
        Criterion {
            id: 4,
            name: "chain reproduction",
            budget: Duration::from_secs(10),
            run: chain_reproduction,
        },
        Criterion {
            id: 5,
            name: "graphicality cross-validation",
            budget: Duration::from_secs(300),
            run: graphicality,
        },
        Criterion {
            id: 6,
            name: "audits deterministic and frozen",
            budget: Duration::from_secs(600),
            run: audits_frozen,
        },
        Criterion {
            id: 7,
            name: "Menger consistency",
            budget: Duration::from_secs(60),
            run: menger,
        },
        Criterion {
            id: 8,
            name: "corollary identity",
            budget: Duration::from_secs(300),
            run: corollary_identity,
        },
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.budget => {
                Err(format!("{detail}; over budget {:?}", c.budget))
            }
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} {} ({secs:.2}s): {detail}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} {} ({secs:.2}s): {why}", c.id, c.name);
            }
        }
    }
    let _ = panic::take_hook();
    if blessing() {
        println!("goldens written to {}", goldens_dir().display());
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
