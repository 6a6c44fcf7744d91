//! Output documents. Each has a JSON form (via serde) and a text form
//! carrying the same facts.

use std::fmt::Write as _;

use kconn::oracle::{AuditKind, DiscrepancyReport};
use kconn::realization::{Method, Realized, WitnessLabels};
use kconn::sequence::{ConditionReport, Theorem};
use kconn::{vertex_connectivity, DegreeSequence, HalfInteger, SequenceVerdict, SimpleGraph};
use serde::Serialize;

use crate::edgelist;

pub const SCHEMA_VERSION: u32 = 1;

pub fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn theorem_title(t: Theorem) -> &'static str {
    match t {
        Theorem::KConnected => "k-connected conditions",
        Theorem::NecessarilyKConnected => "necessarily k-connected conditions",
    }
}

fn render_report(out: &mut String, r: &ConditionReport, indent: &str) {
    let d = &r.derived;
    let _ = writeln!(
        out,
        "{indent}{} (k={}): {}",
        theorem_title(r.theorem),
        d.k,
        if r.verdict { "true" } else { "false" }
    );
    for c in &r.checks {
        let _ = writeln!(
            out,
            "{indent}  [{}] {}: {}",
            if c.passed { "pass" } else { "fail" },
            c.name,
            c.reason
        );
    }
    let _ = write!(
        out,
        "{indent}  φ={} ε={} kφ/2={} C(φ,2)={}",
        d.pair.phi, d.pair.epsilon, d.epsilon_lower, d.epsilon_upper
    );
    if let Some(b) = d.forcing_bound {
        let _ = write!(out, " forcing_bound={b}");
    }
    out.push('\n');
}

fn opt_bool(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

#[derive(Debug, Serialize)]
pub struct Agreement {
    pub k_connected: bool,
    /// `None` when the sequence has no realization.
    pub necessarily_k_connected: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct CheckDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub sequence: DegreeSequence,
    pub k: usize,
    pub k_connected: ConditionReport,
    pub necessarily_k_connected: ConditionReport,
    pub oracle: Option<SequenceVerdict>,
    pub agreement: Option<Agreement>,
    /// `"predicate"` or `"oracle"`: which verdict the exit code reports.
    pub exit_basis: &'static str,
}

impl CheckDoc {
    pub fn new(
        s: &DegreeSequence,
        k: usize,
        t1: ConditionReport,
        t2: ConditionReport,
        oracle: Option<SequenceVerdict>,
        ground_truth: bool,
    ) -> Self {
        let agreement = oracle.as_ref().map(|v| Agreement {
            k_connected: t1.verdict == v.exists_k_connected,
            necessarily_k_connected: v.all_k_connected.map(|all| all == t2.verdict),
        });
        CheckDoc {
            schema_version: SCHEMA_VERSION,
            command: "check",
            sequence: s.clone(),
            k,
            k_connected: t1,
            necessarily_k_connected: t2,
            oracle,
            agreement,
            exit_basis: if ground_truth { "oracle" } else { "predicate" },
        }
    }

    pub fn exit_verdict(&self) -> bool {
        match (&self.oracle, self.exit_basis) {
            (Some(v), "oracle") => v.exists_k_connected,
            _ => self.k_connected.verdict,
        }
    }

    pub fn agrees(&self) -> Option<bool> {
        self.agreement
            .as_ref()
            .map(|a| a.k_connected && a.necessarily_k_connected != Some(false))
    }

    pub fn disagreements(&self) -> Vec<String> {
        let Some(a) = &self.agreement else {
            return Vec::new();
        };
        let mut lines = Vec::new();
        if !a.k_connected {
            lines.push(format!(
                "k-connected predicate says {} but exhaustive search says {}",
                self.k_connected.verdict, !self.k_connected.verdict
            ));
        }
        if a.necessarily_k_connected == Some(false) {
            lines.push(format!(
                "necessarily-k-connected predicate says {} but exhaustive search says {}",
                self.necessarily_k_connected.verdict, !self.necessarily_k_connected.verdict
            ));
        }
        lines
    }

    pub fn text(&self) -> String {
        let mut out = format!("sequence {} k={}\n", self.sequence, self.k);
        render_report(&mut out, &self.k_connected, "");
        render_report(&mut out, &self.necessarily_k_connected, "");
        match &self.oracle {
            Some(v) => {
                let _ = writeln!(
                    out,
                    "oracle: graphic={} exists_k_connected={} all_k_connected={} realization_count={}",
                    v.graphic,
                    v.exists_k_connected,
                    opt_bool(v.all_k_connected),
                    v.realization_count
                );
                let _ = writeln!(
                    out,
                    "{}",
                    if self.agrees() == Some(true) {
                        "AGREE"
                    } else {
                        "DISAGREE"
                    }
                );
            }
            None => out.push_str("oracle: skipped (sequence longer than oracle limit)\n"),
        }
        let _ = writeln!(out, "exit basis: {}", self.exit_basis);
        out
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Requested {
    Sequence { sequence: DegreeSequence },
    Chain { n: usize, epsilon: u64 },
}

#[derive(Debug, Serialize)]
pub struct RealizeDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub requested: Requested,
    pub k: usize,
    pub method: Method,
    pub found: bool,
    pub graph: Option<GraphSummary>,
}

impl RealizeDoc {
    pub fn new(requested: Requested, k: usize, result: &Realized) -> Self {
        RealizeDoc {
            schema_version: SCHEMA_VERSION,
            command: "realize",
            requested,
            k,
            method: result.method(),
            found: result.graph().is_some(),
            graph: result
                .graph()
                .map(|g| GraphSummary::of(g, vertex_connectivity(g))),
        }
    }

    pub fn edge_list(&self, g: &SimpleGraph) -> String {
        let summary = self.graph.as_ref().expect("found");
        edgelist::render(
            g,
            &[
                format!("method={}", self.method),
                format!("k={} connectivity={}", self.k, summary.connectivity),
            ],
        )
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        match &self.requested {
            Requested::Sequence { sequence } => {
                let _ = writeln!(out, "requested sequence {sequence} k={}", self.k);
            }
            Requested::Chain { n, epsilon } => {
                let _ = writeln!(out, "requested chain n={n} ε={epsilon} k={}", self.k);
            }
        }
        let _ = writeln!(out, "method: {}", self.method);
        let _ = writeln!(out, "found: {}", self.found);
        if let Some(g) = &self.graph {
            g.text(&mut out, "graph");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edge_count: usize,
    pub degrees: Vec<usize>,
    pub connectivity: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphSummary {
    pub fn of(g: &SimpleGraph, connectivity: usize) -> Self {
        let mut degrees = g.degrees();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        GraphSummary {
            n: g.n(),
            edge_count: g.edge_count(),
            degrees,
            connectivity,
            edges: g.edges().map(|e| (e.a(), e.b())).collect(),
        }
    }

    fn text(&self, out: &mut String, name: &str) {
        let degrees: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        let edges: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let _ = writeln!(
            out,
            "{name}: n={} edge_count={} degrees={{{}}} connectivity={}",
            self.n,
            self.edge_count,
            degrees.join(","),
            self.connectivity
        );
        let _ = writeln!(out, "{name} edge list: {}", edges.join(" "));
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub k: usize,
    pub witness_sequence: DegreeSequence,
    pub epsilon: HalfInteger,
    pub labels: WitnessLabels,
    pub g1: GraphSummary,
    pub g2: GraphSummary,
    pub g1_maximally_non_k_connected: bool,
}

impl WitnessDoc {
    pub fn text(&self) -> String {
        let mut out = format!(
            "witness n={} k={}: sequence {} ε={}\n",
            self.n, self.k, self.witness_sequence, self.epsilon
        );
        let l = &self.labels;
        let _ = writeln!(
            out,
            "labels: v_n={} v_n-1={} v_i={} v_j={}",
            l.v_n, l.v_n_minus_1, l.v_i, l.v_j
        );
        self.g1.text(&mut out, "G1");
        self.g2.text(&mut out, "G2");
        let _ = writeln!(
            out,
            "G1 maximally non-{}-connected: {}",
            self.k, self.g1_maximally_non_k_connected
        );
        out
    }
}

#[derive(Debug, Serialize)]
pub struct AuditBundle {
    pub schema_version: u32,
    pub command: &'static str,
    pub reports: Vec<DiscrepancyReport>,
}

fn audit_title(kind: AuditKind) -> &'static str {
    match kind {
        AuditKind::Theorem1 => "k-connected conditions vs. some realization k-connected",
        AuditKind::Theorem2 => {
            "necessarily k-connected conditions vs. every realization k-connected"
        }
        AuditKind::Corollary => "edge threshold vs. every graph above it k-connected",
    }
}

fn seq_text(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl AuditBundle {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let u = &r.universe;
            let _ = writeln!(out, "audit: {}", audit_title(r.audit));
            let _ = write!(out, "universe: n={} k={}..={}", u.n, u.k_min, u.k_max);
            if let Some(e) = u.enforce_min_degree {
                let _ = write!(out, " enforce_min_degree={e}");
            }
            if let Some(t) = u.edge_threshold {
                let _ = write!(out, " edge_threshold={t}");
            }
            let _ = writeln!(
                out,
                " sequences={} graphs={}",
                u.sequence_count, u.graph_count
            );
            let s = &r.summary;
            let _ = writeln!(
                out,
                "summary: evaluated={} agreements={} discrepancies={} predicate_true_oracle_false={} predicate_false_oracle_true={}",
                s.evaluated, s.agreements, s.discrepancies, s.predicate_true_oracle_false, s.predicate_false_oracle_true
            );
            for e in &r.entries {
                let _ = write!(
                    out,
                    "  discrepancy {} k={} predicate={} oracle={} realizations={}",
                    seq_text(&e.sequence),
                    e.k,
                    e.predicate_verdict,
                    e.oracle_verdict,
                    e.realization_count
                );
                if let Some(c) = &e.counterexamples {
                    let edges: Vec<String> =
                        c.example.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                    let _ = write!(
                        out,
                        " counterexamples={} connectivity={} example={}",
                        c.count,
                        c.connectivity,
                        edges.join(" ")
                    );
                }
                out.push('\n');
            }
            for b in r.boundary.iter().flatten() {
                let _ = writeln!(
                    out,
                    "  boundary {} k={} witness={} predicate={} oracle={} realizations={}",
                    seq_text(&b.sequence),
                    b.k,
                    b.is_witness_sequence,
                    b.predicate_verdict,
                    opt_bool(b.oracle_verdict),
                    b.realization_count
                );
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct PairCount {
    pub a: usize,
    pub b: usize,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct ConnectivityDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub edge_count: usize,
    pub degrees: Vec<usize>,
    pub connectivity: usize,
    pub pair: Option<PairCount>,
}

impl ConnectivityDoc {
    pub fn text(&self) -> String {
        let degrees: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        let mut out = format!(
            "n={}\nedge_count={}\ndegrees={{{}}}\nconnectivity={}\n",
            self.n,
            self.edge_count,
            degrees.join(","),
            self.connectivity
        );
        if let Some(p) = &self.pair {
            let _ = writeln!(out, "disjoint_paths({},{})={}", p.a, p.b, p.count);
        }
        out
    }
}
