//! Exhaustive ground truth for small instances.
//!
//! Realizations are enumerated as labeled graphs by backtracking, and
//! connectivity is decided by brute-force separator search on adjacency
//! bitmasks. Nothing here goes through the flow code in [`crate::graph`],
//! so the two can be checked against each other.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::realization::witness_sequence;
use crate::sequence::{
    associated_pair, corollary_threshold, forcing_bound, theorem1_check, theorem2_check,
    DegreeSequence,
};

/// Largest vertex count the oracle will ever accept.
pub const HARD_LIMIT: usize = 10;
pub const DEFAULT_LIMIT: usize = 8;
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("enumeration limit {0} exceeds the hard cap of {HARD_LIMIT}")]
    LimitAboveHardCap(usize),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

type Rows = [u32; HARD_LIMIT];

#[derive(Clone, Copy)]
struct MaskGraph {
    n: usize,
    rows: Rows,
}

impl MaskGraph {
    fn full_mask(n: usize) -> u32 {
        (1u32 << n) - 1
    }

    fn edge_count(&self) -> usize {
        self.rows[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    fn min_degree(&self) -> usize {
        self.rows[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    fn sorted_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.rows[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.rows[a] >> b & 1 == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn to_graph(self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, self.edge_list()).expect("mask rows are simple")
    }

    /// Whether the vertices outside `removed` induce a connected graph.
    fn connected_without(&self, removed: u32) -> bool {
        let alive = Self::full_mask(self.n) & !removed;
        if alive.count_ones() <= 1 {
            return true;
        }
        let mut seen = 1u32 << alive.trailing_zeros();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.rows[v];
            }
            next &= alive & !seen;
            seen |= next;
            frontier = next;
        }
        seen == alive
    }

    /// `min(κ, cap)` by trying every vertex subset of size `0, 1, …` as a
    /// separator.
    fn connectivity(&self, cap: usize) -> usize {
        let n = self.n;
        if n <= 1 {
            return 0;
        }
        if self.edge_count() == n * (n - 1) / 2 {
            return (n - 1).min(cap);
        }
        let cap = cap.min(self.min_degree());
        for size in 0..=n - 2 {
            if size >= cap {
                return cap;
            }
            if subsets_of_size(n, size).any(|s| !self.connected_without(s)) {
                return size;
            }
        }
        unreachable!("a non-complete graph has a separator of size at most n - 2")
    }
}

/// All `size`-element subsets of `0..n` as bitmasks (Gosper's hack).
fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u32> {
    let end = 1u64 << n;
    let mut cur: u64 = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut done = size > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur as u32;
        if cur == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
            if cur >= end {
                done = true;
            }
        }
        Some(out)
    })
}

struct Frame {
    vertex: usize,
    candidates: Vec<usize>,
    combo: Vec<usize>,
}

/// Lazy stream of every labeled simple graph in which vertex `i` has
/// degree `degrees[i]`, each exactly once.
pub struct Realizations {
    graph: MaskGraph,
    residual: Vec<usize>,
    processed: u32,
    stack: Vec<Frame>,
    descending: bool,
    done: bool,
}

impl Realizations {
    fn new(degrees: &[usize]) -> Self {
        let n = degrees.len();
        debug_assert!(n <= HARD_LIMIT);
        let sum: usize = degrees.iter().sum();
        let impossible = sum % 2 == 1 || degrees.iter().any(|&d| d + 1 > n);
        Realizations {
            graph: MaskGraph {
                n,
                rows: [0; HARD_LIMIT],
            },
            residual: degrees.to_vec(),
            processed: 0,
            stack: Vec::new(),
            descending: true,
            done: impossible,
        }
    }

    fn open(&self, v: usize) -> bool {
        self.processed >> v & 1 == 0
    }

    /// Every open vertex still has enough open partners with spare degree.
    fn feasible(&self) -> bool {
        let n = self.graph.n;
        let hungry = (0..n)
            .filter(|&v| self.open(v) && self.residual[v] > 0)
            .count();
        (0..n)
            .filter(|&v| self.open(v) && self.residual[v] > 0)
            .all(|v| self.residual[v] < hungry)
    }

    fn apply(&mut self, top: usize) {
        let frame = &self.stack[top];
        let v = frame.vertex;
        for &i in &frame.combo {
            let w = frame.candidates[i];
            self.graph.rows[v] |= 1 << w;
            self.graph.rows[w] |= 1 << v;
            self.residual[w] -= 1;
        }
        self.residual[v] = 0;
        self.processed |= 1 << v;
    }

    fn undo(&mut self, top: usize) {
        let frame = &self.stack[top];
        let v = frame.vertex;
        for &i in &frame.combo {
            let w = frame.candidates[i];
            self.graph.rows[v] &= !(1 << w);
            self.graph.rows[w] &= !(1 << v);
            self.residual[w] += 1;
        }
        self.residual[v] = frame.combo.len();
        self.processed &= !(1 << v);
    }

    fn next_mask(&mut self) -> Option<MaskGraph> {
        if self.done {
            return None;
        }
        loop {
            if self.descending {
                let n = self.graph.n;
                // Highest residual first, lowest label on ties.
                let pick = (0..n)
                    .filter(|&v| self.open(v) && self.residual[v] > 0)
                    .max_by(|&a, &b| self.residual[a].cmp(&self.residual[b]).then(b.cmp(&a)));
                let Some(v) = pick else {
                    self.descending = false;
                    return Some(self.graph);
                };
                let need = self.residual[v];
                let candidates: Vec<usize> = (0..n)
                    .filter(|&w| w != v && self.open(w) && self.residual[w] > 0)
                    .collect();
                if need > candidates.len() {
                    self.descending = false;
                    continue;
                }
                self.stack.push(Frame {
                    vertex: v,
                    candidates,
                    combo: (0..need).collect(),
                });
                self.apply(self.stack.len() - 1);
                self.descending = self.feasible();
            } else {
                let Some(top) = self.stack.len().checked_sub(1) else {
                    self.done = true;
                    return None;
                };
                self.undo(top);
                let frame = &mut self.stack[top];
                if next_combination(&mut frame.combo, frame.candidates.len()) {
                    self.apply(top);
                    self.descending = self.feasible();
                } else {
                    self.stack.pop();
                }
            }
        }
    }
}

impl Iterator for Realizations {
    type Item = SimpleGraph;

    fn next(&mut self) -> Option<SimpleGraph> {
        self.next_mask().map(|m| m.to_graph())
    }
}

/// Advances `combo` to the next ascending k-subset of `0..m`.
fn next_combination(combo: &mut [usize], m: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < m - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceVerdict {
    pub sequence: DegreeSequence,
    pub k: usize,
    pub graphic: bool,
    pub exists_k_connected: bool,
    /// `None` when the sequence has no realization at all.
    pub all_k_connected: Option<bool>,
    pub realization_count: u64,
}

/// The booleans of a [`SequenceVerdict`], decided with early exit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub graphic: bool,
    pub exists_k_connected: bool,
    pub all_k_connected: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditKind {
    Theorem1,
    Theorem2,
    Corollary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Universe {
    pub n: usize,
    pub k_min: usize,
    pub k_max: usize,
    /// Corollary audits only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enforce_min_degree: Option<bool>,
    /// Corollary audits only: the edge-count threshold used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_threshold: Option<u64>,
    /// Sequences swept (theorem audits) or distinct degree sequences seen
    /// among the examined graphs (corollary audits).
    pub sequence_count: u64,
    /// Labeled graphs examined.
    pub graph_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexamples {
    pub count: u64,
    pub connectivity: usize,
    /// Lexicographically smallest edge list in the class.
    pub example: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    /// Non-increasing degrees; may contain zeros in corollary audits
    /// without a minimum-degree restriction.
    pub sequence: Vec<usize>,
    pub k: usize,
    pub theorem: AuditKind,
    pub predicate_verdict: bool,
    pub oracle_verdict: bool,
    pub realization_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexamples: Option<Counterexamples>,
}

/// A sequence sitting exactly on the forcing bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryCase {
    pub sequence: Vec<usize>,
    pub k: usize,
    pub is_witness_sequence: bool,
    pub predicate_verdict: bool,
    pub oracle_verdict: Option<bool>,
    pub realization_count: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub evaluated: u64,
    pub agreements: u64,
    pub discrepancies: u64,
    pub predicate_true_oracle_false: u64,
    pub predicate_false_oracle_true: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscrepancyReport {
    pub schema_version: u32,
    pub audit: AuditKind,
    pub universe: Universe,
    pub entries: Vec<Discrepancy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<BoundaryCase>>,
    pub summary: Summary,
}

impl DiscrepancyReport {
    pub fn is_clean(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Per-sequence connectivity profile over all labeled realizations.
struct Profile {
    count: u64,
    min_kappa: usize,
    max_kappa: usize,
}

impl Profile {
    fn exists(&self, k: usize) -> bool {
        self.count > 0 && self.max_kappa >= k
    }

    fn all(&self, k: usize) -> Option<bool> {
        (self.count > 0).then_some(self.min_kappa >= k)
    }
}

/// Non-increasing sequences of length `n` with terms in `1..=max_term`,
/// in lexicographic order.
pub fn sequence_universe(n: usize, max_term: usize) -> Vec<DegreeSequence> {
    fn rec(len: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeSequence>) {
        if cur.len() == len {
            out.push(DegreeSequence::from_positive(cur.clone()));
            return;
        }
        for d in 1..=hi {
            cur.push(d);
            rec(len, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 && max_term > 0 {
        rec(n, max_term, &mut Vec::with_capacity(n), &mut out);
    }
    out.sort();
    out
}

/// Exhaustive decision procedures bounded by a vertex-count limit.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    limit: usize,
    jobs: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            limit: DEFAULT_LIMIT,
            jobs: 0,
        }
    }
}

impl Oracle {
    pub fn new(limit: usize) -> Result<Self, OracleError> {
        if limit > HARD_LIMIT {
            return Err(OracleError::LimitAboveHardCap(limit));
        }
        Ok(Oracle { limit, jobs: 0 })
    }

    /// Worker count for sweeps; 0 lets the pool choose.
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn admit(&self, n: usize) -> Result<(), OracleError> {
        if n > self.limit {
            Err(OracleError::TooLarge {
                n,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    fn run<T: Send>(&self, work: impl FnOnce() -> T + Send) -> Result<T, OracleError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| OracleError::Pool(e.to_string()))?;
        Ok(pool.install(work))
    }

    pub fn enumerate_realizations(&self, s: &DegreeSequence) -> Result<Realizations, OracleError> {
        self.enumerate_labeled(s.terms())
    }

    /// Like [`Oracle::enumerate_realizations`] for degrees in arbitrary
    /// label order; zeros allowed.
    pub fn enumerate_labeled(&self, degrees: &[usize]) -> Result<Realizations, OracleError> {
        self.admit(degrees.len())?;
        Ok(Realizations::new(degrees))
    }

    pub fn graphic(&self, s: &DegreeSequence) -> Result<bool, OracleError> {
        Ok(self.enumerate_realizations(s)?.next_mask().is_some())
    }

    /// Full enumeration, including the labeled realization count.
    pub fn verdict(&self, s: &DegreeSequence, k: usize) -> Result<SequenceVerdict, OracleError> {
        if k == 0 {
            return Err(OracleError::ZeroK);
        }
        let mut stream = self.enumerate_realizations(s)?;
        let (mut count, mut exists, mut all) = (0u64, false, true);
        while let Some(g) = stream.next_mask() {
            count += 1;
            let ok = g.connectivity(k) >= k;
            exists |= ok;
            all &= ok;
        }
        Ok(SequenceVerdict {
            sequence: s.clone(),
            k,
            graphic: count > 0,
            exists_k_connected: exists,
            all_k_connected: (count > 0).then_some(all),
            realization_count: count,
        })
    }

    /// Stops as soon as both a k-connected and a non-k-connected
    /// realization have been seen.
    pub fn decide(&self, s: &DegreeSequence, k: usize) -> Result<Decision, OracleError> {
        if k == 0 {
            return Err(OracleError::ZeroK);
        }
        let mut stream = self.enumerate_realizations(s)?;
        let (mut any, mut yes, mut no) = (false, false, false);
        while let Some(g) = stream.next_mask() {
            any = true;
            if g.connectivity(k) >= k {
                yes = true;
            } else {
                no = true;
            }
            if yes && no {
                break;
            }
        }
        Ok(Decision {
            graphic: any,
            exists_k_connected: yes,
            all_k_connected: any.then_some(!no),
        })
    }

    /// First `k`-connected realization in enumeration order.
    pub fn find_k_connected(
        &self,
        s: &DegreeSequence,
        k: usize,
    ) -> Result<Option<SimpleGraph>, OracleError> {
        let mut stream = self.enumerate_realizations(s)?;
        while let Some(g) = stream.next_mask() {
            if g.connectivity(k) >= k {
                return Ok(Some(g.to_graph()));
            }
        }
        Ok(None)
    }

    /// Exact vertex connectivity by separator search.
    pub fn connectivity(&self, g: &SimpleGraph) -> Result<usize, OracleError> {
        self.admit(g.n())?;
        Ok(to_mask(g).connectivity(usize::MAX))
    }

    fn profile(&self, s: &DegreeSequence, cap: usize) -> Profile {
        let mut stream = Realizations::new(s.terms());
        let mut p = Profile {
            count: 0,
            min_kappa: usize::MAX,
            max_kappa: 0,
        };
        while let Some(g) = stream.next_mask() {
            let kappa = g.connectivity(cap);
            p.count += 1;
            p.min_kappa = p.min_kappa.min(kappa);
            p.max_kappa = p.max_kappa.max(kappa);
        }
        p
    }

    fn profiles(
        &self,
        n: usize,
        k_max: usize,
    ) -> Result<Vec<(DegreeSequence, Profile)>, OracleError> {
        self.admit(n)?;
        let universe = sequence_universe(n, n.saturating_sub(1));
        self.run(|| {
            universe
                .into_par_iter()
                .map(|s| {
                    let p = self.profile(&s, k_max);
                    (s, p)
                })
                .collect()
        })
    }

    /// Compares the k-connected predicate with "some realization is
    /// k-connected" for every sequence of length `n` with terms `≤ n−1`.
    pub fn audit_theorem1(&self, n: usize, k_max: usize) -> Result<DiscrepancyReport, OracleError> {
        if k_max == 0 {
            return Err(OracleError::ZeroK);
        }
        let profiles = self.profiles(n, k_max)?;
        let mut entries = Vec::new();
        let mut summary = Summary::default();
        for (s, p) in &profiles {
            for k in 1..=k_max {
                let claimed = theorem1_check(s, k).verdict;
                let truth = p.exists(k);
                tally(&mut summary, claimed, truth);
                if claimed != truth {
                    entries.push(Discrepancy {
                        sequence: s.terms().to_vec(),
                        k,
                        theorem: AuditKind::Theorem1,
                        predicate_verdict: claimed,
                        oracle_verdict: truth,
                        realization_count: p.count,
                        counterexamples: None,
                    });
                }
            }
        }
        entries.sort_by(|a, b| (&a.sequence, a.k).cmp(&(&b.sequence, b.k)));
        Ok(DiscrepancyReport {
            schema_version: SCHEMA_VERSION,
            audit: AuditKind::Theorem1,
            universe: Universe {
                n,
                k_min: 1,
                k_max,
                enforce_min_degree: None,
                edge_threshold: None,
                sequence_count: profiles.len() as u64,
                graph_count: profiles.iter().map(|(_, p)| p.count).sum(),
            },
            entries,
            boundary: None,
            summary,
        })
    }

    /// Compares the necessarily-k-connected predicate with "every
    /// realization is k-connected" over sequences that have a realization.
    /// Sequences exactly on the forcing bound go to the boundary annex.
    pub fn audit_theorem2(&self, n: usize, k_max: usize) -> Result<DiscrepancyReport, OracleError> {
        if k_max == 0 {
            return Err(OracleError::ZeroK);
        }
        let profiles = self.profiles(n, k_max)?;
        let mut entries = Vec::new();
        let mut boundary = Vec::new();
        let mut summary = Summary::default();
        for (s, p) in &profiles {
            for k in 1..=k_max {
                let claimed = theorem2_check(s, k).verdict;
                let truth = p.all(k);
                let eps = associated_pair(s).epsilon;
                if eps.to_integer() == Some(forcing_bound(n, k)) {
                    let witness = witness_sequence(n, k).ok();
                    boundary.push(BoundaryCase {
                        sequence: s.terms().to_vec(),
                        k,
                        is_witness_sequence: witness.as_ref() == Some(s),
                        predicate_verdict: claimed,
                        oracle_verdict: truth,
                        realization_count: p.count,
                    });
                }
                let Some(truth) = truth else { continue };
                tally(&mut summary, claimed, truth);
                if claimed != truth {
                    entries.push(Discrepancy {
                        sequence: s.terms().to_vec(),
                        k,
                        theorem: AuditKind::Theorem2,
                        predicate_verdict: claimed,
                        oracle_verdict: truth,
                        realization_count: p.count,
                        counterexamples: None,
                    });
                }
            }
        }
        entries.sort_by(|a, b| (&a.sequence, a.k).cmp(&(&b.sequence, b.k)));
        boundary.sort_by(|a, b| (&a.sequence, a.k).cmp(&(&b.sequence, b.k)));
        Ok(DiscrepancyReport {
            schema_version: SCHEMA_VERSION,
            audit: AuditKind::Theorem2,
            universe: Universe {
                n,
                k_min: 1,
                k_max,
                enforce_min_degree: None,
                edge_threshold: None,
                sequence_count: profiles.len() as u64,
                graph_count: profiles.iter().map(|(_, p)| p.count).sum(),
            },
            entries,
            boundary: Some(boundary),
            summary,
        })
    }

    /// Every graph on `n` vertices with at least the threshold number of
    /// edges (and, optionally, minimum degree `≥ k`) that is not
    /// k-connected, grouped by degree sequence.
    pub fn audit_corollary(
        &self,
        n: usize,
        k: usize,
        enforce_min_degree: bool,
    ) -> Result<DiscrepancyReport, OracleError> {
        if k == 0 {
            return Err(OracleError::ZeroK);
        }
        self.admit(n)?;
        let threshold = corollary_threshold(n, k);
        let total = n * (n - 1) / 2;
        let max_removed = total.saturating_sub(threshold as usize);
        let pairs = pair_table(n);

        #[derive(Default)]
        struct Acc {
            graphs: u64,
            classes: BTreeMap<Vec<usize>, (u64, u64, Counterexamples)>,
        }

        let visit = |acc: &mut Acc, g: &MaskGraph| {
            if enforce_min_degree && g.min_degree() < k {
                return;
            }
            acc.graphs += 1;
            let degrees = g.sorted_degrees();
            let offending = g.connectivity(k) < k;
            let slot = acc.classes.entry(degrees).or_insert_with(|| {
                (
                    0,
                    0,
                    Counterexamples {
                        count: 0,
                        connectivity: usize::MAX,
                        example: Vec::new(),
                    },
                )
            });
            slot.0 += 1;
            if offending {
                let edges = g.edge_list();
                let c = &mut slot.2;
                if c.count == 0 || edges < c.example {
                    c.example = edges;
                    c.connectivity = g.connectivity(usize::MAX);
                }
                c.count += 1;
                slot.1 += 1;
            }
        };
        let merge = |mut a: Acc, b: Acc| {
            a.graphs += b.graphs;
            for (key, (seen, bad, cx)) in b.classes {
                match a.classes.get_mut(&key) {
                    None => {
                        a.classes.insert(key, (seen, bad, cx));
                    }
                    Some(slot) => {
                        slot.0 += seen;
                        slot.1 += bad;
                        if cx.count > 0 && (slot.2.count == 0 || cx.example < slot.2.example) {
                            slot.2.example = cx.example;
                            slot.2.connectivity = cx.connectivity;
                        }
                        slot.2.count += cx.count;
                    }
                }
            }
            a
        };

        let tasks = if threshold as usize <= total {
            removal_tasks(pairs.len())
        } else {
            Vec::new()
        };
        let acc = self.run(|| {
            tasks
                .into_par_iter()
                .map(|first| {
                    let mut acc = Acc::default();
                    for_each_removal(n, &pairs, first, max_removed, None, |g| visit(&mut acc, g));
                    acc
                })
                .reduce(Acc::default, merge)
        })?;

        let mut entries = Vec::new();
        let mut summary = Summary::default();
        for (seq, (seen, bad, cx)) in &acc.classes {
            summary.evaluated += seen;
            summary.agreements += seen - bad;
            summary.discrepancies += bad;
            summary.predicate_true_oracle_false += bad;
            if *bad > 0 {
                entries.push(Discrepancy {
                    sequence: seq.clone(),
                    k,
                    theorem: AuditKind::Corollary,
                    predicate_verdict: true,
                    oracle_verdict: false,
                    realization_count: *seen,
                    counterexamples: Some(cx.clone()),
                });
            }
        }
        Ok(DiscrepancyReport {
            schema_version: SCHEMA_VERSION,
            audit: AuditKind::Corollary,
            universe: Universe {
                n,
                k_min: k,
                k_max: k,
                enforce_min_degree: Some(enforce_min_degree),
                edge_threshold: Some(threshold),
                sequence_count: acc.classes.len() as u64,
                graph_count: acc.graphs,
            },
            entries,
            boundary: None,
            summary,
        })
    }

    /// Largest edge count of a graph on `n` vertices that is not
    /// k-connected, optionally among graphs with minimum degree `≥ k`.
    /// `None` when no graph qualifies.
    pub fn max_edges_non_k_connected(
        &self,
        n: usize,
        k: usize,
        enforce_min_degree: bool,
    ) -> Result<Option<u64>, OracleError> {
        if k == 0 {
            return Err(OracleError::ZeroK);
        }
        self.admit(n)?;
        let pairs = pair_table(n);
        let total = pairs.len();
        let qualifies =
            |g: &MaskGraph| (!enforce_min_degree || g.min_degree() >= k) && g.connectivity(k) < k;
        self.run(|| {
            for removed in 0..=total {
                let hit = removal_tasks(total).into_par_iter().any(|first| {
                    let mut found = false;
                    for_each_removal(n, &pairs, first, removed, Some(removed), |g| {
                        found |= qualifies(g);
                    });
                    found
                });
                if hit {
                    return Some((total - removed) as u64);
                }
            }
            None
        })
    }
}

fn tally(summary: &mut Summary, claimed: bool, truth: bool) {
    summary.evaluated += 1;
    if claimed == truth {
        summary.agreements += 1;
    } else {
        summary.discrepancies += 1;
        if claimed {
            summary.predicate_true_oracle_false += 1;
        } else {
            summary.predicate_false_oracle_true += 1;
        }
    }
}

fn to_mask(g: &SimpleGraph) -> MaskGraph {
    let mut m = MaskGraph {
        n: g.n(),
        rows: [0; HARD_LIMIT],
    };
    for e in g.edges() {
        m.rows[e.a()] |= 1 << e.b();
        m.rows[e.b()] |= 1 << e.a();
    }
    m
}

fn pair_table(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((a, b));
        }
    }
    pairs
}

/// Task keys for splitting removal sets: `None` for the empty set, else
/// the smallest removed pair index.
fn removal_tasks(total: usize) -> Vec<Option<usize>> {
    std::iter::once(None).chain((0..total).map(Some)).collect()
}

/// Visits `K_n` minus every set of removed pairs whose smallest index is
/// `first` and whose size is at most `max_removed` (exactly `exact` if
/// given).
fn for_each_removal(
    n: usize,
    pairs: &[(usize, usize)],
    first: Option<usize>,
    max_removed: usize,
    exact: Option<usize>,
    mut visit: impl FnMut(&MaskGraph),
) {
    let full = MaskGraph::full_mask(n);
    let mut base = MaskGraph {
        n,
        rows: [0; HARD_LIMIT],
    };
    for v in 0..n {
        base.rows[v] = full & !(1 << v);
    }
    let Some(first) = first else {
        if exact.unwrap_or(0) == 0 {
            visit(&base);
        }
        return;
    };
    if max_removed == 0 {
        return;
    }
    let clear = |g: &mut MaskGraph, idx: usize| {
        let (a, b) = pairs[idx];
        g.rows[a] &= !(1 << b);
        g.rows[b] &= !(1 << a);
    };
    clear(&mut base, first);
    let rest = pairs.len() - first - 1;
    let sizes: Vec<usize> = match exact {
        Some(e) if e >= 1 => vec![e - 1],
        Some(_) => return,
        None => (0..max_removed).collect(),
    };
    for extra in sizes {
        if extra > rest {
            continue;
        }
        let mut combo: Vec<usize> = (0..extra).collect();
        loop {
            let mut g = base;
            for &i in &combo {
                clear(&mut g, first + 1 + i);
            }
            visit(&g);
            if extra == 0 || !next_combination(&mut combo, rest) {
                break;
            }
        }
    }
}
