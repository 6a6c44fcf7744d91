//! Labeled simple undirected graphs on dense vertex labels `0..n`, with
//! exact vertex connectivity by counting internally disjoint paths.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sequence::{DegreeSequence, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0} is already present")]
    DuplicateEdge(Edge),
    #[error("edge {0} is not present")]
    MissingEdge(Edge),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("path endpoints must differ (got {0} twice)")]
    SameVertex(usize),
    #[error("vertex map sends two vertices to label {0}")]
    MapNotInjective(usize),
    #[error("vertex map has {got} entries, expected {expected}")]
    MapLengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// An unordered vertex pair stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Result<Self, GraphError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge { a: u, b: v }),
            std::cmp::Ordering::Greater => Ok(Edge { a: v, b: u }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(u)),
        }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}–{}", self.a, self.b)
    }
}

/// Symmetric adjacency bit matrix, one row of `words` u64 blocks per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SimpleGraph {
            n,
            words,
            rows: vec![0; n * words],
            edges: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = SimpleGraph::empty(n);
        for (u, v) in edges {
            g.insert(Edge::new(u, v)?)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn set_bit(&mut self, u: usize, v: usize, on: bool) {
        let w = &mut self.rows[u * self.words + v / 64];
        if on {
            *w |= 1 << (v % 64);
        } else {
            *w &= !(1 << (v % 64));
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }

    /// Edges in lexicographic `(a, b)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |a| {
            self.neighbors(a)
                .filter(move |&b| b > a)
                .map(move |b| Edge { a, b })
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edges == self.n * self.n.saturating_sub(1) / 2
    }

    fn check_range(&self, e: Edge) -> Result<(), GraphError> {
        if e.b >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: e.b,
                n: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn insert(&mut self, e: Edge) -> Result<(), GraphError> {
        self.check_range(e)?;
        if self.has_edge(e.a, e.b) {
            return Err(GraphError::DuplicateEdge(e));
        }
        self.set_bit(e.a, e.b, true);
        self.set_bit(e.b, e.a, true);
        self.edges += 1;
        Ok(())
    }

    pub(crate) fn remove(&mut self, e: Edge) -> Result<(), GraphError> {
        self.check_range(e)?;
        if !self.has_edge(e.a, e.b) {
            return Err(GraphError::MissingEdge(e));
        }
        self.set_bit(e.a, e.b, false);
        self.set_bit(e.b, e.a, false);
        self.edges -= 1;
        Ok(())
    }

    /// `G ∪ ab` as a new graph.
    pub fn add_edge(&self, e: Edge) -> Result<SimpleGraph, GraphError> {
        let mut g = self.clone();
        g.insert(e)?;
        Ok(g)
    }

    pub fn remove_edge(&self, e: Edge) -> Result<SimpleGraph, GraphError> {
        let mut g = self.clone();
        g.remove(e)?;
        Ok(g)
    }

    /// Non-edges in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |a| {
            (a + 1..self.n)
                .filter(move |&b| !self.has_edge(a, b))
                .map(move |b| Edge { a, b })
        })
    }

    pub fn degree_sequence(&self) -> Result<DegreeSequence, GraphError> {
        degree_sequence(self)
    }
}

pub fn complete_graph(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            g.insert(Edge { a, b }).expect("fresh pair");
        }
    }
    g
}

pub fn complement(g: &SimpleGraph) -> SimpleGraph {
    let mut h = SimpleGraph::empty(g.n);
    for e in g.non_edges() {
        h.insert(e).expect("fresh pair");
    }
    h
}

/// `G ∪ H` where vertex `i` of `H` is relabeled to `vertex_map[i]`. Labels
/// shared with `G` denote shared vertices.
pub fn graph_union(
    g: &SimpleGraph,
    h: &SimpleGraph,
    vertex_map: &[usize],
) -> Result<SimpleGraph, GraphError> {
    if vertex_map.len() != h.n {
        return Err(GraphError::MapLengthMismatch {
            expected: h.n,
            got: vertex_map.len(),
        });
    }
    let mut seen = std::collections::HashSet::new();
    for &label in vertex_map {
        if !seen.insert(label) {
            return Err(GraphError::MapNotInjective(label));
        }
    }
    let n = vertex_map
        .iter()
        .map(|&l| l + 1)
        .max()
        .unwrap_or(0)
        .max(g.n);
    let mut out = SimpleGraph::empty(n);
    for e in g.edges() {
        out.insert(e)?;
    }
    for e in h.edges() {
        let mapped = Edge::new(vertex_map[e.a], vertex_map[e.b])?;
        if !out.has_edge(mapped.a, mapped.b) {
            out.insert(mapped)?;
        }
    }
    Ok(out)
}

/// Sorted non-increasing degrees. Isolated vertices are rejected.
pub fn degree_sequence(g: &SimpleGraph) -> Result<DegreeSequence, GraphError> {
    let degrees: Vec<i64> = g.degrees().into_iter().map(|d| d as i64).collect();
    Ok(crate::sequence::normalize(&degrees)?)
}

/// Unit-capacity residual network over split vertices: `v_in = 2v`,
/// `v_out = 2v + 1`.
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<u8>,
    adj: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(nodes: usize) -> Self {
        SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, from: usize, to: usize) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(1);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &id in &self.adj[u] {
                let w = self.head[id];
                if self.cap[id] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = id;
                    queue.push_back(w);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut v = sink;
        while v != source {
            let id = via[v];
            self.cap[id] -= 1;
            self.cap[id ^ 1] += 1;
            v = self.head[id ^ 1];
        }
        true
    }
}

/// Maximum number of pairwise internally disjoint `a`–`b` paths. A direct
/// edge `ab` counts as one path.
pub fn internally_disjoint_path_count(
    g: &SimpleGraph,
    a: usize,
    b: usize,
) -> Result<usize, GraphError> {
    for v in [a, b] {
        if v >= g.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n });
        }
    }
    if a == b {
        return Err(GraphError::SameVertex(a));
    }
    Ok(path_count_unchecked(g, a, b, usize::MAX))
}

/// Stops once `limit` paths have been found.
fn path_count_unchecked(g: &SimpleGraph, a: usize, b: usize, limit: usize) -> usize {
    let direct = usize::from(g.has_edge(a, b));
    let mut net = SplitNetwork::new(2 * g.n);
    for v in 0..g.n {
        if v != a && v != b {
            net.arc(2 * v, 2 * v + 1);
        }
    }
    for e in g.edges() {
        if (e.a == a && e.b == b) || (e.a == b && e.b == a) {
            continue;
        }
        net.arc(2 * e.a + 1, 2 * e.b);
        net.arc(2 * e.b + 1, 2 * e.a);
    }
    let (source, sink) = (2 * a + 1, 2 * b);
    let mut flow = direct;
    while flow < limit && net.augment(source, sink) {
        flow += 1;
    }
    flow
}

/// Largest k such that every vertex pair is joined by k internally
/// disjoint paths. `K_n` has connectivity `n − 1`; disconnected graphs 0.
pub fn vertex_connectivity(g: &SimpleGraph) -> usize {
    connectivity_capped(g, usize::MAX)
}

/// `min(vertex_connectivity(g), cap)`, computed without finishing flows
/// that already exceed `cap`.
pub fn connectivity_capped(g: &SimpleGraph, cap: usize) -> usize {
    let n = g.n;
    if n <= 1 {
        return 0;
    }
    if g.is_complete() {
        return (n - 1).min(cap);
    }
    let mut best = g.min_degree().min(cap);
    for a in 0..n {
        for b in a + 1..n {
            if best == 0 {
                return 0;
            }
            if !g.has_edge(a, b) {
                best = best.min(path_count_unchecked(g, a, b, best));
            }
        }
    }
    best
}

pub fn is_k_connected(g: &SimpleGraph, k: usize) -> bool {
    connectivity_capped(g, k) >= k
}
