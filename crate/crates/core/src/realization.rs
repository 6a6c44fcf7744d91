//! Explicit constructions: Harary base graphs, one-edge-at-a-time
//! augmentation chains, the witness sequence and its two realizations,
//! and a general best-effort k-connected realizer.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    complete_graph, connectivity_capped, graph_union, is_k_connected, vertex_connectivity, Edge,
    GraphError, SimpleGraph,
};
use crate::oracle::{Oracle, OracleError};
use crate::sequence::{erdos_gallai_graphic, DegreeSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("k={k} is outside 1..={max} for n={n}")]
    KOutOfRange { n: usize, k: usize, max: usize },
    #[error("target edge count {target} is outside {min}..={max}")]
    TargetOutOfRange { target: u64, min: u64, max: u64 },
    #[error("no complement edge left to add at {edges} edges")]
    AugmentationStuck { edges: usize },
    #[error("graph with {edges} edges has connectivity {connectivity}, below k={k}")]
    NotKConnected {
        edges: usize,
        connectivity: usize,
        k: usize,
    },
    #[error("n={n} is too small for k={k}; need n >= k + 3")]
    NTooSmall { n: usize, k: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Harary graph `H_{k,n}`: each vertex joined to its `⌊k/2⌋` nearest cycle
/// neighbours on each side, plus diameters when `k` is odd. When `n` and
/// `k` are both odd the diameter set wraps around once, so vertex 0 ends
/// with degree `k + 1` and the graph has `(nk + 1)/2` edges.
pub fn base_k_regular(n: usize, k: usize) -> Result<SimpleGraph, RealizationError> {
    if k < 1 || k + 1 > n {
        return Err(RealizationError::KOutOfRange {
            n,
            k,
            max: n.saturating_sub(1),
        });
    }
    let mut g = SimpleGraph::empty(n);
    for v in 0..n {
        for offset in 1..=k / 2 {
            let e = Edge::new(v, (v + offset) % n)?;
            if !g.has_edge(e.a(), e.b()) {
                g.insert(e)?;
            }
        }
    }
    if k % 2 == 1 {
        if n.is_multiple_of(2) {
            for v in 0..n / 2 {
                g.insert(Edge::new(v, v + n / 2)?)?;
            }
        } else {
            for v in 0..=(n - 1) / 2 {
                g.insert(Edge::new(v, (v + n.div_ceil(2)) % n)?)?;
            }
        }
    }
    Ok(g)
}

/// One row of an augmentation chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub sequence: DegreeSequence,
    pub epsilon: u64,
    pub graph: SimpleGraph,
}

/// Edge count of [`base_k_regular`]: `⌈nk/2⌉`.
pub fn base_edge_count(n: usize, k: usize) -> u64 {
    ((n * k) as u64).div_ceil(2)
}

/// The complement edge to add next: endpoints of smallest degree sum, then
/// smallest larger degree, then lowest label pair. Whenever two
/// non-adjacent minimum-degree vertices exist this picks such a pair.
fn next_augmenting_edge(g: &SimpleGraph) -> Option<Edge> {
    let degrees = g.degrees();
    g.non_edges().min_by_key(|e| {
        let (da, db) = (degrees[e.a()], degrees[e.b()]);
        (da + db, da.max(db))
    })
}

/// Starts from [`base_k_regular`] and adds one complement edge per step
/// until the graph has `epsilon_target` edges, re-verifying
/// k-connectivity at every step.
pub fn augment_chain(
    n: usize,
    k: usize,
    epsilon_target: u64,
) -> Result<Vec<ChainStep>, RealizationError> {
    let mut g = base_k_regular(n, k)?;
    let min = base_edge_count(n, k);
    let max = (n * (n - 1) / 2) as u64;
    if epsilon_target < min || epsilon_target > max {
        return Err(RealizationError::TargetOutOfRange {
            target: epsilon_target,
            min,
            max,
        });
    }
    let mut steps = Vec::with_capacity((epsilon_target - min + 1) as usize);
    loop {
        let kappa = connectivity_capped(&g, k);
        if kappa < k {
            return Err(RealizationError::NotKConnected {
                edges: g.edge_count(),
                connectivity: kappa,
                k,
            });
        }
        steps.push(ChainStep {
            sequence: g.degree_sequence()?,
            epsilon: g.edge_count() as u64,
            graph: g.clone(),
        });
        if g.edge_count() as u64 == epsilon_target {
            return Ok(steps);
        }
        let e = next_augmenting_edge(&g).ok_or(RealizationError::AugmentationStuck {
            edges: g.edge_count(),
        })?;
        g.insert(e)?;
    }
}

/// `{n−1 (×k−1), n−3 (×n−k−1), k, k}`.
pub fn witness_sequence(n: usize, k: usize) -> Result<DegreeSequence, RealizationError> {
    check_witness_range(n, k)?;
    let mut terms = vec![n - 1; k - 1];
    terms.extend(std::iter::repeat_n(n - 3, n - k - 1));
    terms.extend([k, k]);
    Ok(DegreeSequence::from_positive(terms))
}

fn check_witness_range(n: usize, k: usize) -> Result<(), RealizationError> {
    if k < 1 {
        return Err(RealizationError::KOutOfRange {
            n,
            k,
            max: n.saturating_sub(1),
        });
    }
    if n < k + 3 {
        return Err(RealizationError::NTooSmall { n, k });
    }
    Ok(())
}

/// Labels used by [`build_g1`] and [`build_g2`].
///
/// The shared clique is `0..k−1`; `v_n = k−1` and `v_{n−1} = k` are the two
/// degree-k vertices; the remaining block `k+1..n` holds `v_i = k+1` and
/// `v_j = k+2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessLabels {
    pub v_n: usize,
    pub v_n_minus_1: usize,
    pub v_i: usize,
    pub v_j: usize,
}

pub fn witness_labels(k: usize) -> WitnessLabels {
    WitnessLabels {
        v_n: k - 1,
        v_n_minus_1: k,
        v_i: k + 1,
        v_j: k + 2,
    }
}

/// `K_{k+1}` on `C ∪ {v_n, v_{n−1}}` glued to `K_{n−2}` on `C ∪ B` along the
/// shared clique `C` of size `k − 1`.
pub fn build_g1(n: usize, k: usize) -> Result<SimpleGraph, RealizationError> {
    check_witness_range(n, k)?;
    let small = complete_graph(k + 1);
    let large = complete_graph(n - 2);
    let mut left = SimpleGraph::empty(n);
    let left_map: Vec<usize> = (0..=k).collect();
    left = graph_union(&left, &small, &left_map)?;
    let right_map: Vec<usize> = (0..k - 1).chain(k + 1..n).collect();
    Ok(graph_union(&left, &large, &right_map)?)
}

/// [`build_g1`] with `v_n v_{n−1}` and `v_i v_j` swapped for `v_n v_i` and
/// `v_{n−1} v_j`. Every degree is preserved.
pub fn build_g2(n: usize, k: usize) -> Result<SimpleGraph, RealizationError> {
    let mut g = build_g1(n, k)?;
    let l = witness_labels(k);
    g.remove(Edge::new(l.v_n, l.v_n_minus_1)?)?;
    g.remove(Edge::new(l.v_i, l.v_j)?)?;
    g.insert(Edge::new(l.v_n, l.v_i)?)?;
    g.insert(Edge::new(l.v_n_minus_1, l.v_j)?)?;
    Ok(g)
}

/// Not k-connected, but adding any single complement edge makes it so.
pub fn is_maximally_non_k_connected(g: &SimpleGraph, k: usize) -> bool {
    if is_k_connected(g, k) {
        return false;
    }
    g.non_edges().all(|e| {
        let mut h = g.clone();
        h.insert(e).expect("non-edge");
        is_k_connected(&h, k)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Decided by exhaustive enumeration or a necessary condition.
    Exact,
    /// Havel–Hakimi followed by degree-preserving swaps.
    Heuristic,
    /// Augmentation chain from a Harary base graph.
    Chain,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Heuristic => "heuristic",
            Method::Chain => "chain",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realized {
    Found {
        graph: SimpleGraph,
        method: Method,
    },
    /// With [`Method::Heuristic`] this is not a proof of nonexistence.
    NotFound {
        method: Method,
    },
}

impl Realized {
    pub fn method(&self) -> Method {
        match self {
            Realized::Found { method, .. } | Realized::NotFound { method } => *method,
        }
    }

    pub fn graph(&self) -> Option<&SimpleGraph> {
        match self {
            Realized::Found { graph, .. } => Some(graph),
            Realized::NotFound { .. } => None,
        }
    }
}

/// Havel–Hakimi: vertex `i` receives degree `s_i`. `None` if not graphic.
pub fn havel_hakimi(s: &DegreeSequence) -> Option<SimpleGraph> {
    let n = s.len();
    let mut residual: Vec<(usize, usize)> = s.terms().iter().copied().zip(0..n).collect();
    let mut g = SimpleGraph::empty(n);
    loop {
        residual.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let (d, v) = residual[0];
        if d == 0 {
            return Some(g);
        }
        if d >= residual.len() {
            return None;
        }
        for slot in residual.iter_mut().skip(1).take(d) {
            if slot.0 == 0 {
                return None;
            }
            slot.0 -= 1;
            g.insert(Edge::new(v, slot.1).ok()?).ok()?;
        }
        residual[0].0 = 0;
    }
}

/// Swap budget for the heuristic path: `10·φ²` attempts.
pub fn swap_budget(phi: usize) -> usize {
    10 * phi * phi
}

fn component_count(g: &SimpleGraph) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Finds a k-connected simple graph with degree sequence `s`.
///
/// Within the oracle's limit the answer is exact. Beyond it a Havel–Hakimi
/// realization is improved by random degree-preserving 2-swaps
/// (deterministic seed) and the result is tagged heuristic.
pub fn realize_k_connected(
    s: &DegreeSequence,
    k: usize,
    oracle: &Oracle,
) -> Result<Realized, RealizationError> {
    if k < 1 {
        return Err(RealizationError::KOutOfRange {
            n: s.len(),
            k,
            max: s.len().saturating_sub(1),
        });
    }
    if s.len() <= oracle.limit() {
        return Ok(match oracle.find_k_connected(s, k)? {
            Some(graph) => Realized::Found {
                graph,
                method: Method::Exact,
            },
            None => Realized::NotFound {
                method: Method::Exact,
            },
        });
    }
    // Necessary conditions; failing either is a proof.
    if s.min_term() < k || !erdos_gallai_graphic(s) {
        return Ok(Realized::NotFound {
            method: Method::Exact,
        });
    }
    let mut g = havel_hakimi(s).expect("graphic sequences realize");
    let score = |g: &SimpleGraph| {
        (
            connectivity_capped(g, k),
            std::cmp::Reverse(component_count(g)),
        )
    };
    let mut current = score(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b63_6f6e);
    for _ in 0..swap_budget(s.len()) {
        if current.0 >= k {
            break;
        }
        let edges: Vec<Edge> = g.edges().collect();
        if edges.len() < 2 {
            break;
        }
        let mut pick = edges.choose_multiple(&mut rng, 2);
        let (e, f) = (*pick.next().unwrap(), *pick.next().unwrap());
        let (a, b) = (e.a(), e.b());
        let (c, d) = if rng.gen_bool(0.5) {
            (f.a(), f.b())
        } else {
            (f.b(), f.a())
        };
        if a == c || a == d || b == c || b == d || g.has_edge(a, c) || g.has_edge(b, d) {
            continue;
        }
        let mut h = g.clone();
        h.remove(e)?;
        h.remove(f)?;
        h.insert(Edge::new(a, c)?)?;
        h.insert(Edge::new(b, d)?)?;
        let next = score(&h);
        if next >= current {
            g = h;
            current = next;
        }
    }
    Ok(if current.0 >= k {
        debug_assert!(vertex_connectivity(&g) >= k);
        Realized::Found {
            graph: g,
            method: Method::Heuristic,
        }
    } else {
        Realized::NotFound {
            method: Method::Heuristic,
        }
    })
}
