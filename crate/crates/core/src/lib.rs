//! Decide, construct and audit degree sequences of k-connected simple graphs.
//!
//! - [`sequence`]: degree sequences and the arithmetic feasibility predicates.
//! - [`graph`]: simple graphs and exact Menger vertex connectivity.
//! - [`realization`]: Harary bases, augmentation chains, witness graphs.
//! - [`oracle`]: exhaustive enumeration and predicate-vs-truth audits.

#![forbid(unsafe_code)]

pub mod graph;
pub mod oracle;
pub mod realization;
pub mod sequence;

pub use graph::{
    complement, complete_graph, degree_sequence, graph_union, internally_disjoint_path_count,
    is_k_connected, vertex_connectivity, Edge, GraphError, SimpleGraph,
};
pub use oracle::{DiscrepancyReport, Oracle, OracleError, SequenceVerdict};
pub use realization::{
    augment_chain, base_k_regular, build_g1, build_g2, is_maximally_non_k_connected,
    realize_k_connected, witness_sequence, ChainStep, Method, RealizationError, Realized,
};
pub use sequence::{
    associated_pair, corollary_threshold, erdos_gallai_graphic, normalize, theorem1_check,
    theorem2_check, AssociatedPair, ConditionReport, DegreeSequence, HalfInteger, SequenceError,
};
