//! (k,g)-cores of hypergraphs.
//!
//! A (k,g)-core is the maximal node set in which every node has at least `k`
//! neighbours that it shares at least `g` hyperedges with, counting only
//! hyperedges restricted to the set. This crate provides:
//!
//! - [`model`]: the hypergraph type, edge-list I/O, induced subhypergraphs
//!   and their statistics;
//! - [`compute`]: support and g-neighbour primitives, the count-only peeling
//!   algorithm [`compute::epa`] and the map-based baseline
//!   [`compute::naive_kg_core`], both with auxiliary-memory accounting;
//! - [`decompose`]: bucketed decomposition into every (k,g)-core
//!   ([`decompose::bca`]), per-node maximal coreness pairs, and a persisted
//!   index that answers core queries without the hypergraph;
//! - [`oracle`]: brute-force reference implementations and the toy fixture;
//! - [`generator`]: seeded synthetic hypergraphs with community structure;
//! - [`cli`]: the `kgcore` command-line front end.

pub mod cli;
pub mod compute;
pub mod decompose;
pub mod error;
pub mod generator;
pub mod model;
pub mod oracle;

pub use compute::{epa, g_neighbours, naive_kg_core, peak_aux_memory, support, MemoryReport, PeelAlgorithm};
pub use decompose::{
    bca, deduplicate, load_index, save_index, CorenessIndex, CorenessPair, CorenessSkyline, DecompositionResult,
};
pub use error::{Error, Result};
pub use generator::{generate, GenConfig};
pub use model::{induced, load_hypergraph, stats, Hypergraph, NodeId, NodeSet, SubhypergraphStats};
