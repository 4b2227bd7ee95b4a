//! Brute-force reference implementations and the 11-node toy fixture.
//!
//! Nothing here shares code with the fast paths: supports are recomputed
//! from scratch on every pass from the restricted edge lists, violators are
//! deleted simultaneously, and skylines are derived by testing maximality of
//! each pair directly.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::compute::check_params;
use crate::decompose::{CoreKey, CorenessPair, CorenessSkyline, DecompositionResult};
use crate::error::Result;
use crate::model::{load_hypergraph_str, Hyperedge, Hypergraph, NodeId, NodeSet};

/// Edge-list text of the toy fixture: 11 nodes `x1..x11`, 5 hyperedges.
pub const TOY_FIXTURE: &str = include_str!("../data/toy.txt");

pub fn toy_fixture() -> Hypergraph {
    load_hypergraph_str(TOY_FIXTURE).expect("toy fixture parses")
}

/// Number of g-neighbours of every survivor, from an n x n support matrix
/// rebuilt over the survivor-restricted edges.
fn gneighbour_counts(graph: &Hypergraph, survivors: &[bool], g: u32) -> Vec<u32> {
    let n = graph.node_count();
    let mut support = vec![0u32; n * n];
    for e in graph.edges() {
        let kept: Vec<usize> = e.members().iter().map(|v| v.index()).filter(|&v| survivors[v]).collect();
        if kept.len() < 2 {
            continue;
        }
        for &a in &kept {
            for &b in &kept {
                if a != b {
                    support[a * n + b] += 1;
                }
            }
        }
    }
    (0..n).map(|a| (0..n).filter(|&b| support[a * n + b] >= g).count() as u32).collect()
}

/// (k,g)-core as the fixpoint of simultaneous deletion of every node with
/// fewer than `k` g-neighbours.
pub fn oracle_kg_core(graph: &Hypergraph, k: u32, g: u32) -> Result<NodeSet> {
    check_params(k, g)?;
    let n = graph.node_count();
    let mut survivors = vec![true; n];
    loop {
        let counts = gneighbour_counts(graph, &survivors, g);
        let violators: Vec<usize> = (0..n).filter(|&v| survivors[v] && counts[v] < k).collect();
        if violators.is_empty() {
            break;
        }
        for v in violators {
            survivors[v] = false;
        }
    }
    Ok((0..n).filter(|&v| survivors[v]).map(|v| NodeId(v as u32)).collect())
}

/// Every nonempty (k,g)-core, found by sweeping the grid until cores are
/// empty in both directions, plus skylines from per-node maximality tests.
pub fn oracle_decompose(graph: &Hypergraph) -> DecompositionResult {
    let mut raw = BTreeMap::new();
    for g in 1u32.. {
        if oracle_kg_core(graph, 1, g).expect("valid params").is_empty() {
            break;
        }
        for k in 1u32.. {
            let core = oracle_kg_core(graph, k, g).expect("valid params");
            if core.is_empty() {
                break;
            }
            raw.insert(CoreKey { k, g }, core);
        }
    }

    let in_core = |v: NodeId, k: u32, g: u32| raw.get(&CoreKey { k, g }).is_some_and(|c| c.contains(&v));
    let mut pairs = vec![Vec::new(); graph.node_count()];
    for v in graph.nodes() {
        for (key, core) in &raw {
            if !core.contains(&v) {
                continue;
            }
            let CoreKey { k, g } = *key;
            if !in_core(v, k + 1, g) && !in_core(v, k, g + 1) {
                pairs[v.index()].push(CorenessPair { k, g });
            }
        }
        pairs[v.index()].sort_unstable_by_key(|p| p.k);
    }
    let skyline = CorenessSkyline::from_pairs(pairs);
    DecompositionResult { raw, skyline }
}

/// Shape limits for [`random_hypergraph`].
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_nodes: usize,
    pub max_edges: usize,
    pub max_cardinality: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape { max_nodes: 40, max_edges: 60, max_cardinality: 8 }
    }
}

/// Small random hypergraph for oracle cross-checks: node and edge counts
/// uniform up to the limits, edge cardinality uniform in
/// `[2, max_cardinality]`, members drawn uniformly without replacement.
pub fn random_hypergraph(seed: u64, shape: RandomShape) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=shape.max_nodes.max(2));
    let m = rng.random_range(1..=shape.max_edges.max(1));
    let max_card = shape.max_cardinality.clamp(2, n);
    let edges = (0..m)
        .map(|_| {
            let card = rng.random_range(2..=max_card);
            let members = rand::seq::index::sample(&mut rng, n, card).into_iter().map(|i| NodeId(i as u32)).collect();
            Hyperedge::new(members)
        })
        .collect();
    Hypergraph::with_numeric_labels(n, edges).expect("ids in range")
}
