//! Seeded synthetic hypergraphs with community structure and skewed node
//! popularity, for scalability sweeps.
//!
//! Nodes are split into `community_count` contiguous communities whose
//! sizes follow a truncated power law. Each node carries a popularity weight
//! drawn from a second truncated power law. An edge draws its cardinality
//! uniformly from the configured range; with probability `1 - noise` its
//! members are sampled (weighted by popularity, without replacement) from a
//! single community picked in proportion to its size, otherwise they are
//! sampled uniformly from all nodes.

use rand::distr::{Distribution, Uniform};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Hyperedge, Hypergraph, NodeId};

/// Ratio between the largest and smallest community weight.
const COMMUNITY_SPREAD: f64 = 11.25;
/// Ratio between the largest and smallest node popularity weight.
const POPULARITY_SPREAD: f64 = 25.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenConfig {
    pub node_count: usize,
    pub edge_count: usize,
    /// Inclusive `[min, max]` hyperedge cardinality.
    pub cardinality_range: [usize; 2],
    /// Power-law exponent of node popularity.
    pub degree_exponent: f64,
    /// Power-law exponent of community sizes.
    pub community_exponent: f64,
    pub community_count: usize,
    /// Probability that an edge ignores community structure.
    pub noise: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            node_count: 10_000,
            edge_count: 10_000,
            cardinality_range: [1, 40],
            degree_exponent: 2.1,
            community_exponent: 1.7,
            community_count: 100,
            noise: 0.2,
            seed: 0,
        }
    }
}

impl GenConfig {
    /// Default shape scaled to `node_count`: one edge and 1/100 community
    /// per node.
    pub fn scaled(node_count: usize, seed: u64) -> Self {
        GenConfig {
            node_count,
            edge_count: node_count,
            community_count: (node_count / 100).max(1),
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.cardinality_range;
        let fail = |m: String| Err(Error::Config(m));
        if self.node_count == 0 || self.edge_count == 0 || self.community_count == 0 {
            return fail("node, edge and community counts must be positive".into());
        }
        if lo < 1 || hi < lo {
            return fail(format!("cardinality range [{lo}, {hi}] must satisfy 1 <= min <= max"));
        }
        if hi > self.node_count {
            return fail(format!("max cardinality {hi} exceeds node count {}", self.node_count));
        }
        if self.community_count > self.node_count {
            return fail(format!(
                "{} communities cannot be formed from {} nodes",
                self.community_count, self.node_count
            ));
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return fail(format!("noise {} outside [0, 1]", self.noise));
        }
        if !(self.degree_exponent > 0.0 && self.community_exponent > 0.0) {
            return fail("power-law exponents must be positive".into());
        }
        Ok(())
    }
}

/// Inverse-CDF sample of a power law with density proportional to
/// `x^-exponent` on `[1, spread]`.
fn truncated_power_law(u: f64, exponent: f64, spread: f64) -> f64 {
    if (exponent - 1.0).abs() < 1e-12 {
        spread.powf(u)
    } else {
        let a = 1.0 - exponent;
        (1.0 + u * (spread.powf(a) - 1.0)).powf(1.0 / a)
    }
}

/// Splits `n` nodes into `count` nonempty parts proportional to `weights`.
fn apportion(n: usize, weights: &[f64]) -> Vec<usize> {
    let count = weights.len();
    let total: f64 = weights.iter().sum();
    let spare = (n - count) as f64;
    let mut sizes: Vec<usize> = weights.iter().map(|w| 1 + (spare * w / total).floor() as usize).collect();
    let mut left = n - sizes.iter().sum::<usize>();
    // hand out the rounding remainder largest-weight first
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]));
    for &c in order.iter().cycle() {
        if left == 0 {
            break;
        }
        sizes[c] += 1;
        left -= 1;
    }
    sizes
}

/// A generated hypergraph with each node's community.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Hypergraph,
    pub community: Vec<u32>,
    pub community_sizes: Vec<usize>,
}

pub fn generate(cfg: &GenConfig) -> Result<Hypergraph> {
    generate_with_communities(cfg).map(|g| g.graph)
}

pub fn generate_with_communities(cfg: &GenConfig) -> Result<Generated> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.node_count;

    let weights: Vec<f64> = (0..cfg.community_count)
        .map(|_| truncated_power_law(rng.random(), cfg.community_exponent, COMMUNITY_SPREAD))
        .collect();
    let sizes = apportion(n, &weights);
    let mut starts = Vec::with_capacity(sizes.len());
    let mut community = Vec::with_capacity(n);
    for (c, &s) in sizes.iter().enumerate() {
        starts.push(community.len());
        community.extend(std::iter::repeat_n(c as u32, s));
    }
    let popularity: Vec<f64> =
        (0..n).map(|_| truncated_power_law(rng.random(), cfg.degree_exponent, POPULARITY_SPREAD)).collect();

    let [lo, hi] = cfg.cardinality_range;
    let cardinality = Uniform::new_inclusive(lo, hi).expect("validated range");
    let pick_community = rand::distr::weighted::WeightedIndex::new(&sizes).expect("nonempty sizes");

    let mut edges = Vec::with_capacity(cfg.edge_count);
    for _ in 0..cfg.edge_count {
        let card = cardinality.sample(&mut rng);
        let members: Vec<NodeId> = if rng.random::<f64>() < cfg.noise {
            index::sample(&mut rng, n, card).into_iter().map(|i| NodeId(i as u32)).collect()
        } else {
            let c = pick_community.sample(&mut rng);
            let (start, size) = (starts[c], sizes[c]);
            let take = card.min(size);
            index::sample_weighted(&mut rng, size, |i| popularity[start + i], take)
                .expect("positive weights")
                .into_iter()
                .map(|i| NodeId((start + i) as u32))
                .collect()
        };
        edges.push(Hyperedge::new(members));
    }

    let graph = Hypergraph::with_numeric_labels(n, edges)?;
    Ok(Generated { graph, community, community_sizes: sizes })
}
