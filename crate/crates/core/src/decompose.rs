//! Full (k,g)-core decomposition with bucketed peeling, reduction of the
//! raw cores to per-node maximal (k,g) pairs, and a queryable index over
//! those pairs.
//!
//! For every `g` the g-neighbour counts are rebuilt from scratch and nodes
//! are grouped into buckets by count. `k` then rises from 1 while survivors
//! remain; at each level the buckets below `k` are swept into the removal
//! queue and peeling proceeds as in [`crate::compute::epa`], moving
//! decremented neighbours between buckets. The survivors after each level
//! form the (k,g)-core.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::compute::{check_params, MemoryMeter, NeighbourCounter, RemovalQueue};
use crate::error::{domain, Error, Result};
use crate::model::{Hypergraph, NodeId, NodeSet};

/// Grid coordinate of a raw core. Orders by `g`, then `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoreKey {
    pub g: u32,
    pub k: u32,
}

/// One maximal (k,g) pair of a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CorenessPair {
    pub k: u32,
    pub g: u32,
}

impl CorenessPair {
    /// True when this pair is at least `(k, g)` in both coordinates.
    #[inline]
    pub fn dominates(self, k: u32, g: u32) -> bool {
        self.k >= k && self.g >= g
    }
}

/// Nodes grouped by their current g-neighbour count.
#[derive(Clone, Debug)]
pub struct BucketTable {
    buckets: Vec<Vec<NodeId>>,
    key: Vec<u32>,
    pos: Vec<usize>,
    len: usize,
}

const ABSENT: u32 = u32::MAX;

impl BucketTable {
    pub fn new(node_count: usize) -> Self {
        BucketTable { buckets: Vec::new(), key: vec![ABSENT; node_count], pos: vec![0; node_count], len: 0 }
    }

    pub fn insert(&mut self, v: NodeId, key: u32) {
        debug_assert_eq!(self.key[v.index()], ABSENT);
        let k = key as usize;
        if self.buckets.len() <= k {
            self.buckets.resize_with(k + 1, Vec::new);
        }
        self.pos[v.index()] = self.buckets[k].len();
        self.buckets[k].push(v);
        self.key[v.index()] = key;
        self.len += 1;
    }

    pub fn remove(&mut self, v: NodeId) -> Option<u32> {
        let key = std::mem::replace(&mut self.key[v.index()], ABSENT);
        if key == ABSENT {
            return None;
        }
        let bucket = &mut self.buckets[key as usize];
        let p = self.pos[v.index()];
        bucket.swap_remove(p);
        if let Some(&moved) = bucket.get(p) {
            self.pos[moved.index()] = p;
        }
        self.len -= 1;
        Some(key)
    }

    pub fn relocate(&mut self, v: NodeId, key: u32) {
        self.remove(v);
        self.insert(v, key);
    }

    pub fn key_of(&self, v: NodeId) -> Option<u32> {
        match self.key[v.index()] {
            ABSENT => None,
            k => Some(k),
        }
    }

    pub fn bucket(&self, key: u32) -> &[NodeId] {
        self.buckets.get(key as usize).map_or(&[], Vec::as_slice)
    }

    /// Largest key with a nonempty bucket.
    pub fn max_key(&self) -> Option<u32> {
        self.buckets.iter().rposition(|b| !b.is_empty()).map(|k| k as u32)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Per-node maximal, mutually non-dominating (k,g) pairs, sorted by
/// ascending `k` (hence descending `g`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorenessSkyline {
    pairs: Vec<Vec<CorenessPair>>,
}

/// k-coreness and g-coreness of a single node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorenessProjections {
    /// `k -> ` largest `g'` with the node in the (k,g')-core.
    pub k_coreness: BTreeMap<u32, u32>,
    /// `g -> ` largest `k'` with the node in the (k',g)-core.
    pub g_coreness: BTreeMap<u32, u32>,
}

impl CorenessSkyline {
    /// Wraps per-node pair lists; each list is sorted by `k`.
    pub fn from_pairs(mut pairs: Vec<Vec<CorenessPair>>) -> Self {
        for p in &mut pairs {
            p.sort_unstable();
        }
        CorenessSkyline { pairs }
    }

    pub fn node_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self, v: NodeId) -> &[CorenessPair] {
        &self.pairs[v.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &[CorenessPair])> {
        self.pairs.iter().enumerate().map(|(i, p)| (NodeId(i as u32), p.as_slice()))
    }

    /// Checks positivity, ordering and pairwise non-domination.
    pub fn validate(&self) -> Result<()> {
        for (v, pairs) in self.iter() {
            for p in pairs {
                if p.k == 0 || p.g == 0 {
                    return Err(Error::Validation(format!("node {v}: pair ({},{}) is not positive", p.k, p.g)));
                }
            }
            for w in pairs.windows(2) {
                let (a, b) = (w[0], w[1]);
                if a.dominates(b.k, b.g) || b.dominates(a.k, a.g) {
                    return Err(Error::Validation(format!(
                        "node {v}: pair ({},{}) and ({},{}) dominate one another",
                        a.k, a.g, b.k, b.g
                    )));
                }
                if a.k > b.k {
                    return Err(Error::Validation(format!("node {v}: pairs not sorted by k")));
                }
            }
        }
        Ok(())
    }

    /// Nodes of the (k,g)-core: those with a skyline pair dominating `(k, g)`.
    pub fn query_core(&self, k: u32, g: u32) -> Result<NodeSet> {
        check_params(k, g)?;
        Ok(self.iter().filter(|(_, pairs)| pairs.iter().any(|p| p.dominates(k, g))).map(|(v, _)| v).collect())
    }

    pub fn coreness_projections(&self, v: NodeId) -> Result<CorenessProjections> {
        let pairs = self.pairs.get(v.index()).ok_or_else(|| domain(format!("node id {v} is not indexed")))?;
        let mut out = CorenessProjections::default();
        for p in pairs {
            for k in 1..=p.k {
                let e = out.k_coreness.entry(k).or_insert(0);
                *e = (*e).max(p.g);
            }
            for g in 1..=p.g {
                let e = out.g_coreness.entry(g).or_insert(0);
                *e = (*e).max(p.k);
            }
        }
        Ok(out)
    }

    pub fn k_max(&self) -> u32 {
        self.pairs.iter().flatten().map(|p| p.k).max().unwrap_or(0)
    }

    pub fn g_max(&self) -> u32 {
        self.pairs.iter().flatten().map(|p| p.g).max().unwrap_or(0)
    }
}

/// All nonempty raw cores and the skyline derived from them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionResult {
    pub raw: BTreeMap<CoreKey, NodeSet>,
    pub skyline: CorenessSkyline,
}

impl DecompositionResult {
    pub fn core(&self, k: u32, g: u32) -> Option<&NodeSet> {
        self.raw.get(&CoreKey { k, g })
    }

    /// Largest k with a nonempty core.
    pub fn k_max(&self) -> u32 {
        self.raw.keys().map(|c| c.k).max().unwrap_or(0)
    }

    /// Largest g with a nonempty core.
    pub fn g_max(&self) -> u32 {
        self.raw.keys().map(|c| c.g).max().unwrap_or(0)
    }

    /// JSON object from `"k,g"` keys (ascending g, then k) to sorted label
    /// arrays.
    pub fn write_cores_json<W: Write>(&self, graph: &Hypergraph, sink: W) -> Result<()> {
        struct Cores<'a>(&'a DecompositionResult, &'a Hypergraph);
        impl Serialize for Cores<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.raw.len()))?;
                for (key, nodes) in &self.0.raw {
                    map.serialize_entry(&format!("{},{}", key.k, key.g), &self.1.sorted_labels(nodes))?;
                }
                map.end()
            }
        }
        serde_json::to_writer_pretty(sink, &Cores(self, graph))?;
        Ok(())
    }
}

/// Decomposes `graph` into every nonempty (k,g)-core and derives each
/// node's maximal coreness pairs.
pub fn bca(graph: &Hypergraph) -> DecompositionResult {
    let n = graph.node_count();
    let mut raw = BTreeMap::new();
    let mut counter = NeighbourCounter::new(n);
    let mut meter = MemoryMeter::default();
    let mut nbrs = Vec::new();

    for g in 1u32.. {
        let mut alive = vec![true; n];
        let mut gcount = vec![0u32; n];
        let mut buckets = BucketTable::new(n);
        for v in graph.nodes() {
            counter.collect(graph, &alive, v, g, &mut nbrs);
            gcount[v.index()] = nbrs.len() as u32;
            buckets.insert(v, nbrs.len() as u32);
        }
        // Bucket 0 holds every node without a g-neighbour; once it holds all
        // nodes, every core at this g and above is empty.
        if buckets.max_key().unwrap_or(0) == 0 {
            break;
        }

        let mut queue = RemovalQueue::new(n);
        let mut survivors = n;
        let mut swept = 0u32;
        let mut k = 0u32;
        while survivors > 0 {
            k += 1;
            // buckets below `swept` were emptied at earlier levels
            for key in swept..k {
                for &v in buckets.bucket(key).to_vec().iter() {
                    queue.push(v, &mut meter);
                }
            }
            swept = k;

            while let Some(v) = queue.pop(&mut meter) {
                counter.collect(graph, &alive, v, g, &mut nbrs);
                alive[v.index()] = false;
                survivors -= 1;
                buckets.remove(v);
                for &w in &nbrs {
                    if queue.contains(w) {
                        continue;
                    }
                    let c = gcount[w.index()].saturating_sub(1);
                    gcount[w.index()] = c;
                    buckets.relocate(w, c);
                    if c < k {
                        queue.push(w, &mut meter);
                    }
                }
            }

            if survivors > 0 {
                let core: NodeSet = graph.nodes().filter(|v| alive[v.index()]).collect();
                raw.insert(CoreKey { k, g }, core);
            }
        }
    }

    let skyline = deduplicate(&raw, n);
    DecompositionResult { raw, skyline }
}

/// Keeps, for each node, only the (k,g) pairs whose core contains it while
/// neither the (k+1,g)- nor the (k,g+1)-core does. Missing keys count as
/// empty cores.
pub fn deduplicate(raw: &BTreeMap<CoreKey, NodeSet>, node_count: usize) -> CorenessSkyline {
    let empty = NodeSet::new();
    let mut pairs = vec![Vec::new(); node_count];
    for (&CoreKey { k, g }, core) in raw {
        let up_k = raw.get(&CoreKey { k: k + 1, g }).unwrap_or(&empty);
        let up_g = raw.get(&CoreKey { k, g: g + 1 }).unwrap_or(&empty);
        for &v in core {
            if !up_k.contains(&v) && !up_g.contains(&v) {
                pairs[v.index()].push(CorenessPair { k, g });
            }
        }
    }
    CorenessSkyline::from_pairs(pairs)
}

/// Current on-disk index format version.
pub const INDEX_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
struct IndexFile {
    version: u64,
    labels: Vec<String>,
    skylines: Vec<Vec<[u32; 2]>>,
}

/// A coreness skyline paired with the external labels of its nodes. Answers
/// core queries without the hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorenessIndex {
    pub labels: Vec<String>,
    pub skyline: CorenessSkyline,
}

impl CorenessIndex {
    pub fn new(graph: &Hypergraph, skyline: CorenessSkyline) -> Result<Self> {
        if skyline.node_count() != graph.node_count() {
            return Err(domain(format!(
                "skyline covers {} nodes, graph has {}",
                skyline.node_count(),
                graph.node_count()
            )));
        }
        Ok(CorenessIndex { labels: graph.labels().to_vec(), skyline })
    }

    /// Sorted labels of the (k,g)-core.
    pub fn query_labels(&self, k: u32, g: u32) -> Result<Vec<&str>> {
        let mut out: Vec<&str> =
            self.skyline.query_core(k, g)?.into_iter().map(|v| self.labels[v.index()].as_str()).collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label).map(|i| NodeId(i as u32))
    }
}

pub fn save_index<W: Write>(index: &CorenessIndex, sink: W) -> Result<()> {
    let file = IndexFile {
        version: INDEX_VERSION,
        labels: index.labels.clone(),
        skylines: index.skyline.pairs.iter().map(|ps| ps.iter().map(|p| [p.k, p.g]).collect()).collect(),
    };
    serde_json::to_writer(sink, &file)?;
    Ok(())
}

pub fn load_index<R: Read>(source: R) -> Result<CorenessIndex> {
    let file: IndexFile = serde_json::from_reader(source)?;
    if file.version != INDEX_VERSION {
        return Err(Error::Version { found: file.version, expected: INDEX_VERSION });
    }
    if file.labels.len() != file.skylines.len() {
        return Err(Error::Validation(format!("{} labels but {} skylines", file.labels.len(), file.skylines.len())));
    }
    let pairs: Vec<Vec<CorenessPair>> =
        file.skylines.into_iter().map(|ps| ps.into_iter().map(|[k, g]| CorenessPair { k, g }).collect()).collect();
    let skyline = CorenessSkyline { pairs };
    skyline.validate()?;
    Ok(CorenessIndex { labels: file.labels, skyline })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::load_hypergraph_str;
    use crate::oracle::toy_fixture;

    fn p(k: u32, g: u32) -> CorenessPair {
        CorenessPair { k, g }
    }

    fn labels(g: &Hypergraph, set: &NodeSet) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|&x| g.label(x).to_owned()).collect();
        v.sort_by_key(|s| s[1..].parse::<u32>().unwrap());
        v
    }

    fn xs(ids: &[u32]) -> Vec<String> {
        ids.iter().map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn bucket_table_moves_nodes() {
        let mut t = BucketTable::new(4);
        for i in 0..4 {
            t.insert(NodeId(i), 2);
        }
        t.relocate(NodeId(1), 1);
        t.remove(NodeId(0));
        assert_eq!(t.len(), 3);
        assert_eq!(t.key_of(NodeId(1)), Some(1));
        assert_eq!(t.key_of(NodeId(0)), None);
        let mut b2 = t.bucket(2).to_vec();
        b2.sort();
        assert_eq!(b2, vec![NodeId(2), NodeId(3)]);
        assert_eq!(t.max_key(), Some(2));
        assert_eq!(t.remove(NodeId(0)), None);
    }

    #[test]
    fn bca_raw_cores_on_the_toy_fixture() {
        let g = toy_fixture();
        let d = bca(&g);
        let got: Vec<((u32, u32), Vec<String>)> =
            d.raw.iter().map(|(key, c)| ((key.k, key.g), labels(&g, c))).collect();
        let all: Vec<u32> = (1..=11).collect();
        let want = vec![
            ((1, 1), xs(&all)),
            ((2, 1), xs(&all)),
            ((3, 1), xs(&all[..10])),
            ((4, 1), xs(&[6, 7, 8, 9, 10])),
            ((1, 2), xs(&[1, 3, 4, 6, 7, 8, 9])),
            ((2, 2), xs(&[1, 3, 4, 6, 7, 8])),
        ];
        assert_eq!(got, want);
        assert_eq!((d.k_max(), d.g_max()), (4, 2));
    }

    #[test]
    fn bca_skylines_on_the_toy_fixture() {
        let g = toy_fixture();
        let d = bca(&g);
        let sky = |l: &str| d.skyline.pairs(g.node_id(l).unwrap()).to_vec();
        for l in ["x1", "x3", "x4"] {
            assert_eq!(sky(l), vec![p(2, 2), p(3, 1)]);
        }
        for l in ["x2", "x5"] {
            assert_eq!(sky(l), vec![p(3, 1)]);
        }
        for l in ["x6", "x7", "x8"] {
            assert_eq!(sky(l), vec![p(2, 2), p(4, 1)]);
        }
        assert_eq!(sky("x9"), vec![p(1, 2), p(4, 1)]);
        assert_eq!(sky("x10"), vec![p(4, 1)]);
        assert_eq!(sky("x11"), vec![p(2, 1)]);
    }

    #[test]
    fn bca_without_pairs_is_empty() {
        let g = load_hypergraph_str("a\nb\nc\n").unwrap();
        let d = bca(&g);
        assert!(d.raw.is_empty());
        assert!(d.skyline.iter().all(|(_, ps)| ps.is_empty()));
        assert!(bca(&load_hypergraph_str("").unwrap()).raw.is_empty());
    }

    #[test]
    fn deduplicate_single_key() {
        let raw: BTreeMap<CoreKey, NodeSet> =
            [(CoreKey { k: 1, g: 1 }, [NodeId(0), NodeId(1)].into_iter().collect())].into();
        let s = deduplicate(&raw, 2);
        assert_eq!(s.pairs(NodeId(0)), &[p(1, 1)]);
        assert_eq!(s.pairs(NodeId(1)), &[p(1, 1)]);
    }

    #[test]
    fn query_core_on_the_toy_index() {
        let g = toy_fixture();
        let s = bca(&g).skyline;
        assert_eq!(labels(&g, &s.query_core(2, 2).unwrap()), xs(&[1, 3, 4, 6, 7, 8]));
        assert!(s.query_core(5, 1).unwrap().is_empty());
        assert_eq!(s.query_core(1, 1).unwrap().len(), 11);
        assert!(matches!(s.query_core(0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn projections_follow_dominance() {
        let g = toy_fixture();
        let s = bca(&g).skyline;
        let x9 = s.coreness_projections(g.node_id("x9").unwrap()).unwrap();
        assert_eq!(x9.g_coreness, [(1, 4), (2, 1)].into());
        assert_eq!(x9.k_coreness, [(1, 2), (2, 1), (3, 1), (4, 1)].into());
        let x11 = s.coreness_projections(g.node_id("x11").unwrap()).unwrap();
        assert_eq!(x11.k_coreness, [(1, 1), (2, 1)].into());
        assert!(matches!(s.coreness_projections(NodeId(40)), Err(Error::Domain(_))));

        let single = CorenessSkyline::from_pairs(vec![vec![p(3, 2)]]);
        let pr = single.coreness_projections(NodeId(0)).unwrap();
        assert_eq!(pr.k_coreness, [(1, 2), (2, 2), (3, 2)].into());
    }

    #[test]
    fn index_round_trip() {
        let g = toy_fixture();
        let idx = CorenessIndex::new(&g, bca(&g).skyline).unwrap();
        let mut buf = Vec::new();
        save_index(&idx, &mut buf).unwrap();
        let back = load_index(buf.as_slice()).unwrap();
        assert_eq!(back, idx);
        assert_eq!(back.query_labels(2, 2).unwrap(), vec!["x1", "x3", "x4", "x6", "x7", "x8"]);
    }

    #[test]
    fn index_file_layout() {
        let g = load_hypergraph_str("a b\n").unwrap();
        let idx = CorenessIndex::new(&g, bca(&g).skyline).unwrap();
        let mut buf = Vec::new();
        save_index(&idx, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), r#"{"version":1,"labels":["a","b"],"skylines":[[[1,1]],[[1,1]]]}"#);
    }

    #[test]
    fn index_load_errors() {
        let truncated = r#"{"version":1,"labels":["a"],"skyl"#;
        assert!(matches!(load_index(truncated.as_bytes()), Err(Error::Json(_))));
        let v2 = r#"{"version":2,"labels":[],"skylines":[]}"#;
        assert!(matches!(load_index(v2.as_bytes()), Err(Error::Version { found: 2, .. })));
        let dominated = r#"{"version":1,"labels":["a"],"skylines":[[[1,1],[2,2]]]}"#;
        assert!(matches!(load_index(dominated.as_bytes()), Err(Error::Validation(_))));
        let ragged = r#"{"version":1,"labels":["a","b"],"skylines":[[]]}"#;
        assert!(matches!(load_index(ragged.as_bytes()), Err(Error::Validation(_))));
        let zero = r#"{"version":1,"labels":["a"],"skylines":[[[0,3]]]}"#;
        assert!(matches!(load_index(zero.as_bytes()), Err(Error::Validation(_))));
    }

    #[test]
    fn cores_json_uses_label_arrays() {
        let g = toy_fixture();
        let mut buf = Vec::new();
        bca(&g).write_cores_json(&g, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["2,2"], serde_json::json!(["x1", "x3", "x4", "x6", "x7", "x8"]));
        assert_eq!(v.as_object().unwrap().len(), 6);
    }
}
