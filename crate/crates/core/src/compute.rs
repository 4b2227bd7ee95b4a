//! Support and g-neighbour primitives, the queue-based peeling algorithm
//! that keeps only per-node g-neighbour counts, and the baseline that keeps
//! every node's full g-neighbour map.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::mem::size_of;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::model::{Hypergraph, NodeId, NodeSet};

pub(crate) fn check_params(k: u32, g: u32) -> Result<()> {
    if k < 1 || g < 1 {
        return Err(domain(format!("k and g must be >= 1 (got k={k}, g={g})")));
    }
    Ok(())
}

/// Number of hyperedges containing both `u` and `v`.
pub fn support(graph: &Hypergraph, u: NodeId, v: NodeId) -> Result<usize> {
    graph.check_node(u)?;
    graph.check_node(v)?;
    if u == v {
        return Err(domain(format!("support of node {u} with itself is undefined")));
    }
    // both incidence lists are sorted
    let (a, b) = (graph.incident(u), graph.incident(v));
    let (mut i, mut j, mut shared) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared += 1;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(shared)
}

/// The g-neighbours of one node within a candidate set, with their
/// shared-hyperedge counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GNeighbourMap {
    pub owner: NodeId,
    pub counts: BTreeMap<NodeId, u32>,
}

impl GNeighbourMap {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Co-occurrence counts of `v` with every other member of `candidates`,
/// keeping entries with count >= `g`.
pub fn g_neighbours(graph: &Hypergraph, candidates: &NodeSet, v: NodeId, g: u32) -> Result<GNeighbourMap> {
    graph.check_node(v)?;
    if !candidates.contains(&v) {
        return Err(domain(format!("node {} is not in the candidate set", graph.label(v))));
    }
    let mut alive = vec![false; graph.node_count()];
    for &u in candidates {
        graph.check_node(u)?;
        alive[u.index()] = true;
    }
    let mut counter = NeighbourCounter::new(graph.node_count());
    let counts = counter.tally(graph, &alive, v).filter(|&(_, c)| c >= g).collect();
    Ok(GNeighbourMap { owner: v, counts })
}

/// Reusable dense scratch for counting co-occurrences of a single node.
pub(crate) struct NeighbourCounter {
    counts: Vec<u32>,
    touched: Vec<NodeId>,
}

impl NeighbourCounter {
    pub(crate) fn new(node_count: usize) -> Self {
        NeighbourCounter { counts: vec![0; node_count], touched: Vec::new() }
    }

    /// Counts shared edges between `v` and each alive node, then drains the
    /// scratch as `(node, count)` pairs.
    fn tally<'a>(
        &'a mut self,
        graph: &Hypergraph,
        alive: &[bool],
        v: NodeId,
    ) -> impl Iterator<Item = (NodeId, u32)> + 'a {
        for &ei in graph.incident(v) {
            for &w in graph.edge(ei as usize).members() {
                if w != v && alive[w.index()] {
                    let c = &mut self.counts[w.index()];
                    if *c == 0 {
                        self.touched.push(w);
                    }
                    *c += 1;
                }
            }
        }
        let counts = &mut self.counts;
        self.touched.drain(..).map(move |w| {
            let c = std::mem::take(&mut counts[w.index()]);
            (w, c)
        })
    }

    /// Writes the g-neighbours of `v` among alive nodes into `out`.
    /// Returns the number of distinct co-occurring nodes examined.
    pub(crate) fn collect(
        &mut self,
        graph: &Hypergraph,
        alive: &[bool],
        v: NodeId,
        g: u32,
        out: &mut Vec<NodeId>,
    ) -> usize {
        out.clear();
        let mut seen = 0;
        for (w, c) in self.tally(graph, alive, v) {
            seen += 1;
            if c >= g {
                out.push(w);
            }
        }
        seen
    }

    pub(crate) fn scratch_entries(&self) -> usize {
        self.counts.len()
    }
}

/// Peak auxiliary storage observed during one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MemoryReport {
    /// High-water mark of all accounted entries (counters, flags, queue
    /// slots, map entries).
    pub peak_entries: usize,
    /// High-water mark of live per-pair entries (node to neighbour maps).
    pub peak_pair_entries: usize,
    pub peak_bytes: usize,
}

/// Internal allocation accounting for algorithm-owned structures.
#[derive(Debug, Default)]
pub(crate) struct MemoryMeter {
    entries: usize,
    pair_entries: usize,
    bytes: usize,
    report: MemoryReport,
}

impl MemoryMeter {
    fn bump(&mut self) {
        let r = &mut self.report;
        r.peak_entries = r.peak_entries.max(self.entries);
        r.peak_pair_entries = r.peak_pair_entries.max(self.pair_entries);
        r.peak_bytes = r.peak_bytes.max(self.bytes);
    }

    pub(crate) fn alloc(&mut self, entries: usize, elem_bytes: usize) {
        self.entries += entries;
        self.bytes += entries * elem_bytes;
        self.bump();
    }

    pub(crate) fn free(&mut self, entries: usize, elem_bytes: usize) {
        self.entries -= entries;
        self.bytes -= entries * elem_bytes;
    }

    /// A short-lived buffer that is released before the next allocation.
    pub(crate) fn transient(&mut self, entries: usize, elem_bytes: usize) {
        self.alloc(entries, elem_bytes);
        self.free(entries, elem_bytes);
    }

    fn alloc_pairs(&mut self, entries: usize, elem_bytes: usize) {
        self.pair_entries += entries;
        self.alloc(entries, elem_bytes);
    }

    fn free_pairs(&mut self, entries: usize, elem_bytes: usize) {
        self.pair_entries -= entries;
        self.free(entries, elem_bytes);
    }

    pub(crate) fn report(&self) -> MemoryReport {
        self.report
    }
}

/// FIFO removal queue with an O(1) membership flag per node.
pub(crate) struct RemovalQueue {
    queue: VecDeque<NodeId>,
    queued: Vec<bool>,
}

impl RemovalQueue {
    pub(crate) fn new(node_count: usize) -> Self {
        RemovalQueue { queue: VecDeque::new(), queued: vec![false; node_count] }
    }

    /// Enqueues `v` unless it was queued before in this run.
    pub(crate) fn push(&mut self, v: NodeId, meter: &mut MemoryMeter) -> bool {
        if std::mem::replace(&mut self.queued[v.index()], true) {
            return false;
        }
        self.queue.push_back(v);
        meter.alloc(1, size_of::<NodeId>());
        true
    }

    pub(crate) fn pop(&mut self, meter: &mut MemoryMeter) -> Option<NodeId> {
        let v = self.queue.pop_front()?;
        meter.free(1, size_of::<NodeId>());
        Some(v)
    }

    pub(crate) fn contains(&self, v: NodeId) -> bool {
        self.queued[v.index()]
    }
}

/// Working state of one peeling run: survivor mask, per-node g-neighbour
/// counts and the removal queue. Everything here is O(|V|).
struct PeelState {
    alive: Vec<bool>,
    gcount: Vec<u32>,
    queue: RemovalQueue,
}

/// Computes the (k,g)-core by queue-based peeling, storing only the number
/// of g-neighbours of each node. A removed node's g-neighbours are recomputed
/// at dequeue time.
pub fn epa(graph: &Hypergraph, k: u32, g: u32) -> Result<NodeSet> {
    epa_with_memory(graph, k, g).map(|(core, _)| core)
}

pub fn epa_with_memory(graph: &Hypergraph, k: u32, g: u32) -> Result<(NodeSet, MemoryReport)> {
    check_params(k, g)?;
    let n = graph.node_count();
    let mut meter = MemoryMeter::default();
    let mut counter = NeighbourCounter::new(n);
    meter.alloc(counter.scratch_entries(), size_of::<u32>());

    let mut state = PeelState { alive: vec![true; n], gcount: vec![0; n], queue: RemovalQueue::new(n) };
    meter.alloc(n, size_of::<bool>());
    meter.alloc(n, size_of::<u32>());
    meter.alloc(n, size_of::<bool>());

    let mut nbrs = Vec::new();
    for v in graph.nodes() {
        let seen = counter.collect(graph, &state.alive, v, g, &mut nbrs);
        meter.transient(seen + nbrs.len(), size_of::<NodeId>());
        state.gcount[v.index()] = nbrs.len() as u32;
        if (nbrs.len() as u32) < k {
            state.queue.push(v, &mut meter);
        }
    }

    while let Some(v) = state.queue.pop(&mut meter) {
        let seen = counter.collect(graph, &state.alive, v, g, &mut nbrs);
        meter.transient(seen + nbrs.len(), size_of::<NodeId>());
        state.alive[v.index()] = false;
        for &w in &nbrs {
            if state.queue.contains(w) {
                continue;
            }
            let c = &mut state.gcount[w.index()];
            *c = c.saturating_sub(1);
            if *c < k {
                state.queue.push(w, &mut meter);
            }
        }
        state.gcount[v.index()] = 0;
    }

    let core = graph.nodes().filter(|v| state.alive[v.index()]).collect();
    Ok((core, meter.report()))
}

/// Baseline peeling that materialises the full g-neighbour map of every
/// node and deletes reciprocal entries on removal. Same result as [`epa`],
/// O(|V|^2) auxiliary space in the worst case.
pub fn naive_kg_core(graph: &Hypergraph, k: u32, g: u32) -> Result<NodeSet> {
    naive_with_memory(graph, k, g).map(|(core, _)| core)
}

pub fn naive_with_memory(graph: &Hypergraph, k: u32, g: u32) -> Result<(NodeSet, MemoryReport)> {
    check_params(k, g)?;
    let n = graph.node_count();
    let pair_bytes = size_of::<(NodeId, u32)>();
    let mut meter = MemoryMeter::default();
    let mut alive = vec![true; n];
    let mut queue = RemovalQueue::new(n);
    meter.alloc(n, size_of::<bool>());
    meter.alloc(n, size_of::<bool>());

    let mut maps: Vec<HashMap<NodeId, u32>> = Vec::with_capacity(n);
    for v in graph.nodes() {
        let mut m: HashMap<NodeId, u32> = HashMap::new();
        for &ei in graph.incident(v) {
            for &u in graph.edge(ei as usize).members() {
                if u != v {
                    *m.entry(u).or_insert(0) += 1;
                }
            }
        }
        meter.alloc_pairs(m.len(), pair_bytes);
        let before = m.len();
        m.retain(|_, c| *c >= g);
        meter.free_pairs(before - m.len(), pair_bytes);
        if (m.len() as u32) < k {
            queue.push(v, &mut meter);
        }
        maps.push(m);
    }

    while let Some(v) = queue.pop(&mut meter) {
        alive[v.index()] = false;
        let mv = std::mem::take(&mut maps[v.index()]);
        for &u in mv.keys() {
            if !alive[u.index()] {
                continue;
            }
            let mu = &mut maps[u.index()];
            if mu.remove(&v).is_some() {
                meter.free_pairs(1, pair_bytes);
            }
            if (mu.len() as u32) < k {
                queue.push(u, &mut meter);
            }
        }
        meter.free_pairs(mv.len(), pair_bytes);
    }

    let core = graph.nodes().filter(|v| alive[v.index()]).collect();
    Ok((core, meter.report()))
}

/// Which peeling implementation to measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeelAlgorithm {
    Epa,
    Naive,
}

/// High-water mark of the algorithm's own auxiliary structures, measured by
/// internal accounting.
pub fn peak_aux_memory(algorithm: PeelAlgorithm, graph: &Hypergraph, k: u32, g: u32) -> Result<MemoryReport> {
    let (_, report) = match algorithm {
        PeelAlgorithm::Epa => epa_with_memory(graph, k, g)?,
        PeelAlgorithm::Naive => naive_with_memory(graph, k, g)?,
    };
    Ok(report)
}
