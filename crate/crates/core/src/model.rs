//! Hypergraph data model: interned node ids, hyperedges, the node to
//! hyperedge incidence index, edge-list I/O, induced subhypergraphs and
//! subhypergraph statistics.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Dense node identifier in `[0, |V|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ordered set of nodes. Used for candidate sets and algorithm results.
pub type NodeSet = BTreeSet<NodeId>;

/// A hyperedge: sorted, duplicate-free member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    members: Vec<NodeId>,
}

impl Hyperedge {
    pub fn new(mut members: Vec<NodeId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Hyperedge { members }
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// Immutable undirected, unweighted hypergraph.
///
/// Duplicate hyperedges are kept as distinct edges, since support counts
/// hyperedges.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
    edges: Vec<Hyperedge>,
    incidence: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Builds a hypergraph over `labels.len()` nodes. Labels must be distinct
    /// and every member id must be in range.
    pub fn from_parts(labels: Vec<String>, edges: Vec<Hyperedge>) -> Result<Self> {
        let n = labels.len();
        let mut label_index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if label_index.insert(label.clone(), NodeId(i as u32)).is_some() {
                return Err(domain(format!("duplicate node label {label:?}")));
            }
        }
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e.members() {
                if v.index() >= n {
                    return Err(domain(format!("edge {i} references node {v} outside [0, {n})")));
                }
                incidence[v.index()].push(i as u32);
            }
        }
        Ok(Hypergraph { labels, label_index, edges, incidence })
    }

    /// Hypergraph whose labels are the decimal node indices.
    pub fn with_numeric_labels(node_count: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        Self::from_parts((0..node_count).map(|i| i.to_string()).collect(), edges)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.labels.len() as u32).map(NodeId)
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Hyperedge {
        &self.edges[i]
    }

    /// Indices of the hyperedges containing `v`, ascending.
    pub fn incident(&self, v: NodeId) -> &[u32] {
        &self.incidence[v.index()]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.incidence[v.index()].len()
    }

    /// Sum of all node degrees.
    pub fn total_degree(&self) -> usize {
        self.edges.iter().map(Hyperedge::cardinality).sum()
    }

    pub fn max_cardinality(&self) -> usize {
        self.edges.iter().map(Hyperedge::cardinality).max().unwrap_or(0)
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        v.index() < self.labels.len()
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if self.contains_node(v) {
            Ok(())
        } else {
            Err(domain(format!("node id {v} out of range (|V| = {})", self.node_count())))
        }
    }

    /// Labels of `nodes`, sorted lexicographically.
    pub fn sorted_labels<'a>(&'a self, nodes: impl IntoIterator<Item = &'a NodeId>) -> Vec<&'a str> {
        let mut out: Vec<&str> = nodes.into_iter().map(|&v| self.label(v)).collect();
        out.sort_unstable();
        out
    }

    /// Resolves external labels to ids.
    pub fn resolve<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<NodeSet> {
        labels
            .into_iter()
            .map(|l| {
                let l = l.as_ref();
                self.node_id(l).ok_or_else(|| domain(format!("unknown node label {l:?}")))
            })
            .collect()
    }
}

/// Incrementally interns labels and collects hyperedges.
#[derive(Default, Debug)]
pub struct HypergraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Hyperedge>,
}

impl HypergraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = NodeId(self.labels.len() as u32);
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    /// Adds one hyperedge; repeated labels collapse into one member.
    pub fn add_edge<'a>(&mut self, labels: impl IntoIterator<Item = &'a str>) -> usize {
        let members = labels.into_iter().map(|l| self.intern(l)).collect();
        self.edges.push(Hyperedge::new(members));
        self.edges.len() - 1
    }

    pub fn build(self) -> Hypergraph {
        let HypergraphBuilder { labels, index, edges } = self;
        let mut incidence = vec![Vec::new(); labels.len()];
        for (i, e) in edges.iter().enumerate() {
            for &v in e.members() {
                incidence[v.index()].push(i as u32);
            }
        }
        Hypergraph { labels, label_index: index, edges, incidence }
    }
}

/// Supported input formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    /// One hyperedge per line; labels separated by spaces, tabs or commas;
    /// `#` lines are comments.
    #[default]
    EdgeList,
}

fn is_separator(c: char) -> bool {
    c == ',' || c.is_whitespace()
}

/// Reads a hypergraph from edge-list text.
pub fn load_hypergraph<R: BufRead>(mut source: R, format: Format) -> Result<Hypergraph> {
    let Format::EdgeList = format;
    let mut builder = HypergraphBuilder::new();
    let mut buf = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if source.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = std::str::from_utf8(&buf)
            .map_err(|e| Error::Parse { line: line_no, message: format!("invalid UTF-8: {e}") })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut labels = trimmed.split(is_separator).filter(|t| !t.is_empty()).peekable();
        if labels.peek().is_none() {
            return Err(Error::Parse { line: line_no, message: "hyperedge has no node labels".into() });
        }
        builder.add_edge(labels);
    }
    Ok(builder.build())
}

pub fn load_hypergraph_str(text: &str) -> Result<Hypergraph> {
    load_hypergraph(text.as_bytes(), Format::EdgeList)
}

/// Writes one line per hyperedge, space separated, using external labels.
pub fn write_edge_list<W: Write>(graph: &Hypergraph, mut sink: W) -> Result<()> {
    for e in graph.edges() {
        let mut first = true;
        for &v in e.members() {
            if !first {
                sink.write_all(b" ")?;
            }
            sink.write_all(graph.label(v).as_bytes())?;
            first = false;
        }
        sink.write_all(b"\n")?;
    }
    Ok(())
}

/// Induced subhypergraph `G[V']` with the mapping back to the parent graph.
#[derive(Clone, Debug)]
pub struct Subhypergraph {
    pub graph: Hypergraph,
    /// `parent_nodes[i]` is the parent id of local node `i`.
    pub parent_nodes: Vec<NodeId>,
    /// `edge_origin[j]` is the parent index of local edge `j`.
    pub edge_origin: Vec<usize>,
}

/// Restricts every hyperedge to `subset` and keeps restrictions with at
/// least two members. Local ids follow ascending parent id order.
pub fn induced(graph: &Hypergraph, subset: &NodeSet) -> Result<Subhypergraph> {
    let n = graph.node_count();
    if let Some(bad) = subset.iter().find(|v| v.index() >= n) {
        return Err(domain(format!("node id {bad} out of range (|V| = {n})")));
    }
    let mut local = vec![u32::MAX; n];
    let parent_nodes: Vec<NodeId> = subset.iter().copied().collect();
    for (i, v) in parent_nodes.iter().enumerate() {
        local[v.index()] = i as u32;
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (j, e) in graph.edges().iter().enumerate() {
        let kept: Vec<NodeId> = e
            .members()
            .iter()
            .filter_map(|v| match local[v.index()] {
                u32::MAX => None,
                l => Some(NodeId(l)),
            })
            .collect();
        if kept.len() >= 2 {
            edges.push(Hyperedge { members: kept });
            edge_origin.push(j);
        }
    }
    let labels = parent_nodes.iter().map(|&v| graph.label(v).to_owned()).collect();
    let sub = Hypergraph::from_parts(labels, edges)?;
    Ok(Subhypergraph { graph: sub, parent_nodes, edge_origin })
}

/// Summary statistics of an induced subhypergraph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct SubhypergraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub avg_degree: f64,
    /// Mean support over unordered node pairs that share at least one edge.
    pub avg_support: f64,
    /// Hyperedges per node.
    pub vertex_density: f64,
}

pub fn stats(graph: &Hypergraph, subset: &NodeSet) -> Result<SubhypergraphStats> {
    let sub = induced(graph, subset)?;
    Ok(graph_stats(&sub.graph))
}

/// Statistics of the whole graph, computed on `G[V]`.
pub fn graph_stats(graph: &Hypergraph) -> SubhypergraphStats {
    let node_count = graph.node_count();
    if node_count == 0 {
        return SubhypergraphStats::default();
    }
    // induced() drops edges with fewer than two members; mirror that here so
    // callers passing a raw graph get the same numbers as stats(G, V).
    let edges: Vec<&Hyperedge> = graph.edges().iter().filter(|e| e.cardinality() >= 2).collect();
    let edge_count = edges.len();
    let degree_sum: usize = edges.iter().map(|e| e.cardinality()).sum();

    let mut pair_count = 0usize;
    let mut support_sum = 0usize;
    let mut counts = vec![0u32; node_count];
    let mut touched = Vec::new();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (i, e) in edges.iter().enumerate() {
        for &v in e.members() {
            incident[v.index()].push(i);
        }
    }
    for u in graph.nodes() {
        for &i in &incident[u.index()] {
            for &w in edges[i].members() {
                if w > u {
                    if counts[w.index()] == 0 {
                        touched.push(w);
                    }
                    counts[w.index()] += 1;
                }
            }
        }
        pair_count += touched.len();
        for w in touched.drain(..) {
            support_sum += counts[w.index()] as usize;
            counts[w.index()] = 0;
        }
    }

    SubhypergraphStats {
        node_count,
        edge_count,
        avg_degree: degree_sum as f64 / node_count as f64,
        avg_support: if pair_count == 0 { 0.0 } else { support_sum as f64 / pair_count as f64 },
        vertex_density: edge_count as f64 / node_count as f64,
    }
}
