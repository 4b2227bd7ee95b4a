//! Decompose a hypergraph into every (k,g)-core, inspect each node's maximal
//! coreness pairs, and answer queries from a saved index.
//!
//!     cargo run --example decompose_index [edge-list-file]

use kgcore::model::{load_hypergraph, Format};
use kgcore::oracle::toy_fixture;
use kgcore::{bca, load_index, save_index, CorenessIndex};

fn main() -> kgcore::Result<()> {
    let graph = match std::env::args().nth(1) {
        Some(path) => load_hypergraph(std::io::BufReader::new(std::fs::File::open(path)?), Format::EdgeList)?,
        None => toy_fixture(),
    };

    let d = bca(&graph);
    println!("{} nonempty cores, k* = {}, g* = {}", d.raw.len(), d.k_max(), d.g_max());
    for (key, core) in &d.raw {
        println!("  ({},{}) -> {} nodes", key.k, key.g, core.len());
    }
    for (v, pairs) in d.skyline.iter().take(20) {
        let shown: Vec<String> = pairs.iter().map(|p| format!("({},{})", p.k, p.g)).collect();
        println!("  {:>6}: {}", graph.label(v), shown.join(" "));
    }

    if let Some(v) = graph.nodes().next() {
        let pr = d.skyline.coreness_projections(v)?;
        println!("{}: k-coreness {:?}, g-coreness {:?}", graph.label(v), pr.k_coreness, pr.g_coreness);
    }

    let mut bytes = Vec::new();
    save_index(&CorenessIndex::new(&graph, d.skyline)?, &mut bytes)?;
    let index = load_index(bytes.as_slice())?;
    println!("index: {} bytes", bytes.len());
    println!("(2,2) from index: {:?}", index.query_labels(2, 2)?);
    Ok(())
}
