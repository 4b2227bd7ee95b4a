//! Induce a subhypergraph on a core and report its statistics alongside the
//! whole graph's.
//!
//!     cargo run --example subhypergraph_stats -- [edge-list-file] [k] [g]

use kgcore::model::{graph_stats, load_hypergraph, Format};
use kgcore::oracle::toy_fixture;
use kgcore::{epa, induced};

fn main() -> kgcore::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let graph = match args.first() {
        Some(path) => load_hypergraph(std::io::BufReader::new(std::fs::File::open(path)?), Format::EdgeList)?,
        None => toy_fixture(),
    };
    let k = args.get(1).map_or(2, |a| a.parse().expect("k"));
    let g = args.get(2).map_or(2, |a| a.parse().expect("g"));

    println!("whole graph: {:?}", graph_stats(&graph));
    let core = epa(&graph, k, g)?;
    let sub = induced(&graph, &core)?;
    println!("({k},{g})-core: {:?}", graph_stats(&sub.graph));
    for (e, origin) in sub.graph.edges().iter().zip(&sub.edge_origin) {
        println!("  edge {origin}: {:?}", sub.graph.sorted_labels(e.members()));
    }
    Ok(())
}
