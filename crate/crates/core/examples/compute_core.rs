//! Compute a single (k,g)-core of the toy hypergraph with both peeling
//! implementations.
//!
//!     cargo run --example compute_core -- 2 2

use kgcore::compute::{epa_with_memory, naive_with_memory};
use kgcore::oracle::toy_fixture;
use kgcore::{g_neighbours, stats, support, NodeSet};

fn main() -> kgcore::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("k and g are integers"));
    let k = args.next().unwrap_or(2);
    let g = args.next().unwrap_or(2);

    let graph = toy_fixture();
    let id = |l: &str| graph.node_id(l).unwrap();
    println!("s(x1,x3) = {}", support(&graph, id("x1"), id("x3"))?);
    println!("s(x8,x9) = {}", support(&graph, id("x8"), id("x9"))?);

    let all: NodeSet = graph.nodes().collect();
    for v in graph.nodes() {
        let n = g_neighbours(&graph, &all, v, g)?;
        println!("{:>4}: {} {g}-neighbours", graph.label(v), n.len());
    }

    let (core, fast) = epa_with_memory(&graph, k, g)?;
    let (same, slow) = naive_with_memory(&graph, k, g)?;
    assert_eq!(core, same);
    println!("({k},{g})-core: {:?}", graph.sorted_labels(&core));
    println!("stats: {:?}", stats(&graph, &core)?);
    println!("peak bytes: epa {} / naive {}", fast.peak_bytes, slow.peak_bytes);
    Ok(())
}
