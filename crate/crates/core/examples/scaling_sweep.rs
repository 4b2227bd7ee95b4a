//! Runtime and accounted memory of (5,5)-core computation on synthetic
//! hypergraphs of growing size.
//!
//!     cargo run --release --example scaling_sweep -- 10000 20000 40000 80000

use std::time::Instant;

use kgcore::compute::epa_with_memory;
use kgcore::{generate, GenConfig};

fn main() -> kgcore::Result<()> {
    let mut sizes: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("node count")).collect();
    if sizes.is_empty() {
        sizes = vec![10_000, 20_000, 40_000, 80_000];
    }
    println!("{:>8} {:>8} {:>10} {:>12} {:>8}", "nodes", "edges", "wall_ms", "peak_bytes", "core");
    for n in sizes {
        let graph = generate(&GenConfig::scaled(n, 1))?;
        let start = Instant::now();
        let (core, mem) = epa_with_memory(&graph, 5, 5)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        println!("{n:>8} {:>8} {ms:>10.1} {:>12} {:>8}", graph.edge_count(), mem.peak_bytes, core.len());
    }
    Ok(())
}
