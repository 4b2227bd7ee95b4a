//! Accounted peak auxiliary memory of the count-only peeling algorithm
//! versus the baseline that stores every g-neighbour map.
//!
//!     cargo run --release --example memory_contrast

use kgcore::{generate, peak_aux_memory, GenConfig, PeelAlgorithm};

fn main() -> kgcore::Result<()> {
    let cases = [
        (
            "dense",
            GenConfig {
                node_count: 1_000,
                edge_count: 60,
                cardinality_range: [400, 600],
                community_count: 1,
                noise: 1.0,
                ..Default::default()
            },
        ),
        (
            "sparse",
            GenConfig {
                node_count: 5_000,
                edge_count: 4_000,
                cardinality_range: [2, 4],
                community_count: 50,
                ..Default::default()
            },
        ),
    ];
    println!("{:<8} {:>12} {:>12} {:>14} {:>8}", "case", "epa bytes", "naive bytes", "naive pairs", "ratio");
    for (name, cfg) in cases {
        let graph = generate(&cfg)?;
        let fast = peak_aux_memory(PeelAlgorithm::Epa, &graph, 5, 1)?;
        let slow = peak_aux_memory(PeelAlgorithm::Naive, &graph, 5, 1)?;
        println!(
            "{name:<8} {:>12} {:>12} {:>14} {:>7.1}x",
            fast.peak_bytes,
            slow.peak_bytes,
            slow.peak_pair_entries,
            slow.peak_bytes as f64 / fast.peak_bytes as f64
        );
    }
    Ok(())
}
