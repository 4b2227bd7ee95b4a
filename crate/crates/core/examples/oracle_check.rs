//! Cross-check the fast algorithms against the brute-force oracle on random
//! small hypergraphs.
//!
//!     cargo run --example oracle_check -- 500

use kgcore::oracle::{oracle_kg_core, random_hypergraph, RandomShape};
use kgcore::{bca, epa, naive_kg_core};

fn main() {
    let instances: u64 = std::env::args().nth(1).map_or(100, |a| a.parse().expect("instance count"));
    let mut mismatches = 0;
    for seed in 0..instances {
        let graph = random_hypergraph(seed, RandomShape::default());
        let skyline = bca(&graph).skyline;
        for k in 1..=6 {
            for g in 1..=6 {
                let want = oracle_kg_core(&graph, k, g).unwrap();
                let ok = epa(&graph, k, g).unwrap() == want
                    && naive_kg_core(&graph, k, g).unwrap() == want
                    && skyline.query_core(k, g).unwrap() == want;
                if !ok {
                    mismatches += 1;
                    eprintln!("seed {seed}: mismatch at ({k},{g})");
                }
            }
        }
    }
    println!("{instances} instances x 36 cells: {mismatches} mismatches");
    if mismatches > 0 {
        std::process::exit(1);
    }
}
