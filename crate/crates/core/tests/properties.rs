use std::collections::BTreeSet;

use kgcore::decompose::CoreKey;
use kgcore::model::{induced, load_hypergraph_str, write_edge_list, Hyperedge};
use kgcore::oracle::oracle_kg_core;
use kgcore::{bca, epa, g_neighbours, naive_kg_core, Hypergraph, NodeId, NodeSet};
use proptest::prelude::*;

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=12).prop_flat_map(|n| {
        let edge = prop::collection::btree_set(0..n as u32, 1..=n.min(6));
        prop::collection::vec(edge, 0..=14).prop_map(move |edges| {
            let edges = edges.into_iter().map(|e| Hyperedge::new(e.into_iter().map(NodeId).collect())).collect();
            Hypergraph::with_numeric_labels(n, edges).unwrap()
        })
    })
}

/// Simultaneous-deletion fixpoint restricted to `start`, counting supports
/// pair by pair.
fn fixpoint_from(graph: &Hypergraph, start: &NodeSet, k: u32, g: u32) -> NodeSet {
    let mut h = start.clone();
    loop {
        let violators: Vec<NodeId> = h
            .iter()
            .copied()
            .filter(|&u| {
                let nbrs = h
                    .iter()
                    .filter(|&&w| w != u)
                    .filter(|&&w| graph.edges().iter().filter(|e| e.contains(u) && e.contains(w)).count() >= g as usize)
                    .count();
                (nbrs as u32) < k
            })
            .collect();
        if violators.is_empty() {
            return h;
        }
        for v in violators {
            h.remove(&v);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn epa_naive_and_oracle_agree(graph in hypergraph(), k in 1u32..=5, g in 1u32..=4) {
        let fast = epa(&graph, k, g).unwrap();
        prop_assert_eq!(&fast, &naive_kg_core(&graph, k, g).unwrap());
        prop_assert_eq!(&fast, &oracle_kg_core(&graph, k, g).unwrap());
    }

    #[test]
    fn core_is_sound_and_maximal(graph in hypergraph(), k in 1u32..=4, g in 1u32..=3) {
        let core = epa(&graph, k, g).unwrap();
        for &v in &core {
            prop_assert!(g_neighbours(&graph, &core, v, g).unwrap().len() as u32 >= k);
        }
        for v in graph.nodes().filter(|v| !core.contains(v)) {
            let mut grown = core.clone();
            grown.insert(v);
            prop_assert!(!fixpoint_from(&graph, &grown, k, g).contains(&v));
        }
    }

    #[test]
    fn cores_are_nested(graph in hypergraph(), k in 1u32..=4, g in 1u32..=3) {
        let base = epa(&graph, k, g).unwrap();
        prop_assert!(epa(&graph, k + 1, g).unwrap().is_subset(&base));
        prop_assert!(epa(&graph, k, g + 1).unwrap().is_subset(&base));
    }

    #[test]
    fn decomposition_matches_pointwise_cores(graph in hypergraph()) {
        let d = bca(&graph);
        d.skyline.validate().unwrap();
        let (kmax, gmax) = (d.k_max(), d.g_max());
        for g in 1..=gmax + 1 {
            for k in 1..=kmax + 1 {
                let want = epa(&graph, k, g).unwrap();
                prop_assert_eq!(d.core(k, g).cloned().unwrap_or_default(), want.clone());
                prop_assert_eq!(d.skyline.query_core(k, g).unwrap(), want);
            }
        }
        for (v, pairs) in d.skyline.iter() {
            prop_assert!(pairs.len() as u32 <= kmax.min(gmax), "node {} has {:?}", v, pairs);
        }
        prop_assert_eq!(bca(&graph), d);
    }

    #[test]
    fn queue_order_does_not_change_the_core(graph in hypergraph(), k in 1u32..=3, g in 1u32..=2) {
        // reversing label order reverses node ids and hence the peel order
        let mut text = Vec::new();
        write_edge_list(&graph, &mut text).unwrap();
        let text = String::from_utf8(text).unwrap();
        let reversed: String = text.lines().rev().map(|l| {
            let mut m: Vec<&str> = l.split(' ').collect();
            m.reverse();
            m.join(" ") + "\n"
        }).collect();
        let other = load_hypergraph_str(&reversed).unwrap();
        let a: BTreeSet<String> = epa(&graph, k, g).unwrap().iter().map(|&v| graph.label(v).to_owned()).collect();
        let b: BTreeSet<String> = epa(&other, k, g).unwrap().iter().map(|&v| other.label(v).to_owned()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn edge_list_round_trip(graph in hypergraph()) {
        let mut text = Vec::new();
        write_edge_list(&graph, &mut text).unwrap();
        let back = load_hypergraph_str(std::str::from_utf8(&text).unwrap()).unwrap();
        prop_assert_eq!(back.edge_count(), graph.edge_count());
        for (a, b) in graph.edges().iter().zip(back.edges()) {
            let la: BTreeSet<&str> = a.members().iter().map(|&v| graph.label(v)).collect();
            let lb: BTreeSet<&str> = b.members().iter().map(|&v| back.label(v)).collect();
            prop_assert_eq!(la, lb);
        }
    }

    #[test]
    fn incidence_is_symmetric(graph in hypergraph()) {
        for v in graph.nodes() {
            for &i in graph.incident(v) {
                prop_assert!(graph.edge(i as usize).contains(v));
            }
        }
        for (i, e) in graph.edges().iter().enumerate() {
            for &v in e.members() {
                prop_assert!(graph.incident(v).contains(&(i as u32)));
            }
        }
    }

    #[test]
    fn induced_is_monotone(graph in hypergraph(), mask_a in any::<u16>(), mask_b in any::<u16>()) {
        let outer: NodeSet = graph.nodes().filter(|v| mask_a >> (v.0 % 16) & 1 == 1).collect();
        let inner: NodeSet = outer.iter().copied().filter(|v| mask_b >> (v.0 % 16) & 1 == 1).collect();
        let big = induced(&graph, &outer).unwrap();
        let small = induced(&graph, &inner).unwrap();
        let parent = |s: &kgcore::model::Subhypergraph, j: usize| -> BTreeSet<NodeId> {
            s.graph.edge(j).members().iter().map(|v| s.parent_nodes[v.index()]).collect()
        };
        for j in 0..small.graph.edge_count() {
            let origin = small.edge_origin[j];
            let bj = big.edge_origin.iter().position(|&o| o == origin);
            prop_assert!(bj.is_some());
            let restricted: BTreeSet<NodeId> = parent(&big, bj.unwrap()).intersection(&inner).copied().collect();
            prop_assert_eq!(restricted, parent(&small, j));
        }
    }
}

#[test]
fn raw_keys_are_downward_closed() {
    for seed in 0..50 {
        let graph = kgcore::oracle::random_hypergraph(seed, Default::default());
        let d = bca(&graph);
        for key in d.raw.keys() {
            for (k, g) in [(key.k - 1, key.g), (key.k, key.g - 1)] {
                if k >= 1 && g >= 1 {
                    assert!(d.raw[&CoreKey { k, g }].is_superset(&d.raw[key]));
                }
            }
        }
    }
}
