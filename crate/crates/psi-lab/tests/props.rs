//! Property tests over random graphs: encoding round-trips, bound
//! sandwiches, and deletion behavior against a naive reference.

use proptest::prelude::*;

use psi_lab::clique::clique_number;
use psi_lab::coloring::is_pseudocomplete;
use psi_lab::graph::{delete_vertices, Graph, VertexSet};
use psi_lab::graph6::{emit_graph6, parse_graph6};
use psi_lab::solver::{psi, psi_upper_bound, SearchConfig};

/// A random simple graph on up to `max_n` vertices, as (n, edge bits).
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let bits = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), bits).prop_map(move |edge_bits| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for j in 1..n {
                for i in 0..j {
                    if edge_bits[idx] {
                        edges.push((i, j));
                    }
                    idx += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trips(g in arb_graph(20)) {
        let encoded = emit_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&encoded).unwrap(), g);
    }

    #[test]
    fn psi_is_sandwiched_and_witnessed(g in arb_graph(6)) {
        let r = psi(&g, &SearchConfig::default()).expect_exact("psi");
        let (omega, _) = clique_number(&g);
        prop_assert!(omega as u32 <= r.value);
        prop_assert!(r.value <= psi_upper_bound(&g));
        prop_assert!(is_pseudocomplete(&g, &r.witness).unwrap().is_complete());
    }

    #[test]
    fn deletion_matches_naive_reference(g in arb_graph(10), mask in any::<u64>()) {
        let s = VertexSet::from_mask(mask & g.vertex_mask());
        let (sub, map) = delete_vertices(&g, s).unwrap();
        prop_assert_eq!(sub.n(), g.n() - s.len());
        // The relabeling map preserves order and avoids the deleted set.
        prop_assert!(map.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(map.iter().all(|&v| !s.contains(v)));
        // Edges survive exactly when both endpoints do.
        let mut expected: Vec<(usize, usize)> = g
            .edges()
            .filter(|&(u, v)| !s.contains(u) && !s.contains(v))
            .map(|(u, v)| {
                let a = map.iter().position(|&x| x == u).unwrap();
                let b = map.iter().position(|&x| x == v).unwrap();
                (a.min(b), a.max(b))
            })
            .collect();
        expected.sort_unstable();
        let mut got: Vec<(usize, usize)> = sub.edges().collect();
        got.sort_unstable();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn seeds_never_change_the_value(g in arb_graph(5), seed in any::<u64>()) {
        let plain = psi(&g, &SearchConfig::default()).expect_exact("psi").value;
        let seeded = psi(&g, &SearchConfig { node_budget: 100_000_000, seed: Some(seed) })
            .expect_exact("psi")
            .value;
        prop_assert_eq!(plain, seeded);
    }
}
