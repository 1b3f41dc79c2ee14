//! Families of small test graphs: named instances and an exhaustive corpus
//! of non-isomorphic graphs of low order, generated internally so the
//! harness needs no external tooling.

use std::sync::OnceLock;

use crate::graph::Graph;

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
        .expect("path fits")
        .with_label(format!("P{n}"))
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges)
        .expect("cycle fits")
        .with_label(format!("C{n}"))
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
        .expect("complete graph fits")
        .with_label(format!("K{n}"))
}

pub fn edgeless_graph(n: usize) -> Graph {
    Graph::empty(n)
        .expect("edgeless graph fits")
        .with_label(format!("{n}K1"))
}

/// The named instances every sweep should include: the two graphs from the
/// corrected additivity example, a 5-cycle, and the first few cliques.
pub fn named_instances() -> Vec<Graph> {
    let mut out = vec![path_graph(3), cycle_graph(5), cycle_graph(8)];
    out.extend((1..=6).map(complete_graph));
    out
}

/// Canonical key: the lexicographically smallest upper-triangle edge bitmask
/// over all vertex permutations. Exact isomorphism invariant; only sensible
/// for small `n`.
fn canonical_key(n: usize, edges: &[(usize, usize)]) -> u64 {
    fn pair_bit(n: usize, mut u: usize, mut v: usize) -> u64 {
        if u > v {
            std::mem::swap(&mut u, &mut v);
        }
        // Row-major upper triangle index.
        let idx = u * n - u * (u + 1) / 2 + (v - u - 1);
        1u64 << idx
    }

    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    // Heap's algorithm over all n! permutations.
    let mut c = vec![0usize; n];
    let eval = |perm: &[usize], best: &mut u64| {
        let mut key = 0u64;
        for &(u, v) in edges {
            key |= pair_bit(n, perm[u], perm[v]);
        }
        if key < *best {
            *best = key;
        }
    };
    eval(&perm, &mut best);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            eval(&perm, &mut best);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn canonical_key_graph(g: &Graph) -> u64 {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    canonical_key(g.n(), &edges)
}

/// All non-isomorphic graphs on exactly `n` vertices, built by extending the
/// classes one order lower with every possible neighborhood of a new vertex
/// and deduplicating by canonical key.
fn enumerate_order(n: usize, smaller: &[Graph]) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1).unwrap()];
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for parent in smaller {
        for mask in 0u64..(1u64 << (n - 1)) {
            let mut edges: Vec<(usize, usize)> = parent.edges().collect();
            for v in 0..n - 1 {
                if mask & (1u64 << v) != 0 {
                    edges.push((v, n - 1));
                }
            }
            if seen.insert(canonical_key(n, &edges)) {
                out.push(Graph::from_edges(n, &edges).unwrap());
            }
        }
    }
    out
}

const MAX_ENUM_ORDER: usize = 7;

/// The non-isomorphic graphs on exactly `n` vertices, `1 <= n <= 7`.
/// Each order is computed once per process and cached.
pub fn non_isomorphic_of_order(n: usize) -> &'static [Graph] {
    static LEVELS: [OnceLock<Vec<Graph>>; MAX_ENUM_ORDER] =
        [const { OnceLock::new() }; MAX_ENUM_ORDER];
    assert!(
        (1..=MAX_ENUM_ORDER).contains(&n),
        "exhaustive enumeration supports 1..={MAX_ENUM_ORDER} vertices"
    );
    LEVELS[n - 1].get_or_init(|| {
        let prev: &[Graph] = if n == 1 { &[] } else { non_isomorphic_of_order(n - 1) };
        enumerate_order(n, prev)
    })
}

/// All non-isomorphic graphs on `1..=max_n` vertices.
pub fn non_isomorphic_graphs(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| non_isomorphic_of_order(n).iter().cloned())
        .collect()
}

/// Is `g` isomorphic to `h`? Exact, by canonical key; small orders only.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && canonical_key_graph(g) == canonical_key_graph(h)
}
