//! Shared test helpers, chiefly the reference oracle: Ψ by exhausting all
//! set partitions of the vertex set. Independent of the solver's search
//! path by construction — no bounds, no pruning, no symmetry breaking.

use psi_lab::graph::Graph;

/// Largest number of parts over all partitions of the vertices into
/// pairwise edge-connected classes. Brute force over restricted-growth
/// strings; fine through n = 7.
pub fn naive_psi(g: &Graph) -> u32 {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut assignment = vec![0usize; n];
    let mut best = 0u32;
    enumerate(g, 1, &mut assignment, &mut best);
    best
}

fn enumerate(g: &Graph, v: usize, assignment: &mut Vec<usize>, best: &mut u32) {
    let n = g.n();
    if v == n {
        let parts = assignment.iter().copied().max().unwrap() + 1;
        if parts as u32 > *best && partition_is_pseudocomplete(g, assignment, parts) {
            *best = parts as u32;
        }
        return;
    }
    let max_used = assignment[..v].iter().copied().max().unwrap();
    for part in 0..=max_used + 1 {
        assignment[v] = part;
        enumerate(g, v + 1, assignment, best);
    }
    assignment[v] = 0;
}

fn partition_is_pseudocomplete(g: &Graph, assignment: &[usize], parts: usize) -> bool {
    let mut seen = vec![false; parts * parts];
    for (u, v) in g.edges() {
        let (a, b) = (assignment[u], assignment[v]);
        seen[a * parts + b] = true;
        seen[b * parts + a] = true;
    }
    (0..parts).all(|a| (a + 1..parts).all(|b| seen[a * parts + b]))
}
