//! Exact maximum clique via branch-and-bound with a greedy-coloring bound.

use crate::graph::{Graph, VertexSet};

/// Returns the clique number together with a witness clique of that size.
/// Exact for every input; `n = 0` yields `(0, {})` by convention.
pub fn clique_number(g: &Graph) -> (usize, VertexSet) {
    if g.n() == 0 {
        return (0, VertexSet::EMPTY);
    }
    let mut best = (1usize, VertexSet::singleton(0));
    let mut current: Vec<usize> = Vec::with_capacity(g.n());
    expand(g, g.vertex_mask(), &mut current, &mut best);
    best
}

/// Greedy coloring of the candidate set; returns vertices ordered so that
/// color-class indices are nondecreasing, paired with their 1-based class
/// index. The class index of the last vertex bounds the largest clique
/// inside `cand`.
fn color_order(g: &Graph, cand: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(cand.count_ones() as usize);
    let mut uncolored = cand;
    let mut class = 0usize;
    while uncolored != 0 {
        class += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            out.push((v, class));
            uncolored &= !(1u64 << v);
            avail &= !(1u64 << v);
            avail &= !g.neighbors(v);
        }
    }
    out
}

fn expand(g: &Graph, mut cand: u64, current: &mut Vec<usize>, best: &mut (usize, VertexSet)) {
    let ordered = color_order(g, cand);
    // Visit high color classes first; a clique inside a set colored with
    // `class` classes has at most `class` vertices, so once the bound dips
    // below the incumbent every remaining branch is dominated.
    for &(v, class) in ordered.iter().rev() {
        if current.len() + class <= best.0 {
            return;
        }
        cand &= !(1u64 << v);
        current.push(v);
        let next = cand & g.neighbors(v);
        if next == 0 {
            if current.len() > best.0 {
                *best = (current.len(), current.iter().copied().collect());
            }
        } else {
            expand(g, next, current, best);
        }
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{complete_graph, cycle_graph, path_graph};
    use crate::graph::{join, Graph};

    fn is_clique(g: &Graph, s: VertexSet) -> bool {
        let vs: Vec<usize> = s.iter().collect();
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    #[test]
    fn known_clique_numbers() {
        let (w, c) = clique_number(&complete_graph(5));
        assert_eq!(w, 5);
        assert!(is_clique(&complete_graph(5), c));

        let (w, c) = clique_number(&cycle_graph(8));
        assert_eq!(w, 2);
        assert!(is_clique(&cycle_graph(8), c));

        let p3 = path_graph(3);
        let (w, c) = clique_number(&join(&p3, &p3).unwrap());
        assert_eq!(w, 4);
        assert!(is_clique(&join(&p3, &p3).unwrap(), c));

        assert_eq!(clique_number(&Graph::empty(0).unwrap()).0, 0);
        assert_eq!(clique_number(&Graph::empty(4).unwrap()).0, 1);
    }

    #[test]
    fn witness_has_claimed_size() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let (w, c) = clique_number(&g);
        assert_eq!(w, 3);
        assert_eq!(c.len(), 3);
        assert!(is_clique(&g, c));
    }
}
