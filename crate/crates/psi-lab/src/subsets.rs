//! Per-subset invariant tables: ω and Ψ of every induced subgraph at once.
//!
//! The psi-drop analysis asks for Ψ(G∖X) over all vertex sets X, which is
//! 2^n solver calls if done naively. The table instead fills subsets in
//! increasing mask order and pinches each value between
//!
//! * lower: max over v of Ψ(S∖v)  (deleting a vertex never raises Ψ), and
//! * upper: min over v of Ψ(S∖v)+1 (one deletion drops Ψ by at most one),
//!   capped by the clique-vertex and edge-count bounds,
//!
//! so the fixed-t search only runs for the few subsets the bounds leave
//! open.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::solver::{
    edge_upper_bound, search_with_budget, Feasibility, InconclusiveInfo, NodeBudget, Outcome,
    SearchConfig,
};

/// Largest order the 2^n tables are built for.
pub const MAX_TABLE_ORDER: usize = 14;

/// ω and Ψ of every induced subgraph of a fixed graph, indexed by vertex
/// bitmask.
pub struct SubsetTable {
    n: usize,
    omega: Vec<u8>,
    psi: Vec<u8>,
}

impl SubsetTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega_of(&self, s: VertexSet) -> u32 {
        self.omega[s.mask() as usize] as u32
    }

    pub fn psi_of(&self, s: VertexSet) -> u32 {
        self.psi[s.mask() as usize] as u32
    }

    /// Ψ of the whole graph.
    pub fn psi_full(&self) -> u32 {
        self.psi[(1usize << self.n) - 1] as u32
    }
}

/// Builds the table, or reports the budget ran out. Errors above
/// [`MAX_TABLE_ORDER`] vertices.
pub fn subset_table(g: &Graph, cfg: &SearchConfig) -> Result<Outcome<SubsetTable>> {
    let n = g.n();
    if n > MAX_TABLE_ORDER {
        return Err(Error::UnsupportedSize { n, max: MAX_TABLE_ORDER });
    }
    let size = 1usize << n;

    // ω over subsets: a maximum clique of S either avoids the lowest vertex
    // v or consists of v plus a clique inside S ∩ N(v).
    let mut omega = vec![0u8; size];
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let without = mask & (mask - 1);
        let with = mask & g.neighbors(v) as usize;
        omega[mask] = omega[without].max(1 + omega[with]);
    }

    let budget = NodeBudget::new(cfg.node_budget);
    let mut psi = vec![0u8; size];
    for mask in 1..size {
        let members = VertexSet::from_mask(mask as u64);
        let mut lower = 0u32;
        let mut drop_upper = u32::MAX;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let sub = psi[mask & !(1usize << v)] as u32;
            lower = lower.max(sub);
            drop_upper = drop_upper.min(sub + 1);
        }
        lower = lower.max(omega[mask] as u32);

        let order = mask.count_ones() as usize;
        let edge_count = members
            .iter()
            .map(|v| (g.neighbors(v) as usize & mask).count_ones() as usize)
            .sum::<usize>()
            / 2;
        let clique_upper = ((omega[mask] as usize + order) / 2) as u32;
        let upper = drop_upper
            .min(clique_upper)
            .min(edge_upper_bound(edge_count));

        let mut value = lower;
        if upper > lower {
            let (sub, _) = g.induced(members);
            let mut t = upper;
            while t > lower {
                match search_with_budget(&sub, t, cfg.seed, &budget) {
                    Feasibility::Feasible(_) => {
                        value = t;
                        break;
                    }
                    Feasibility::Infeasible => t -= 1,
                    Feasibility::Inconclusive { nodes_spent } => {
                        return Ok(Outcome::Inconclusive(InconclusiveInfo {
                            lower,
                            upper: t,
                            nodes_spent,
                        }));
                    }
                }
            }
        }
        psi[mask] = value as u8;
    }
    Ok(Outcome::Exact(SubsetTable { n, omega, psi }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{complete_graph, cycle_graph, path_graph};
    use crate::solver::psi;

    /// The table must agree with the standalone solver on every subset.
    #[test]
    fn table_matches_solver() {
        for g in [path_graph(4), cycle_graph(5), complete_graph(4)] {
            let cfg = SearchConfig::default();
            let table = subset_table(&g, &cfg).unwrap().expect_exact("table");
            for mask in 0u64..(1 << g.n()) {
                let s = VertexSet::from_mask(mask);
                let (sub, _) = g.induced(s);
                let direct = psi(&sub, &cfg).expect_exact("psi").value;
                assert_eq!(table.psi_of(s), direct, "mask {mask:b} of {g:?}");
                let (omega, _) = crate::clique::clique_number(&sub);
                assert_eq!(table.omega_of(s), omega as u32);
            }
        }
    }

    #[test]
    fn rejects_oversize() {
        let g = crate::graph::Graph::empty(15).unwrap();
        assert!(matches!(
            subset_table(&g, &SearchConfig::default()),
            Err(Error::UnsupportedSize { .. })
        ));
    }
}
