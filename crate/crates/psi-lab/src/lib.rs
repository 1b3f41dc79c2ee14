//! Exact tools for the pseudoachromatic number Ψ of small graphs.
//!
//! A vertex coloring is *pseudocomplete* when every pair of distinct colors
//! appears on the two endpoints of at least one edge; Ψ(G) is the largest
//! color count over all pseudocomplete colorings of G. This crate computes
//! Ψ exactly by branch-and-bound, studies how Ψ behaves under the graph
//! join ∇, decides criticality and weak criticality of a graph from two
//! independent routes, builds the explicit colorings behind those facts,
//! and replays the full set of claims as executable checks over an
//! embedded corpus of small graphs.

pub mod clique;
pub mod coloring;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod mpd;
pub mod solver;
pub mod subsets;
pub mod verify;
pub mod witness;

pub use clique::clique_number;
pub use coloring::{is_pseudocomplete, multiplicity_profile, Coloring, MultiplicityProfile, PseudoCheck};
pub use error::{Error, Result};
pub use graph::{delete_vertices, join, nabla_k, Graph, VertexSet, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_lines};
pub use solver::{
    feasible_coloring, psi, psi_upper_bound, psi_with_hint, Feasibility, Outcome, PsiResult,
    SearchConfig,
};
