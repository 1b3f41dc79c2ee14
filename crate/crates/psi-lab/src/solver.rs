//! Exact computation of the pseudoachromatic number Ψ by branch-and-bound
//! over surjective colorings.
//!
//! For a fixed color count `t`, the search assigns vertices in a fixed
//! order, each either to an already-open color class or to the single next
//! unopened one (first-occurrence symmetry breaking, which quotients out the
//! `t!` color permutations). Two counting prunes keep it honest:
//!
//! * the uncovered color pairs can never outnumber the edges that still
//!   have an unassigned endpoint, and
//! * the remaining vertices must suffice to open every still-closed class.
//!
//! `psi` walks `t` downward from the upper bound `min(⌊(ω+n)/2⌋, edge
//! bound)` so a strong lower-bound hint (a known coloring) can close the
//! search without expanding a single node.

use std::sync::atomic::{AtomicI64, Ordering};

use serde::Serialize;

use crate::clique::clique_number;
use crate::coloring::{is_pseudocomplete, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default branch-node budget per solver invocation.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Knobs for the search. `seed` only permutes tie-breaking in the branch
/// order; values returned are independent of it.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub seed: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: DEFAULT_NODE_BUDGET, seed: None }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig { node_budget, seed: None }
    }
}

/// Shared countdown of branch nodes. One pool guards one logical solver
/// call, however many searches it fans out into.
pub struct NodeBudget {
    initial: u64,
    remaining: AtomicI64,
}

impl NodeBudget {
    pub fn new(limit: u64) -> Self {
        let capped = limit.min(i64::MAX as u64);
        NodeBudget { initial: capped, remaining: AtomicI64::new(capped as i64) }
    }

    /// Spends `n` nodes; false once the pool is exhausted.
    pub fn try_spend(&self, n: u64) -> bool {
        self.remaining.fetch_sub(n as i64, Ordering::Relaxed) > 0
    }

    pub fn spent(&self) -> u64 {
        let rem = self.remaining.load(Ordering::Relaxed).max(0) as u64;
        self.initial - rem
    }
}

/// An exact result, or the best bounds available when the node budget ran
/// out. An inconclusive outcome is never a wrong exact claim.
#[derive(Clone, Debug)]
pub enum Outcome<T> {
    Exact(T),
    Inconclusive(InconclusiveInfo),
}

#[derive(Clone, Debug, Serialize)]
pub struct InconclusiveInfo {
    pub lower: u32,
    pub upper: u32,
    pub nodes_spent: u64,
}

impl<T> Outcome<T> {
    pub fn is_exact(&self) -> bool {
        matches!(self, Outcome::Exact(_))
    }

    pub fn exact(self) -> Option<T> {
        match self {
            Outcome::Exact(t) => Some(t),
            Outcome::Inconclusive(_) => None,
        }
    }

    pub fn exact_ref(&self) -> Option<&T> {
        match self {
            Outcome::Exact(t) => Some(t),
            Outcome::Inconclusive(_) => None,
        }
    }

    /// Unwraps the exact value; panics on an inconclusive outcome. Meant for
    /// tests and sweeps where the budget is known to suffice.
    pub fn expect_exact(self, what: &str) -> T {
        match self {
            Outcome::Exact(t) => t,
            Outcome::Inconclusive(info) => panic!(
                "{what}: inconclusive after {} nodes (bounds {}..={})",
                info.nodes_spent, info.lower, info.upper
            ),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Exact(t) => Outcome::Exact(f(t)),
            Outcome::Inconclusive(i) => Outcome::Inconclusive(i),
        }
    }
}

/// Result of asking for a pseudocomplete coloring with exactly `t` colors.
#[derive(Clone, Debug)]
pub enum Feasibility {
    Feasible(Coloring),
    Infeasible,
    Inconclusive { nodes_spent: u64 },
}

/// One consulted bound, recorded for auditability.
#[derive(Clone, Debug, Serialize)]
pub struct BoundStep {
    pub name: String,
    pub value: u32,
}

/// Exact Ψ with a witness coloring and the bounds the solver consulted.
#[derive(Clone, Debug, Serialize)]
pub struct PsiResult {
    pub value: u32,
    pub witness: Coloring,
    pub bound_trace: Vec<BoundStep>,
}

/// Largest `t` with `t(t-1)/2 <= m`: no pseudocomplete coloring can use more
/// colors than the edges can cover pairs.
pub fn edge_upper_bound(edge_count: usize) -> u32 {
    let mut t = ((1.0 + ((1 + 8 * edge_count) as f64).sqrt()) / 2.0).floor() as u32;
    while (t as usize) * (t as usize - 1) / 2 > edge_count {
        t -= 1;
    }
    while ((t + 1) as usize) * (t as usize) / 2 <= edge_count {
        t += 1;
    }
    t
}

/// `min(⌊(ω+n)/2⌋, edge bound)`; 0 for the empty graph.
pub fn psi_upper_bound(g: &Graph) -> u32 {
    if g.n() == 0 {
        return 0;
    }
    let (omega, _) = clique_number(g);
    let clique_bound = ((omega + g.n()) / 2) as u32;
    clique_bound.min(edge_upper_bound(g.edge_count()))
}

/// Branch order: degree descending, ties by index, optionally shuffled
/// within equal-degree runs by `seed`.
fn branch_order(g: &Graph, seed: Option<u64>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    if let Some(seed) = seed {
        let mut state = seed ^ 0x9e37_79b9_7f4a_7c15;
        let mut next = move || {
            // splitmix64
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^ (z >> 31)
        };
        let mut i = 0;
        while i < order.len() {
            let d = g.degree(order[i]);
            let mut j = i + 1;
            while j < order.len() && g.degree(order[j]) == d {
                j += 1;
            }
            for k in ((i + 1)..j).rev() {
                let r = i + (next() % (k - i + 1) as u64) as usize;
                order.swap(k, r);
            }
            i = j;
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    t: u32,
    order: Vec<usize>,
    assignment: Vec<u32>,
    assigned: u64,
    /// `covered[a]` has bit `b` set when the pair of colors `a+1, b+1` lies
    /// on some fully assigned edge.
    covered: Vec<u64>,
    covered_count: u32,
    pairs_total: u32,
    open_edges: u32,
    opened: u32,
    budget: &'a NodeBudget,
}

struct Exhausted;

impl<'a> Search<'a> {
    fn new(g: &'a Graph, t: u32, seed: Option<u64>, budget: &'a NodeBudget) -> Self {
        Search {
            g,
            t,
            order: branch_order(g, seed),
            assignment: vec![0; g.n()],
            assigned: 0,
            covered: vec![0; t as usize],
            covered_count: 0,
            pairs_total: t * (t - 1) / 2,
            open_edges: g.edge_count() as u32,
            opened: 0,
            budget,
        }
    }

    fn cover(&mut self, a: u32, b: u32) -> bool {
        let (a, b) = ((a - 1) as usize, (b - 1) as usize);
        if self.covered[a] & (1u64 << b) == 0 {
            self.covered[a] |= 1u64 << b;
            self.covered[b] |= 1u64 << a;
            self.covered_count += 1;
            true
        } else {
            false
        }
    }

    fn uncover(&mut self, a: u32, b: u32) {
        let (a, b) = ((a - 1) as usize, (b - 1) as usize);
        self.covered[a] &= !(1u64 << b);
        self.covered[b] &= !(1u64 << a);
        self.covered_count -= 1;
    }

    fn run(&mut self) -> std::result::Result<Option<Coloring>, Exhausted> {
        if self.t as usize > self.g.n() {
            return Ok(None);
        }
        match self.assign(0)? {
            true => {
                let colors = self.assignment.clone();
                let c = Coloring::with_num_colors(colors, self.t)
                    .expect("search output is total and surjective");
                debug_assert!(is_pseudocomplete(self.g, &c).unwrap().is_complete());
                Ok(Some(c))
            }
            false => Ok(None),
        }
    }

    fn assign(&mut self, pos: usize) -> std::result::Result<bool, Exhausted> {
        let n = self.g.n();
        if self.covered_count == self.pairs_total && self.opened == self.t {
            // Every pair is covered and every class open: the rest of the
            // vertices can take any color, say 1.
            for &v in &self.order[pos..] {
                self.assignment[v] = 1;
            }
            return Ok(true);
        }
        if pos == n {
            return Ok(false);
        }
        let v = self.order[pos];
        let nbr_assigned = self.g.neighbors(v) & self.assigned;
        let assigned_deg = nbr_assigned.count_ones();
        let open_after = self.open_edges - assigned_deg;
        let cmax = (self.opened + 1).min(self.t);
        let mut undo: Vec<(u32, u32)> = Vec::with_capacity(assigned_deg as usize);

        for c in 1..=cmax {
            if !self.budget.try_spend(1) {
                return Err(Exhausted);
            }
            let opened_after = self.opened + u32::from(c == self.opened + 1);
            // Remaining vertices must be able to open the remaining classes.
            if self.t - opened_after > (n - pos - 1) as u32 {
                continue;
            }
            undo.clear();
            let mut rest = nbr_assigned;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let d = self.assignment[u];
                if d != c && self.cover(c, d) {
                    undo.push((c, d));
                }
            }
            // Edges with an unassigned endpoint must cover what is not yet
            // covered; each covers at most one new pair.
            if self.pairs_total - self.covered_count <= open_after {
                self.assignment[v] = c;
                self.assigned |= 1u64 << v;
                let saved_open = self.open_edges;
                let saved_opened = self.opened;
                self.open_edges = open_after;
                self.opened = opened_after;

                let found = self.assign(pos + 1);

                self.opened = saved_opened;
                self.open_edges = saved_open;
                self.assigned &= !(1u64 << v);
                self.assignment[v] = 0;
                for &(a, b) in &undo {
                    self.uncover(a, b);
                }
                if found? {
                    // Leave the winning color in place for `run`.
                    self.assignment[v] = c;
                    return Ok(true);
                }
            } else {
                for &(a, b) in &undo {
                    self.uncover(a, b);
                }
            }
        }
        Ok(false)
    }
}

/// Runs the fixed-`t` decision search against an explicit budget pool.
pub(crate) fn search_with_budget(
    g: &Graph,
    t: u32,
    seed: Option<u64>,
    budget: &NodeBudget,
) -> Feasibility {
    if t == 1 {
        // A single color covers no pairs; any total assignment works.
        return if g.n() == 0 {
            Feasibility::Infeasible
        } else {
            Feasibility::Feasible(Coloring::new(vec![1; g.n()]).unwrap())
        };
    }
    let mut search = Search::new(g, t, seed, budget);
    match search.run() {
        Ok(Some(c)) => Feasibility::Feasible(c),
        Ok(None) => Feasibility::Infeasible,
        Err(Exhausted) => Feasibility::Inconclusive { nodes_spent: budget.spent() },
    }
}

/// Decides whether `g` admits a pseudocomplete coloring with exactly `t`
/// colors, returning one if so. A fresh node budget from `cfg` guards the
/// call.
pub fn feasible_coloring(g: &Graph, t: u32, cfg: &SearchConfig) -> Result<Feasibility> {
    if t == 0 {
        return Err(Error::Domain("feasible_coloring requires t >= 1".into()));
    }
    let budget = NodeBudget::new(cfg.node_budget);
    Ok(search_with_budget(g, t, cfg.seed, &budget))
}

/// Distinct colors on a maximum clique, color 1 everywhere else: always
/// pseudocomplete, establishing Ψ >= ω.
fn clique_seed_coloring(g: &Graph, clique: VertexSet) -> Coloring {
    let mut colors = vec![1u32; g.n()];
    for (i, v) in clique.iter().enumerate() {
        colors[v] = i as u32 + 1;
    }
    Coloring::with_num_colors(colors, clique.len() as u32).expect("clique seed is surjective")
}

/// Exact Ψ. Never errors; with an exhausted budget it reports the best
/// bounds instead of guessing.
pub fn psi(g: &Graph, cfg: &SearchConfig) -> Outcome<PsiResult> {
    psi_impl(g, None, cfg)
}

/// Exact Ψ seeded with a known pseudocomplete coloring, used as the lower
/// bound. Errors if the hint is not actually pseudocomplete on `g`.
pub fn psi_with_hint(g: &Graph, hint: &Coloring, cfg: &SearchConfig) -> Result<Outcome<PsiResult>> {
    match is_pseudocomplete(g, hint)? {
        crate::coloring::PseudoCheck::Complete => Ok(psi_impl(g, Some(hint), cfg)),
        crate::coloring::PseudoCheck::MissingPair(a, b) => Err(Error::Contract(format!(
            "hint is not pseudocomplete: colors {a} and {b} share no edge"
        ))),
    }
}

fn psi_impl(g: &Graph, hint: Option<&Coloring>, cfg: &SearchConfig) -> Outcome<PsiResult> {
    let budget = NodeBudget::new(cfg.node_budget);
    psi_budgeted(g, hint, cfg.seed, &budget)
}

/// As [`psi`], but drawing nodes from a caller-provided pool so one logical
/// operation spanning many Ψ computations has a single budget.
pub(crate) fn psi_budgeted(
    g: &Graph,
    hint: Option<&Coloring>,
    seed: Option<u64>,
    budget: &NodeBudget,
) -> Outcome<PsiResult> {
    let mut trace = Vec::new();
    if g.n() == 0 {
        trace.push(BoundStep { name: "empty-graph".into(), value: 0 });
        return Outcome::Exact(PsiResult {
            value: 0,
            witness: Coloring::new(Vec::new()).unwrap(),
            bound_trace: trace,
        });
    }

    let (omega, clique) = clique_number(g);
    let clique_upper = ((omega + g.n()) / 2) as u32;
    let edge_upper = edge_upper_bound(g.edge_count());
    trace.push(BoundStep { name: "clique-lower".into(), value: omega as u32 });
    trace.push(BoundStep { name: "clique-vertex-upper".into(), value: clique_upper });
    trace.push(BoundStep { name: "edge-count-upper".into(), value: edge_upper });

    let mut lower = omega as u32;
    let mut witness = clique_seed_coloring(g, clique);
    if let Some(h) = hint {
        trace.push(BoundStep { name: "hint-lower".into(), value: h.num_colors() });
        if h.num_colors() > lower {
            lower = h.num_colors();
            witness = h.clone();
        }
    }
    let upper = clique_upper.min(edge_upper);

    let mut t = upper;
    while t > lower {
        match search_with_budget(g, t, seed, budget) {
            Feasibility::Feasible(c) => {
                trace.push(BoundStep { name: "search-feasible".into(), value: t });
                return Outcome::Exact(PsiResult { value: t, witness: c, bound_trace: trace });
            }
            Feasibility::Infeasible => {
                trace.push(BoundStep { name: "search-infeasible".into(), value: t });
                t -= 1;
            }
            Feasibility::Inconclusive { nodes_spent } => {
                return Outcome::Inconclusive(InconclusiveInfo {
                    lower,
                    upper: t,
                    nodes_spent,
                });
            }
        }
    }
    Outcome::Exact(PsiResult { value: lower, witness, bound_trace: trace })
}
