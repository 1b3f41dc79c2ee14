//! The explicit colorings behind the join results: the lower-bound coloring
//! of `g ∇ h`, the k-fold join colorings for both parities, structure
//! classification of maximum colorings of (weakly) critical graphs, the
//! clique-complement contraction check, and the boost coloring that beats
//! `Ψ(G) + Ψ(H)` when neither operand is weakly critical.
//!
//! Every coloring built here is validated with `is_pseudocomplete` before
//! it is returned; a failure is an internal defect, never a caller error.

use serde::Serialize;

use crate::clique::clique_number;
use crate::coloring::{is_pseudocomplete, multiplicity_profile, Coloring, MultiplicityProfile};
use crate::error::{Error, Result};
use crate::graph::{join, nabla_k, Graph, VertexSet};
use crate::solver::{psi, Outcome, PsiResult, SearchConfig};
use crate::witness::{validate_witness, WitnessPair, WitnessVariant};

fn validated(g: &Graph, colors: Vec<u32>, expect: u32, what: &str) -> Result<Coloring> {
    let coloring = Coloring::with_num_colors(colors, expect)
        .map_err(|e| Error::Internal(format!("{what} produced an invalid coloring: {e}")))?;
    match is_pseudocomplete(g, &coloring)? {
        crate::coloring::PseudoCheck::Complete => Ok(coloring),
        crate::coloring::PseudoCheck::MissingPair(a, b) => Err(Error::Internal(format!(
            "{what} missed the color pair {{{a},{b}}}"
        ))),
    }
}

/// Pseudocomplete coloring of `g ∇ h` with `min(ω(G)+|V_H|, ω(H)+|V_G|)`
/// colors: distinct colors on both maximum cliques, then identical color
/// pairs across the two clique complements, the smaller side injecting into
/// the larger.
pub fn join_coloring_lower(g: &Graph, h: &Graph) -> Result<Coloring> {
    if g.n() == 0 || h.n() == 0 {
        return Err(Error::Domain("join_coloring_lower needs nonempty operands".into()));
    }
    let (omega_g, clique_g) = clique_number(g);
    let (omega_h, clique_h) = clique_number(h);

    // Work with A = the side whose clique complement is smaller.
    let swap = g.n() - omega_g > h.n() - omega_h;
    let (a, clique_a, a_off, b, clique_b, b_off) = if swap {
        (h, clique_h, g.n(), g, clique_g, 0)
    } else {
        (g, clique_g, 0, h, clique_h, g.n())
    };

    let n = g.n() + h.n();
    let mut colors = vec![0u32; n];
    let mut next = 0u32;
    for v in clique_a.iter() {
        next += 1;
        colors[a_off + v] = next;
    }
    for v in clique_b.iter() {
        next += 1;
        colors[b_off + v] = next;
    }
    let rest_a: Vec<usize> = (0..a.n()).filter(|&v| !clique_a.contains(v)).collect();
    let rest_b: Vec<usize> = (0..b.n()).filter(|&v| !clique_b.contains(v)).collect();
    let base = next;
    for (i, &v) in rest_a.iter().enumerate() {
        colors[a_off + v] = base + i as u32 + 1;
    }
    for (i, &v) in rest_b.iter().enumerate() {
        // The overflow beyond |rest_a| reuses an existing color; color 1 is
        // always present.
        colors[b_off + v] = if i < rest_a.len() { base + i as u32 + 1 } else { 1 };
    }
    let total = base + rest_a.len() as u32;
    debug_assert_eq!(total as usize, clique_b.len() + a.n());
    debug_assert_eq!(
        total as usize,
        (omega_g + h.n()).min(omega_h + g.n()),
        "color count must be the minimum of the two mixed sums"
    );
    validated(&join(g, h)?, colors, total, "join_coloring_lower")
}

/// Pseudocomplete coloring of `∇^k g` with exactly `⌊k(ω+n)/2⌋` colors,
/// `k >= 2`. Even `ω+n` pairs each copy's clique complement with the next
/// copy's; odd `ω+n` with odd `k` adds `(k-1)/2` shared colors on the
/// copies of one leftover vertex; odd `ω+n` with even `k` reduces to
/// `∇^{k/2}(g ∇ g)`, whose parity is even.
pub fn nabla_k_coloring(g: &Graph, k: usize) -> Result<Coloring> {
    if k < 2 {
        return Err(Error::Domain("nabla_k_coloring requires k >= 2".into()));
    }
    if g.n() == 0 {
        return Err(Error::Domain("nabla_k_coloring needs a nonempty graph".into()));
    }
    let (omega, _) = clique_number(g);
    let target = (k * (omega + g.n()) / 2) as u32;

    let colors = if (omega + g.n()).is_multiple_of(2) {
        nabla_even_parity(g, k)?
    } else if k % 2 == 1 {
        nabla_odd_parity_odd_k(g, k)?
    } else if k == 2 {
        return join_coloring_lower(g, g);
    } else {
        // ∇^k g and ∇^{k/2}(g∇g) are the same graph vertex-for-vertex.
        let doubled = join(g, g)?;
        return nabla_k_coloring(&doubled, k / 2);
    };
    validated(&nabla_k(g, k)?, colors, target, "nabla_k_coloring")
}

/// Shared layout of the parity constructions: distinct colors on every copy
/// of the clique, fresh colors on each copy's X1, and the same colors again
/// on the next copy's X2.
fn nabla_shifted_core(
    g: &Graph,
    k: usize,
    clique: VertexSet,
    x1: &[usize],
    x2: &[usize],
) -> Vec<u32> {
    let n = g.n();
    let omega = clique.len();
    let q = x1.len();
    let mut colors = vec![0u32; n * k];
    for copy in 0..k {
        let off = copy * n;
        for (idx, v) in clique.iter().enumerate() {
            colors[off + v] = (copy * omega + idx) as u32 + 1;
        }
        for (idx, &v) in x1.iter().enumerate() {
            colors[off + v] = (k * omega + copy * q + idx) as u32 + 1;
        }
        let donor = (copy + k - 1) % k;
        for (idx, &v) in x2.iter().enumerate() {
            colors[off + v] = (k * omega + donor * q + idx) as u32 + 1;
        }
    }
    colors
}

fn nabla_even_parity(g: &Graph, k: usize) -> Result<Vec<u32>> {
    let (_, clique) = clique_number(g);
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !clique.contains(v)).collect();
    debug_assert_eq!(rest.len() % 2, 0);
    let q = rest.len() / 2;
    Ok(nabla_shifted_core(g, k, clique, &rest[..q], &rest[q..]))
}

fn nabla_odd_parity_odd_k(g: &Graph, k: usize) -> Result<Vec<u32>> {
    let (omega, clique) = clique_number(g);
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !clique.contains(v)).collect();
    debug_assert_eq!(rest.len() % 2, 1);
    let q = rest.len() / 2;
    let v0 = *rest.last().expect("odd parity leaves a vertex over");
    let mut colors = nabla_shifted_core(g, k, clique, &rest[..q], &rest[q..2 * q]);
    // Copies 2j and 2j+1 of the leftover vertex share extra color j; the
    // final copy reuses extra color 0, which therefore appears three times.
    let extra_base = (k * omega + k * q) as u32;
    for copy in 0..k {
        let j = if copy == k - 1 { 0 } else { copy / 2 };
        colors[copy * g.n() + v0] = extra_base + j as u32 + 1;
    }
    Ok(colors)
}

/// Which structural pattern a maximum coloring of a weakly critical graph
/// follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StructureKind {
    /// `ω` singleton colors on a maximal clique, everything else doubled.
    #[serde(rename = "critical")]
    Critical,
    /// `ω` singleton colors on a maximal clique, one tripled color, rest
    /// doubled.
    #[serde(rename = "weakly-type-1")]
    WeaklyType1,
    /// `ω - 1` singleton colors on a clique, everything else doubled.
    #[serde(rename = "weakly-type-2")]
    WeaklyType2,
    /// The graph is not weakly critical; no pattern applies.
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub kind: StructureKind,
    pub coloring: Option<Coloring>,
    pub profile: Option<MultiplicityProfile>,
    /// Left side of `8|E| >= bound`, when a bound applies.
    pub edge_bound_times8: Option<u64>,
    pub edge_bound_satisfied: Option<bool>,
}

fn classes_form_clique(g: &Graph, c: &Coloring, colors: &[u32]) -> bool {
    let members: Vec<usize> = colors
        .iter()
        .flat_map(|&col| c.class(col).iter().collect::<Vec<_>>())
        .collect();
    members
        .iter()
        .enumerate()
        .all(|(i, &u)| members[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Finds a maximum pseudocomplete coloring and classifies its multiplicity
/// profile against the structure a (weakly) critical graph must have. On a
/// graph that is not weakly critical the kind is `None` and no claim is
/// made.
#[allow(clippy::manual_div_ceil)] // the literal pattern counts read better
pub fn structure_coloring(g: &Graph, cfg: &SearchConfig) -> Result<Outcome<StructureReport>> {
    let result: PsiResult = match psi(g, cfg) {
        Outcome::Exact(r) => r,
        Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
    };
    let (omega, _) = clique_number(g);
    let n = g.n();
    let psi_v = result.value as usize;
    let critical = 2 * psi_v == omega + n;
    let weakly = psi_v == (omega + n) / 2;
    if !weakly {
        return Ok(Outcome::Exact(StructureReport {
            kind: StructureKind::None,
            coloring: None,
            profile: None,
            edge_bound_times8: None,
            edge_bound_satisfied: None,
        }));
    }

    let witness = result.witness;
    let profile = multiplicity_profile(g, &witness)?;
    let kind = if critical {
        let expected = profile.n_k(1) == omega
            && profile.n_k(2) == (n - omega) / 2
            && profile.max_multiplicity() <= 2
            && classes_form_clique(g, &witness, &profile.clique_colors);
        if !expected {
            return Err(Error::Internal(format!(
                "maximum coloring of the critical graph {g:?} lacks the forced profile: {profile:?}"
            )));
        }
        StructureKind::Critical
    } else if profile.n_k(1) == omega
        && profile.n_k(3) == 1
        && n >= omega + 3
        && profile.n_k(2) == (n - omega - 3) / 2
        && profile.max_multiplicity() <= 3
        && classes_form_clique(g, &witness, &profile.clique_colors)
    {
        StructureKind::WeaklyType1
    } else if profile.n_k(1) == omega - 1
        && profile.n_k(2) == (n - omega + 1) / 2
        && profile.max_multiplicity() <= 2
        && classes_form_clique(g, &witness, &profile.clique_colors)
    {
        StructureKind::WeaklyType2
    } else {
        return Err(Error::Internal(format!(
            "maximum coloring of the weakly critical graph {g:?} fits neither pattern: {profile:?}"
        )));
    };

    let bound = if critical {
        ((n + omega) * (n + omega - 2)) as u64
    } else {
        ((n + omega - 1) * (n + omega - 3)) as u64
    };
    Ok(Outcome::Exact(StructureReport {
        kind,
        edge_bound_satisfied: Some(8 * g.edge_count() as u64 >= bound),
        edge_bound_times8: Some(bound),
        coloring: Some(witness),
        profile: Some(profile),
    }))
}

/// For a maximum coloring of a critical graph with the forced profile,
/// identifying the two same-colored vertices of every doubled color must
/// collapse the graph onto a complete graph on `ω + (n-ω)/2` vertices.
pub fn contraction_complete_check(g: &Graph, c: &Coloring) -> Result<bool> {
    match is_pseudocomplete(g, c)? {
        crate::coloring::PseudoCheck::Complete => {}
        crate::coloring::PseudoCheck::MissingPair(a, b) => {
            return Err(Error::Contract(format!(
                "coloring is not pseudocomplete: pair {{{a},{b}}} uncovered"
            )))
        }
    }
    let (omega, _) = clique_number(g);
    let profile = multiplicity_profile(g, c)?;
    if profile.n_k(1) != omega
        || profile.n_k(2) != (g.n() - omega) / 2
        || profile.max_multiplicity() > 2
        || c.num_colors() as usize != omega + (g.n() - omega) / 2
    {
        return Err(Error::Contract(format!(
            "coloring does not carry the critical profile: {profile:?}"
        )));
    }
    // Contract each color class to one node; the result is complete iff
    // every pair of classes is joined by at least one edge.
    let t = c.num_colors();
    for a in 1..=t {
        for b in a + 1..=t {
            let class_a = c.class(a);
            let covered = class_a
                .iter()
                .any(|u| g.neighbors(u) & c.class(b).mask() != 0);
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Builds a pseudocomplete coloring of `g ∇ h` with `Ψ(g) + Ψ(h) + 1`
/// colors out of two not-weakly-critical witnesses, certifying that Ψ is
/// not additive for the pair.
pub fn boost_coloring(
    g: &Graph,
    h: &Graph,
    wg: &WitnessPair,
    wh: &WitnessPair,
    cfg: &SearchConfig,
) -> Result<Coloring> {
    for (graph, w, name) in [(g, wg, "first"), (h, wh, "second")] {
        if w.variant != WitnessVariant::NotWeaklyCritical {
            return Err(Error::Contract(format!(
                "{name} witness has variant {:?}, need NotWeaklyCritical",
                w.variant
            )));
        }
        validate_witness(graph, w, cfg)?;
    }

    // A is the side with the smaller half-complement; B supplies the spare
    // vertices that swap colors across the join.
    let swap = wg.xi > wh.xi;
    let (a, wa, a_off, b, wb, b_off) = if swap {
        (h, wh, g.n(), g, wg, 0)
    } else {
        (g, wg, 0, h, wh, g.n())
    };

    let p = wa.xi as usize;
    debug_assert!(p >= 1, "a valid weak witness forces xi >= 1");
    let spare_b: Vec<usize> = wb.removable_set.iter().take(p).collect();
    debug_assert_eq!(spare_b.len(), p);

    let psi_b = wb.coloring.num_colors();
    let n = g.n() + h.n();
    let mut colors = vec![0u32; n];

    // B keeps its maximum coloring except on the spare vertices.
    for v in 0..b.n() {
        colors[b_off + v] = wb.coloring.color(v);
    }
    // A's complement of M1 splits into P0 (size p) and P1 (size p or p+1);
    // P1 takes the paired colors, P0 swaps colors with B's spare set.
    let rest_a: Vec<usize> = (0..a.n()).filter(|&v| !wa.m1.contains(v)).collect();
    debug_assert!(rest_a.len() == 2 * p || rest_a.len() == 2 * p + 1);
    let (p0, p1) = rest_a.split_at(p);
    for (j, &v) in p1.iter().enumerate() {
        let pair_color = psi_b + 1 + if j < p { j as u32 } else { 0 };
        colors[a_off + v] = pair_color;
    }
    for (j, &v) in p0.iter().enumerate() {
        colors[a_off + v] = wb.coloring.color(spare_b[j]);
        colors[b_off + spare_b[j]] = psi_b + 1 + j as u32;
    }
    // M1 gets a fresh maximum pseudocomplete coloring of its own.
    let (m1_graph, m1_map) = a.induced(wa.m1);
    let m1_coloring = match psi(&m1_graph, cfg) {
        Outcome::Exact(r) => r,
        Outcome::Inconclusive(i) => {
            return Err(Error::Internal(format!(
                "budget died coloring the witness core after {} nodes",
                i.nodes_spent
            )))
        }
    };
    debug_assert_eq!(m1_coloring.value, wa.psi_m1);
    for (new_idx, &old) in m1_map.iter().enumerate() {
        colors[a_off + old] = psi_b + p as u32 + m1_coloring.witness.color(new_idx);
    }

    let total = psi_b + p as u32 + wa.psi_m1;
    let psi_a = wa.coloring.num_colors();
    debug_assert_eq!(total, psi_a + psi_b + 1);
    validated(&join(g, h)?, colors, total, "boost_coloring")
}
