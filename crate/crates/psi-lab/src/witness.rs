//! Structural witnesses certifying that a graph is not critical or not
//! weakly critical.
//!
//! A graph fails weak criticality exactly when it contains nested induced
//! subgraphs `M1 ⊆ M2` with two extra vertices in `M2`, equal Ψ, and
//! `Ψ(G) = Ψ(M2) + ⌊|V∖M2|/2⌋`; failing criticality is the same picture
//! with one or two extra vertices and the ceiling. Alongside the pair, a
//! maximum coloring always leaves a removable vertex set `C` that carries
//! no last copy of any color, which the join constructions exploit.

use serde::Serialize;

use crate::coloring::{is_pseudocomplete, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::solver::{psi, Outcome, SearchConfig};
use crate::subsets::{subset_table, SubsetTable};

/// Largest order the witness searches accept; subset enumeration beyond
/// this is not worth certifying.
pub const MAX_WITNESS_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessVariant {
    NotWeaklyCritical,
    NotCritical,
}

/// A certificate that `g` is not (weakly) critical.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessPair {
    pub variant: WitnessVariant,
    pub m1: VertexSet,
    pub m2: VertexSet,
    pub psi_m1: u32,
    pub psi_m2: u32,
    /// `⌊|V∖M1|/2⌋`.
    pub xi: u32,
    /// Vertices a maximum coloring can spare: every color still appears on
    /// the complement. Size `xi+1` for the weak variant,
    /// `⌈|V∖M2|/2⌉ + |M2∖M1| - 1` for the critical variant.
    pub removable_set: VertexSet,
    /// The maximum pseudocomplete coloring the removable set refers to.
    pub coloring: Coloring,
}

fn check_order(g: &Graph) -> Result<()> {
    if g.n() > MAX_WITNESS_ORDER {
        return Err(Error::UnsupportedSize { n: g.n(), max: MAX_WITNESS_ORDER });
    }
    Ok(())
}

/// Subsets of `0..n` of the given size, in lexicographic order of their
/// ascending vertex sequences.
fn k_subsets(n: usize, k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().copied().collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// First `size` vertices, in ascending order, that are not the lowest-index
/// representative of their color class. Removing them keeps every color
/// present.
fn spare_vertices(coloring: &Coloring, size: usize) -> Option<VertexSet> {
    let mut representative = vec![false; coloring.n()];
    let mut seen = vec![false; coloring.num_colors() as usize + 1];
    for (v, flag) in representative.iter_mut().enumerate() {
        let c = coloring.color(v) as usize;
        if !seen[c] {
            seen[c] = true;
            *flag = true;
        }
    }
    let spare: Vec<usize> = (0..coloring.n()).filter(|&v| !representative[v]).collect();
    if spare.len() < size {
        return None;
    }
    Some(spare[..size].iter().copied().collect())
}

fn search_witness(
    g: &Graph,
    variant: WitnessVariant,
    cfg: &SearchConfig,
) -> Result<Outcome<Option<WitnessPair>>> {
    check_order(g)?;
    let n = g.n();
    let table = match subset_table(g, cfg)? {
        Outcome::Exact(t) => t,
        Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
    };
    let psi_g = table.psi_full();

    let deltas: &[usize] = match variant {
        WitnessVariant::NotWeaklyCritical => &[2],
        WitnessVariant::NotCritical => &[1, 2],
    };

    // M1 by decreasing size, mirroring the maximality argument; first hit
    // wins.
    for m1_size in (0..n).rev() {
        for m1 in k_subsets(n, m1_size) {
            let psi_m1 = table.psi_of(m1);
            for &delta in deltas {
                if m1_size + delta > n {
                    continue;
                }
                let complement: Vec<usize> =
                    (0..n).filter(|&v| !m1.contains(v)).collect();
                // A single added vertex certifies a genuine drop shortfall
                // only when |V∖M2| is even; with an odd outside the ceiling
                // absorbs the extra vertex and even critical graphs satisfy
                // the raw equalities.
                if delta == 1 && (n - m1_size - 1) % 2 == 1 {
                    continue;
                }
                for added in k_subsets(complement.len(), delta) {
                    let m2 = added
                        .iter()
                        .map(|i| complement[i])
                        .fold(m1, |acc, v| acc.union(VertexSet::singleton(v)));
                    let psi_m2 = table.psi_of(m2);
                    if psi_m1 != psi_m2 {
                        continue;
                    }
                    let outside = (n - m2.len()) as u32;
                    let target = match variant {
                        WitnessVariant::NotWeaklyCritical => psi_m2 + outside / 2,
                        WitnessVariant::NotCritical => psi_m2 + outside.div_ceil(2),
                    };
                    if psi_g != target {
                        continue;
                    }
                    return Ok(Outcome::Exact(Some(build_pair(
                        g, variant, m1, m2, psi_m1, psi_m2, &table, cfg,
                    )?)));
                }
            }
        }
    }
    Ok(Outcome::Exact(None))
}

#[allow(clippy::too_many_arguments)]
fn build_pair(
    g: &Graph,
    variant: WitnessVariant,
    m1: VertexSet,
    m2: VertexSet,
    psi_m1: u32,
    psi_m2: u32,
    table: &SubsetTable,
    cfg: &SearchConfig,
) -> Result<WitnessPair> {
    let n = g.n();
    let xi = ((n - m1.len()) / 2) as u32;
    let removable_size = match variant {
        WitnessVariant::NotWeaklyCritical => xi as usize + 1,
        WitnessVariant::NotCritical => {
            (n - m2.len()).div_ceil(2) + (m2.len() - m1.len()) - 1
        }
    };
    let coloring = match psi(g, cfg) {
        Outcome::Exact(r) => {
            debug_assert_eq!(r.value, table.psi_full());
            r.witness
        }
        Outcome::Inconclusive(i) => {
            return Err(Error::Internal(format!(
                "budget died re-deriving a witness coloring after {} nodes",
                i.nodes_spent
            )))
        }
    };
    let removable_set = spare_vertices(&coloring, removable_size).ok_or_else(|| {
        Error::Internal(format!(
            "no {removable_size} spare vertices in a maximum coloring of {g:?}"
        ))
    })?;
    Ok(WitnessPair {
        variant,
        m1,
        m2,
        psi_m1,
        psi_m2,
        xi,
        removable_set,
        coloring,
    })
}

/// Finds an `M1 ⊆ M2` certificate iff `g` is not weakly critical.
pub fn find_witness_not_weakly_critical(
    g: &Graph,
    cfg: &SearchConfig,
) -> Result<Outcome<Option<WitnessPair>>> {
    search_witness(g, WitnessVariant::NotWeaklyCritical, cfg)
}

/// Finds an `M1 ⊆ M2` certificate iff `g` is not critical.
pub fn find_witness_not_critical(
    g: &Graph,
    cfg: &SearchConfig,
) -> Result<Outcome<Option<WitnessPair>>> {
    search_witness(g, WitnessVariant::NotCritical, cfg)
}

/// Re-validates every claim a witness pair makes against `g` from scratch.
/// Used by the constructions that consume witnesses, and by tests.
pub fn validate_witness(g: &Graph, w: &WitnessPair, cfg: &SearchConfig) -> Result<()> {
    let n = g.n();
    let fail = |msg: String| Err(Error::Contract(msg));
    if !w.m1.is_subset_of(w.m2) || !w.m2.is_subset_of(VertexSet::full(n)) {
        return fail(format!("witness sets not nested in the graph: {} ⊆ {}", w.m1, w.m2));
    }
    let delta = w.m2.len() - w.m1.len();
    match w.variant {
        WitnessVariant::NotWeaklyCritical if delta != 2 => {
            return fail(format!("weak witness needs |M2∖M1| = 2, got {delta}"));
        }
        WitnessVariant::NotCritical if !(1..=2).contains(&delta) => {
            return fail(format!("critical witness needs 0 < |M2∖M1| <= 2, got {delta}"));
        }
        WitnessVariant::NotCritical if delta == 1 && (n - w.m2.len()) % 2 == 1 => {
            return fail("one-vertex step needs an even |V∖M2| to certify anything".into());
        }
        _ => {}
    }

    let psi_of = |s: VertexSet| -> Result<u32> {
        let (sub, _) = g.induced(s);
        match psi(&sub, cfg) {
            Outcome::Exact(r) => Ok(r.value),
            Outcome::Inconclusive(i) => Err(Error::Internal(format!(
                "witness validation ran out of budget after {} nodes",
                i.nodes_spent
            ))),
        }
    };
    let (p1, p2, pg) = (psi_of(w.m1)?, psi_of(w.m2)?, psi_of(VertexSet::full(n))?);
    if p1 != w.psi_m1 || p2 != w.psi_m2 {
        return fail(format!(
            "recorded Ψ values ({}, {}) differ from recomputed ({p1}, {p2})",
            w.psi_m1, w.psi_m2
        ));
    }
    if p1 != p2 {
        return fail(format!("Ψ(M1) = {p1} != {p2} = Ψ(M2)"));
    }
    let outside = (n - w.m2.len()) as u32;
    let target = match w.variant {
        WitnessVariant::NotWeaklyCritical => p2 + outside / 2,
        WitnessVariant::NotCritical => p2 + outside.div_ceil(2),
    };
    if pg != target {
        return fail(format!("Ψ(G) = {pg} but the witness accounts for {target}"));
    }
    if w.xi != ((n - w.m1.len()) / 2) as u32 {
        return fail(format!("xi = {} inconsistent with |V∖M1| = {}", w.xi, n - w.m1.len()));
    }

    if w.coloring.num_colors() != pg {
        return fail(format!(
            "witness coloring uses {} colors, Ψ(G) = {pg}",
            w.coloring.num_colors()
        ));
    }
    if !is_pseudocomplete(g, &w.coloring)?.is_complete() {
        return fail("witness coloring is not pseudocomplete".into());
    }
    let expected_size = match w.variant {
        WitnessVariant::NotWeaklyCritical => w.xi as usize + 1,
        WitnessVariant::NotCritical => (n - w.m2.len()).div_ceil(2) + delta - 1,
    };
    if w.removable_set.len() != expected_size {
        return fail(format!(
            "removable set has {} vertices, expected {expected_size}",
            w.removable_set.len()
        ));
    }
    if w.variant == WitnessVariant::NotWeaklyCritical && expected_size < 2 {
        return fail("weak-variant removable set must have at least 2 vertices".into());
    }
    // Every color must survive outside the removable set.
    let mut present = vec![false; pg as usize + 1];
    for v in 0..n {
        if !w.removable_set.contains(v) {
            present[w.coloring.color(v) as usize] = true;
        }
    }
    if let Some(c) = (1..=pg as usize).find(|&c| !present[c]) {
        return fail(format!("color {c} appears only inside the removable set"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{complete_graph, cycle_graph, path_graph};
    use crate::graph::join;

    fn weak(g: &Graph) -> Option<WitnessPair> {
        find_witness_not_weakly_critical(g, &SearchConfig::default())
            .unwrap()
            .expect_exact("witness search")
    }

    fn crit(g: &Graph) -> Option<WitnessPair> {
        find_witness_not_critical(g, &SearchConfig::default())
            .unwrap()
            .expect_exact("witness search")
    }

    #[test]
    fn cycle_has_both_witnesses() {
        let c8 = cycle_graph(8);
        let w = weak(&c8).expect("C8 is not weakly critical");
        validate_witness(&c8, &w, &SearchConfig::default()).unwrap();
        assert_eq!(w.m2.len() - w.m1.len(), 2);
        assert!(w.removable_set.len() >= 2);

        let w = crit(&c8).expect("C8 is not critical");
        validate_witness(&c8, &w, &SearchConfig::default()).unwrap();
    }

    #[test]
    fn path_is_weakly_critical_but_not_critical() {
        let p3 = path_graph(3);
        assert!(weak(&p3).is_none());
        let w = crit(&p3).expect("P3 is not critical");
        validate_witness(&p3, &w, &SearchConfig::default()).unwrap();
    }

    #[test]
    fn cliques_have_no_witnesses() {
        for n in 1..=5 {
            let k = complete_graph(n);
            assert!(weak(&k).is_none());
            assert!(crit(&k).is_none());
        }
    }

    #[test]
    fn joined_paths_are_critical() {
        let g = join(&path_graph(3), &path_graph(3)).unwrap();
        assert!(crit(&g).is_none());
        assert!(weak(&g).is_none());
    }

    #[test]
    fn validation_rejects_tampering() {
        let c8 = cycle_graph(8);
        let mut w = weak(&c8).unwrap();
        w.psi_m1 += 1;
        assert!(validate_witness(&c8, &w, &SearchConfig::default()).is_err());
    }

    #[test]
    fn oversize_is_rejected() {
        let g = Graph::empty(13).unwrap();
        assert!(matches!(
            find_witness_not_critical(&g, &SearchConfig::default()),
            Err(Error::UnsupportedSize { .. })
        ));
    }
}
