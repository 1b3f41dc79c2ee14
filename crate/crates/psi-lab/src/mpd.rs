//! The minimal psi-drop function mpd, criticality and weak criticality by
//! two independent routes, and the additivity criterion for joins.
//!
//! `mpd_G(k)` is the smallest drop `Ψ(G) - Ψ(G∖X)` over all k-vertex sets
//! X; a set attaining the minimum is a realizer. A graph is critical when
//! `mpd_G(k) >= ⌈k/2⌉` for all k, and weakly critical under the floor
//! variant. Both notions also have closed numerical forms — `2Ψ = ω + n`
//! and `Ψ = ⌊(ω+n)/2⌋` — and every report here computes the definition and
//! the formula independently and insists they agree.

use serde::Serialize;

use crate::clique::clique_number;
use crate::error::{Error, Result};
use crate::graph::{join, Graph, VertexSet};
use crate::solver::{psi, psi_budgeted, InconclusiveInfo, NodeBudget, Outcome, SearchConfig};
use crate::subsets::{subset_table, SubsetTable, MAX_TABLE_ORDER};

/// One row of the psi-drop profile: the minimum drop at `k` and the
/// lexicographically least vertex set realizing it.
#[derive(Clone, Debug, Serialize)]
pub struct MpdEntry {
    pub k: usize,
    pub value: u32,
    pub realizer: VertexSet,
}

/// `mpd_G(k)` for every `k` in `0..=n`.
#[derive(Clone, Debug, Serialize)]
pub struct MpdProfile {
    pub psi: u32,
    pub entries: Vec<MpdEntry>,
}

impl MpdProfile {
    pub fn value(&self, k: usize) -> u32 {
        self.entries[k].value
    }

    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }

    /// First `k` with `mpd(k) < ⌈k/2⌉`, if any.
    pub fn critical_failure(&self) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.value < (e.k as u32).div_ceil(2))
            .map(|e| e.k)
    }

    /// First `k` with `mpd(k) < ⌊k/2⌋`, if any.
    pub fn weakly_critical_failure(&self) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.value < e.k as u32 / 2)
            .map(|e| e.k)
    }
}

/// Walks all k-subsets of `0..n` in lexicographic order until `f` returns
/// false.
fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(VertexSet) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(idx.iter().copied().collect()) {
            return;
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn profile_from_table(g: &Graph, table: &SubsetTable) -> MpdProfile {
    let n = g.n();
    let full = g.vertex_mask();
    let psi_full = table.psi_of(VertexSet::from_mask(full));
    let mut entries = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut best: Option<(u32, VertexSet)> = None;
        for_each_k_subset(n, k, |x| {
            let rest = VertexSet::from_mask(full & !x.mask());
            let drop = psi_full - table.psi_of(rest);
            // Strict improvement keeps the first (lexicographically least)
            // realizer of the eventual minimum.
            if best.is_none_or(|(v, _)| drop < v) {
                best = Some((drop, x));
            }
            // A zero drop cannot be beaten, so the walk can stop there.
            drop > 0
        });
        let (value, realizer) = best.expect("k <= n always yields a subset");
        entries.push(MpdEntry { k, value, realizer });
    }
    MpdProfile { psi: psi_full, entries }
}

/// Computes `mpd_G(k)` for all `k` at once. Up to [`MAX_TABLE_ORDER`]
/// vertices this rides the per-subset table; beyond that each k falls back
/// to direct enumeration, one shared node budget per k.
pub fn mpd_profile(g: &Graph, cfg: &SearchConfig) -> Result<Outcome<MpdProfile>> {
    if g.n() <= MAX_TABLE_ORDER {
        return Ok(subset_table(g, cfg)?.map(|table| profile_from_table(g, &table)));
    }
    let psi_full = match psi(g, cfg) {
        Outcome::Exact(r) => r.value,
        Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
    };
    let mut entries = Vec::with_capacity(g.n() + 1);
    for k in 0..=g.n() {
        match mpd_direct(g, k, psi_full, cfg) {
            Outcome::Exact((value, realizer)) => entries.push(MpdEntry { k, value, realizer }),
            Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
        }
    }
    Ok(Outcome::Exact(MpdProfile { psi: psi_full, entries }))
}

/// `mpd_G(k)` with its lexicographically least realizer.
pub fn mpd(g: &Graph, k: usize, cfg: &SearchConfig) -> Result<Outcome<(u32, VertexSet)>> {
    if k > g.n() {
        return Err(Error::Domain(format!(
            "mpd index k={k} out of range 0..={}",
            g.n()
        )));
    }
    if g.n() <= MAX_TABLE_ORDER {
        return Ok(mpd_profile(g, cfg)?.map(|p| {
            let e = &p.entries[k];
            (e.value, e.realizer)
        }));
    }
    let psi_full = match psi(g, cfg) {
        Outcome::Exact(r) => r.value,
        Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
    };
    Ok(mpd_direct(g, k, psi_full, cfg))
}

/// Streaming minimum over all k-subsets, every Ψ drawn from one shared
/// budget pool so the whole enumeration degrades to an explicit
/// inconclusive answer instead of running away.
fn mpd_direct(
    g: &Graph,
    k: usize,
    psi_full: u32,
    cfg: &SearchConfig,
) -> Outcome<(u32, VertexSet)> {
    let budget = NodeBudget::new(cfg.node_budget);
    let mut best: Option<(u32, VertexSet)> = None;
    let mut exhausted = false;
    for_each_k_subset(g.n(), k, |x| {
        let keep = VertexSet::from_mask(g.vertex_mask() & !x.mask());
        let (sub, _) = g.induced(keep);
        match psi_budgeted(&sub, None, cfg.seed, &budget) {
            Outcome::Exact(r) => {
                let drop = psi_full - r.value;
                if best.is_none_or(|(v, _)| drop < v) {
                    best = Some((drop, x));
                }
                drop > 0
            }
            Outcome::Inconclusive(_) => {
                exhausted = true;
                false
            }
        }
    });
    if exhausted {
        return Outcome::Inconclusive(InconclusiveInfo {
            lower: 0,
            upper: psi_full,
            nodes_spent: cfg.node_budget,
        });
    }
    Outcome::Exact(best.expect("k <= n always yields a subset"))
}

/// Criticality verdicts from both routes, which must agree.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalityReport {
    pub n: usize,
    pub omega: u32,
    pub psi: u32,
    pub critical_by_formula: bool,
    pub critical_by_mpd: bool,
    pub weakly_critical_by_formula: bool,
    pub weakly_critical_by_mpd: bool,
    /// First k violating the ceiling inequality, when not critical.
    pub critical_failing_k: Option<usize>,
    /// First k violating the floor inequality, when not weakly critical.
    pub weakly_failing_k: Option<usize>,
    pub profile: MpdProfile,
}

impl CriticalityReport {
    pub fn critical(&self) -> bool {
        self.critical_by_formula
    }

    pub fn weakly_critical(&self) -> bool {
        self.weakly_critical_by_formula
    }
}

/// Full criticality analysis. A disagreement between the definition route
/// and the formula route is a solver defect and comes back as an error.
pub fn criticality_report(g: &Graph, cfg: &SearchConfig) -> Result<Outcome<CriticalityReport>> {
    let profile = match mpd_profile(g, cfg)? {
        Outcome::Exact(p) => p,
        Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
    };
    let (omega, _) = clique_number(g);
    let omega = omega as u32;
    let n = g.n();
    let psi = profile.psi;

    let critical_failing_k = profile.critical_failure();
    let weakly_failing_k = profile.weakly_critical_failure();
    let report = CriticalityReport {
        n,
        omega,
        psi,
        critical_by_formula: 2 * psi == omega + n as u32,
        critical_by_mpd: critical_failing_k.is_none(),
        weakly_critical_by_formula: psi == (omega + n as u32) / 2,
        weakly_critical_by_mpd: weakly_failing_k.is_none(),
        critical_failing_k,
        weakly_failing_k,
        profile,
    };
    if report.critical_by_formula != report.critical_by_mpd {
        return Err(Error::Internal(format!(
            "criticality routes disagree on {g:?}: formula={} mpd={}",
            report.critical_by_formula, report.critical_by_mpd
        )));
    }
    if report.weakly_critical_by_formula != report.weakly_critical_by_mpd {
        return Err(Error::Internal(format!(
            "weak criticality routes disagree on {g:?}: formula={} mpd={}",
            report.weakly_critical_by_formula, report.weakly_critical_by_mpd
        )));
    }
    Ok(Outcome::Exact(report))
}

/// Is `g` critical? Same report as [`criticality_report`].
pub fn is_critical(g: &Graph, cfg: &SearchConfig) -> Result<Outcome<CriticalityReport>> {
    criticality_report(g, cfg)
}

/// Is `g` weakly critical? Same report as [`criticality_report`].
pub fn is_weakly_critical(g: &Graph, cfg: &SearchConfig) -> Result<Outcome<CriticalityReport>> {
    criticality_report(g, cfg)
}

/// One compared row of the additivity criterion table.
#[derive(Clone, Debug, Serialize)]
pub struct AdditivityRow {
    pub k: usize,
    pub mpd_g: u32,
    pub mpd_h: u32,
}

/// Result of the psi-drop additivity criterion for a pair of graphs.
#[derive(Clone, Debug, Serialize)]
pub struct AdditivityReport {
    /// `mpd_G(k) + mpd_H(k) >= k` for every `0 <= k <= min(|G|, |H|)`.
    pub holds: bool,
    /// First k where the criterion fails, when it fails.
    pub failing_k: Option<usize>,
    /// Smallest `k >= 1` with `mpd_G(k) + mpd_H(k) = k`, when one exists.
    pub equality_k: Option<usize>,
    pub table: Vec<AdditivityRow>,
    pub psi_g: u32,
    pub psi_h: u32,
    pub psi_join: u32,
    /// Direct check: `Ψ(G∇H) = Ψ(G) + Ψ(H)`.
    pub additive: bool,
}

/// Decides whether Ψ is additive for `g ∇ h` via the psi-drop criterion and
/// cross-checks the verdict against the directly computed Ψ of the join.
/// A mismatch between the two would falsify the criterion itself, so it
/// surfaces as a hard error rather than a report.
pub fn additivity_criterion(
    g: &Graph,
    h: &Graph,
    cfg: &SearchConfig,
) -> Result<Outcome<AdditivityReport>> {
    let pg = match mpd_profile(g, cfg)? {
        Outcome::Exact(p) => p,
        Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
    };
    let ph = match mpd_profile(h, cfg)? {
        Outcome::Exact(p) => p,
        Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
    };
    let joined = join(g, h)?;
    let psi_join = match psi(&joined, cfg) {
        Outcome::Exact(r) => r.value,
        Outcome::Inconclusive(i) => return Ok(Outcome::Inconclusive(i)),
    };

    let limit = g.n().min(h.n());
    let mut table = Vec::with_capacity(limit + 1);
    let mut failing_k = None;
    let mut equality_k = None;
    for k in 0..=limit {
        let (a, b) = (pg.value(k), ph.value(k));
        table.push(AdditivityRow { k, mpd_g: a, mpd_h: b });
        if failing_k.is_none() && (a + b) < k as u32 {
            failing_k = Some(k);
        }
        if equality_k.is_none() && k >= 1 && (a + b) == k as u32 {
            equality_k = Some(k);
        }
    }
    let holds = failing_k.is_none();
    let additive = psi_join == pg.psi + ph.psi;
    if holds != additive {
        return Err(Error::Internal(format!(
            "additivity criterion ({holds}) disagrees with direct Ψ computation ({additive}) \
             for {g:?} and {h:?}: Ψ(G)={}, Ψ(H)={}, Ψ(G∇H)={psi_join}",
            pg.psi, ph.psi
        )));
    }
    Ok(Outcome::Exact(AdditivityReport {
        holds,
        failing_k,
        equality_k,
        table,
        psi_g: pg.psi,
        psi_h: ph.psi,
        psi_join,
        additive,
    }))
}
