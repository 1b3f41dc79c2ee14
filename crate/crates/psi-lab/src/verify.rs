//! Claim-replay harness: every statement the toolkit rests on, runnable as
//! a named check over a corpus of graphs, with counterexample payloads on
//! failure.
//!
//! Checks are independent jobs; the harness fans each sweep out over a
//! rayon pool and assembles results deterministically. Failure payloads
//! carry graph6 strings so any failure is one CLI command away from replay.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::clique::clique_number;
use crate::constructions::{
    contraction_complete_check, join_coloring_lower, nabla_k_coloring, structure_coloring,
    StructureKind,
};
use crate::corpus::{named_instances, non_isomorphic_graphs};
use crate::error::{Error, Result};
use crate::graph::{join, nabla_k, Graph};
use crate::graph6::emit_graph6;
use crate::mpd::{mpd_profile, MpdProfile};
use crate::solver::{psi, psi_with_hint, Outcome, SearchConfig};
use crate::witness::{
    find_witness_not_critical, find_witness_not_weakly_critical, validate_witness,
};

/// Stable identifiers of every check the harness knows.
pub const CHECK_IDS: &[&str] = &[
    "lemma-2-upper-bound",
    "corollary-4-join-superadditivity",
    "lemma-10-criticality-formula",
    "thm-join-bracket",
    "thm-mpd-additivity-criterion",
    "thm-additive-when-critical",
    "remark-p3-c8",
    "thm-crit-join-crit",
    "remark-p3-p3",
    "thm-critical-structure+edge-bound",
    "def-weak-crit-equivalence",
    "cor-wc-plus-c",
    "thm-weakly-critical-structure+edge-bound",
    "thm-witness-iff-not-weakly-critical",
    "thm-witness-iff-not-critical",
    "thm-additive-implies-one-weakly-critical",
    "thm-gjoing-2psi-iff-critical",
    "eqn-psi-gjoing-omega-plus-n",
    "thm-nablak-critical-parity",
    "thm-nablak-always-weakly-critical",
    "thm-nablak-kpsi-even",
    "thm-nablak-kpsi-odd",
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckFailure {
    /// graph6 of the instance(s) involved, enough to replay the claim.
    pub graphs: Vec<String>,
    pub observed: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub scope: String,
    pub passed: bool,
    pub failures: Vec<CheckFailure>,
    /// Instances the node budget could not decide; nonempty means the run
    /// covered the corpus only partially.
    pub inconclusive: Vec<String>,
    pub runtime_ms: u128,
}

/// Where a graph sits in the criticality hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CriticalityClass {
    Critical,
    WeaklyCriticalOnly,
    NotWeaklyCritical,
}

fn classify(psi: u32, omega: usize, n: usize) -> CriticalityClass {
    if 2 * psi as usize == omega + n {
        CriticalityClass::Critical
    } else if psi as usize == (omega + n) / 2 {
        CriticalityClass::WeaklyCriticalOnly
    } else {
        CriticalityClass::NotWeaklyCritical
    }
}

enum SweepItem {
    Pass,
    Fail(CheckFailure),
    Undecided(String),
}

/// One record of the additive-pair scan.
#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub g: String,
    pub h: String,
    pub additive: bool,
    pub class_g: CriticalityClass,
    pub class_h: CriticalityClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdditiveScan {
    pub pairs_examined: usize,
    pub additive_pairs: usize,
    /// Additive pairs with both operands not weakly critical. Must be empty.
    pub violations: Vec<PairRecord>,
    /// Counts of (class_g, class_h) combinations among additive pairs.
    pub class_combinations: BTreeMap<String, usize>,
    pub inconclusive: Vec<String>,
}

/// The check runner: a corpus, a search configuration, sweep caps, and
/// caches shared across checks.
pub struct Harness {
    corpus: Vec<Graph>,
    cfg: SearchConfig,
    /// Pair sweeps skip pairs with combined order above this.
    pub max_pair_order: usize,
    /// k-fold sweeps skip instances with `k * n` above this.
    pub max_nabla_order: usize,
    /// Fault injection for vacuousness tests: added to every Ψ value the
    /// checks consume. Zero in real runs.
    psi_delta: i64,
    psi_memo: Mutex<HashMap<String, Outcome<u32>>>,
    profile_memo: Mutex<HashMap<String, Outcome<MpdProfile>>>,
    omega_memo: Mutex<HashMap<String, usize>>,
}

impl Harness {
    /// Harness over the embedded corpus: every graph on 1..=6 vertices up
    /// to isomorphism, plus the named instances.
    pub fn embedded(cfg: SearchConfig) -> Self {
        let mut corpus = non_isomorphic_graphs(6);
        corpus.extend(named_instances());
        Self::with_corpus(corpus, cfg)
    }

    pub fn with_corpus(corpus: Vec<Graph>, cfg: SearchConfig) -> Self {
        Harness {
            corpus,
            cfg,
            max_pair_order: 10,
            max_nabla_order: 20,
            psi_delta: 0,
            psi_memo: Mutex::new(HashMap::new()),
            profile_memo: Mutex::new(HashMap::new()),
            omega_memo: Mutex::new(HashMap::new()),
        }
    }

    /// Returns a harness whose Ψ values are shifted by `delta`, for tests
    /// that prove the checks are not vacuous.
    pub fn with_psi_delta(mut self, delta: i64) -> Self {
        self.psi_delta = delta;
        self
    }

    pub fn corpus(&self) -> &[Graph] {
        &self.corpus
    }

    fn key(g: &Graph) -> String {
        emit_graph6(g).expect("harness graphs stay within graph6 range")
    }

    fn label_of(g: &Graph) -> String {
        match g.label() {
            Some(l) => format!("{} ({l})", Self::key(g)),
            None => Self::key(g),
        }
    }

    /// Ψ of `g`, memoized; the injected delta is applied on the way out.
    pub fn psi_of(&self, g: &Graph) -> Outcome<u32> {
        let key = Self::key(g);
        if let Some(hit) = self.psi_memo.lock().unwrap().get(&key) {
            return self.apply_delta(hit.clone());
        }
        let outcome = psi(g, &self.cfg).map(|r| r.value);
        self.psi_memo.lock().unwrap().insert(key, outcome.clone());
        self.apply_delta(outcome)
    }

    /// Ψ of `g ∇ h`, seeded with the constructive lower-bound coloring so
    /// self-joins and near-tight instances close without search.
    pub fn psi_of_join(&self, g: &Graph, h: &Graph) -> Result<Outcome<u32>> {
        let joined = join(g, h)?;
        let key = Self::key(&joined);
        if let Some(hit) = self.psi_memo.lock().unwrap().get(&key) {
            return Ok(self.apply_delta(hit.clone()));
        }
        let hint = join_coloring_lower(g, h)?;
        let outcome = psi_with_hint(&joined, &hint, &self.cfg)?.map(|r| r.value);
        self.psi_memo.lock().unwrap().insert(key, outcome.clone());
        Ok(self.apply_delta(outcome))
    }

    fn apply_delta(&self, o: Outcome<u32>) -> Outcome<u32> {
        o.map(|v| (v as i64 + self.psi_delta).max(0) as u32)
    }

    fn profile_of(&self, g: &Graph) -> Result<Outcome<MpdProfile>> {
        let key = Self::key(g);
        if let Some(hit) = self.profile_memo.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let outcome = mpd_profile(g, &self.cfg)?;
        self.profile_memo.lock().unwrap().insert(key, outcome.clone());
        Ok(outcome)
    }

    fn omega_of(&self, g: &Graph) -> usize {
        let key = Self::key(g);
        if let Some(&hit) = self.omega_memo.lock().unwrap().get(&key) {
            return hit;
        }
        let (omega, _) = clique_number(g);
        self.omega_memo.lock().unwrap().insert(key, omega);
        omega
    }

    fn class_of(&self, g: &Graph) -> Outcome<CriticalityClass> {
        self.psi_of(g)
            .map(|psi| classify(psi, self.omega_of(g), g.n()))
    }

    /// Index pairs `(i, j)`, `i <= j`, within the combined-order cap.
    fn pair_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.corpus.len() {
            for j in i..self.corpus.len() {
                if self.corpus[i].n() + self.corpus[j].n() <= self.max_pair_order {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn nabla_instances(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.corpus.len() {
            for k in 2..=5 {
                if self.corpus[i].n() * k <= self.max_nabla_order {
                    out.push((i, k));
                }
            }
        }
        out
    }

    fn sweep<T: Sync>(
        &self,
        items: &[T],
        f: impl Fn(&T) -> SweepItem + Sync + Send,
    ) -> (Vec<CheckFailure>, Vec<String>) {
        let results: Vec<SweepItem> = items.par_iter().map(f).collect();
        let mut failures = Vec::new();
        let mut undecided = Vec::new();
        for item in results {
            match item {
                SweepItem::Pass => {}
                SweepItem::Fail(f) => failures.push(f),
                SweepItem::Undecided(g) => undecided.push(g),
            }
        }
        (failures, undecided)
    }

    /// Runs one catalog check.
    pub fn run_check(&self, check_id: &str) -> Result<CheckResult> {
        if !CHECK_IDS.contains(&check_id) {
            return Err(Error::UnknownCheck(check_id.to_string()));
        }
        let start = Instant::now();
        let (scope, failures, inconclusive) = self.dispatch(check_id)?;
        Ok(CheckResult {
            check_id: check_id.to_string(),
            scope,
            passed: failures.is_empty(),
            failures,
            inconclusive,
            runtime_ms: start.elapsed().as_millis(),
        })
    }

    /// Runs the whole catalog; results sorted by check id.
    pub fn run_all(&self) -> Result<Vec<CheckResult>> {
        let mut results = CHECK_IDS
            .par_iter()
            .map(|id| self.run_check(id))
            .collect::<Result<Vec<_>>>()?;
        results.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        Ok(results)
    }

    fn dispatch(&self, id: &str) -> Result<(String, Vec<CheckFailure>, Vec<String>)> {
        let graphs_scope = format!("{} corpus graphs", self.corpus.len());
        let pairs = self.pair_indices();
        let pairs_scope = format!(
            "{} corpus pairs with combined order <= {}",
            pairs.len(),
            self.max_pair_order
        );
        macro_rules! undecided {
            ($g6:expr, $o:expr) => {
                match $o {
                    Outcome::Exact(v) => v,
                    Outcome::Inconclusive(_) => return SweepItem::Undecided($g6),
                }
            };
        }

        let out = match id {
            "lemma-2-upper-bound" => {
                let (f, u) = self.sweep(&self.corpus, |g| {
                    let g6 = Self::label_of(g);
                    let psi = undecided!(g6.clone(), self.psi_of(g));
                    let bound = ((self.omega_of(g) + g.n()) / 2) as u32;
                    if psi <= bound {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![g6],
                            observed: format!("psi = {psi}"),
                            expected: format!("psi <= floor((omega+n)/2) = {bound}"),
                        })
                    }
                });
                (graphs_scope, f, u)
            }
            "corollary-4-join-superadditivity" => {
                let (f, u) = self.sweep(&pairs, |&(i, j)| {
                    let (g, h) = (&self.corpus[i], &self.corpus[j]);
                    let g6 = format!("{} | {}", Self::label_of(g), Self::label_of(h));
                    let pg = undecided!(g6.clone(), self.psi_of(g));
                    let ph = undecided!(g6.clone(), self.psi_of(h));
                    let pj = match self.psi_of_join(g, h) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(e) => {
                            return SweepItem::Fail(CheckFailure {
                                graphs: vec![g6],
                                observed: format!("error: {e}"),
                                expected: "join psi computable".into(),
                            })
                        }
                    };
                    if pg + ph <= pj {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![Self::key(g), Self::key(h)],
                            observed: format!("psi(G)+psi(H) = {} > {pj} = psi(join)", pg + ph),
                            expected: "psi(G)+psi(H) <= psi(G∇H)".into(),
                        })
                    }
                });
                (pairs_scope, f, u)
            }
            "lemma-10-criticality-formula" => {
                let (f, u) = self.sweep(&self.corpus, |g| {
                    let g6 = Self::label_of(g);
                    let profile = match self.profile_of(g) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(e) => {
                            return SweepItem::Fail(CheckFailure {
                                graphs: vec![g6],
                                observed: format!("error: {e}"),
                                expected: "mpd profile computable".into(),
                            })
                        }
                    };
                    let by_mpd = profile.critical_failure().is_none();
                    let psi = undecided!(g6.clone(), self.psi_of(g));
                    let by_formula = 2 * psi as usize == self.omega_of(g) + g.n();
                    if by_mpd == by_formula {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![g6],
                            observed: format!(
                                "mpd route says critical={by_mpd}, formula says {by_formula}"
                            ),
                            expected: "both criticality routes agree".into(),
                        })
                    }
                });
                (graphs_scope, f, u)
            }
            "thm-join-bracket" => {
                let (f, u) = self.sweep(&pairs, |&(i, j)| {
                    let (g, h) = (&self.corpus[i], &self.corpus[j]);
                    let g6 = format!("{} | {}", Self::label_of(g), Self::label_of(h));
                    let pj = match self.psi_of_join(g, h) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(e) => {
                            return SweepItem::Fail(CheckFailure {
                                graphs: vec![g6],
                                observed: format!("error: {e}"),
                                expected: "join psi computable".into(),
                            })
                        }
                    };
                    let (og, oh) = (self.omega_of(g), self.omega_of(h));
                    let m = (og + h.n()).min(oh + g.n()) as u32;
                    let upper = ((og + oh + g.n() + h.n()) / 2) as u32;
                    let witness = match join_coloring_lower(g, h) {
                        Ok(c) => c.num_colors(),
                        Err(e) => {
                            return SweepItem::Fail(CheckFailure {
                                graphs: vec![Self::key(g), Self::key(h)],
                                observed: format!("lower-bound coloring failed: {e}"),
                                expected: "constructive coloring with m colors".into(),
                            })
                        }
                    };
                    if m <= pj && pj <= upper && witness == m {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![Self::key(g), Self::key(h)],
                            observed: format!("psi(join)={pj}, construction={witness} colors"),
                            expected: format!("{m} <= psi(join) <= {upper}, construction = {m}"),
                        })
                    }
                });
                (pairs_scope, f, u)
            }
            "thm-mpd-additivity-criterion" => {
                let (f, u) = self.sweep(&pairs, |&(i, j)| {
                    let (g, h) = (&self.corpus[i], &self.corpus[j]);
                    let g6 = format!("{} | {}", Self::label_of(g), Self::label_of(h));
                    let pg = match self.profile_of(g) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    let ph = match self.profile_of(h) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    let pj = match self.psi_of_join(g, h) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    let limit = g.n().min(h.n());
                    let holds = (0..=limit).all(|k| pg.value(k) + ph.value(k) >= k as u32);
                    let additive = pj == pg.psi + ph.psi;
                    if holds == additive {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![Self::key(g), Self::key(h)],
                            observed: format!("criterion holds={holds}, additive={additive}"),
                            expected: "criterion iff additive".into(),
                        })
                    }
                });
                (pairs_scope, f, u)
            }
            "thm-additive-when-critical" => {
                let (f, u) = self.sweep(&pairs, |&(i, j)| {
                    let (g, h) = (&self.corpus[i], &self.corpus[j]);
                    let g6 = format!("{} | {}", Self::label_of(g), Self::label_of(h));
                    let cg = undecided!(g6.clone(), self.class_of(g));
                    let ch = undecided!(g6.clone(), self.class_of(h));
                    if cg != CriticalityClass::Critical || ch != CriticalityClass::Critical {
                        return SweepItem::Pass;
                    }
                    let pg = undecided!(g6.clone(), self.psi_of(g));
                    let ph = undecided!(g6.clone(), self.psi_of(h));
                    let pj = match self.psi_of_join(g, h) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    if pj == pg + ph {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![Self::key(g), Self::key(h)],
                            observed: format!("psi(join) = {pj}"),
                            expected: format!("critical pair must be additive: {}", pg + ph),
                        })
                    }
                });
                (pairs_scope, f, u)
            }
            "remark-p3-c8" => self.check_remark_p3_c8()?,
            "thm-crit-join-crit" => {
                let (f, u) = self.sweep(&pairs, |&(i, j)| {
                    let (g, h) = (&self.corpus[i], &self.corpus[j]);
                    let g6 = format!("{} | {}", Self::label_of(g), Self::label_of(h));
                    let cg = undecided!(g6.clone(), self.class_of(g));
                    let ch = undecided!(g6.clone(), self.class_of(h));
                    if cg != CriticalityClass::Critical || ch != CriticalityClass::Critical {
                        return SweepItem::Pass;
                    }
                    let joined = match join(g, h) {
                        Ok(j) => j,
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    let pj = match self.psi_of_join(g, h) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    let class = classify(pj, self.omega_of(&joined), joined.n());
                    if class == CriticalityClass::Critical {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![Self::key(g), Self::key(h)],
                            observed: format!("join class {class:?}"),
                            expected: "join of critical graphs is critical".into(),
                        })
                    }
                });
                (pairs_scope, f, u)
            }
            "remark-p3-p3" => self.check_remark_p3_p3()?,
            "thm-critical-structure+edge-bound" => {
                let (f, u) = self.sweep(&self.corpus, |g| self.structure_item(g, true));
                (format!("critical graphs among {graphs_scope}"), f, u)
            }
            "def-weak-crit-equivalence" => {
                let (f, u) = self.sweep(&self.corpus, |g| {
                    let g6 = Self::label_of(g);
                    let profile = match self.profile_of(g) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    let by_mpd = profile.weakly_critical_failure().is_none();
                    let psi = undecided!(g6.clone(), self.psi_of(g));
                    let by_formula = psi as usize == (self.omega_of(g) + g.n()) / 2;
                    if by_mpd == by_formula {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![g6],
                            observed: format!(
                                "mpd route says weakly critical={by_mpd}, formula says {by_formula}"
                            ),
                            expected: "both weak-criticality routes agree".into(),
                        })
                    }
                });
                (graphs_scope, f, u)
            }
            "cor-wc-plus-c" => {
                let (f, u) = self.sweep(&pairs, |&(i, j)| {
                    let (g, h) = (&self.corpus[i], &self.corpus[j]);
                    let g6 = format!("{} | {}", Self::label_of(g), Self::label_of(h));
                    let cg = undecided!(g6.clone(), self.class_of(g));
                    let ch = undecided!(g6.clone(), self.class_of(h));
                    let applies = (cg == CriticalityClass::Critical
                        && ch != CriticalityClass::NotWeaklyCritical)
                        || (ch == CriticalityClass::Critical
                            && cg != CriticalityClass::NotWeaklyCritical);
                    if !applies {
                        return SweepItem::Pass;
                    }
                    let pg = undecided!(g6.clone(), self.psi_of(g));
                    let ph = undecided!(g6.clone(), self.psi_of(h));
                    let pj = match self.psi_of_join(g, h) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    if pj == pg + ph {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![Self::key(g), Self::key(h)],
                            observed: format!("psi(join) = {pj}"),
                            expected: format!(
                                "critical + weakly critical pair must be additive: {}",
                                pg + ph
                            ),
                        })
                    }
                });
                (pairs_scope, f, u)
            }
            "thm-weakly-critical-structure+edge-bound" => {
                let (f, u) = self.sweep(&self.corpus, |g| self.structure_item(g, false));
                (
                    format!("weakly-critical-not-critical graphs among {graphs_scope}"),
                    f,
                    u,
                )
            }
            "thm-witness-iff-not-weakly-critical" => {
                let (f, u) = self.sweep(&self.corpus, |g| self.witness_item(g, true));
                (graphs_scope, f, u)
            }
            "thm-witness-iff-not-critical" => {
                let (f, u) = self.sweep(&self.corpus, |g| self.witness_item(g, false));
                (graphs_scope, f, u)
            }
            "thm-additive-implies-one-weakly-critical" => {
                let (f, u) = self.sweep(&pairs, |&(i, j)| {
                    let (g, h) = (&self.corpus[i], &self.corpus[j]);
                    let g6 = format!("{} | {}", Self::label_of(g), Self::label_of(h));
                    let pg = undecided!(g6.clone(), self.psi_of(g));
                    let ph = undecided!(g6.clone(), self.psi_of(h));
                    let pj = match self.psi_of_join(g, h) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    if pj != pg + ph {
                        return SweepItem::Pass;
                    }
                    let cg = undecided!(g6.clone(), self.class_of(g));
                    let ch = undecided!(g6.clone(), self.class_of(h));
                    if cg != CriticalityClass::NotWeaklyCritical
                        || ch != CriticalityClass::NotWeaklyCritical
                    {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![Self::key(g), Self::key(h)],
                            observed: "additive pair with neither operand weakly critical".into(),
                            expected: "additivity forces one weakly critical operand".into(),
                        })
                    }
                });
                (pairs_scope, f, u)
            }
            "thm-gjoing-2psi-iff-critical" => {
                let (f, u) = self.sweep(&self.corpus, |g| {
                    let g6 = Self::label_of(g);
                    let pg = undecided!(g6.clone(), self.psi_of(g));
                    let pj = match self.psi_of_join(g, g) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    let critical =
                        undecided!(g6.clone(), self.class_of(g)) == CriticalityClass::Critical;
                    if (pj == 2 * pg) == critical {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![g6],
                            observed: format!(
                                "psi(G∇G)={pj}, 2psi(G)={}, critical={critical}",
                                2 * pg
                            ),
                            expected: "psi(G∇G) = 2psi(G) iff G critical".into(),
                        })
                    }
                });
                (graphs_scope, f, u)
            }
            "eqn-psi-gjoing-omega-plus-n" => {
                let (f, u) = self.sweep(&self.corpus, |g| {
                    let g6 = Self::label_of(g);
                    let pj = match self.psi_of_join(g, g) {
                        Ok(o) => undecided!(g6.clone(), o),
                        Err(_) => return SweepItem::Undecided(g6),
                    };
                    let target = (self.omega_of(g) + g.n()) as u32;
                    // The self-join is itself always critical.
                    let joined = join(g, g).expect("self-join fits");
                    let join_critical = 2 * pj as usize == self.omega_of(&joined) + joined.n();
                    if pj == target && join_critical {
                        SweepItem::Pass
                    } else {
                        SweepItem::Fail(CheckFailure {
                            graphs: vec![g6],
                            observed: format!("psi(G∇G)={pj}, join critical={join_critical}"),
                            expected: format!("psi(G∇G) = omega+n = {target}, join critical"),
                        })
                    }
                });
                (graphs_scope, f, u)
            }
            "thm-nablak-critical-parity"
            | "thm-nablak-always-weakly-critical"
            | "thm-nablak-kpsi-even"
            | "thm-nablak-kpsi-odd" => self.nabla_check(id)?,
            _ => return Err(Error::UnknownCheck(id.to_string())),
        };
        Ok(out)
    }

    fn structure_item(&self, g: &Graph, want_critical: bool) -> SweepItem {
        let g6 = Self::label_of(g);
        let class = match self.class_of(g) {
            Outcome::Exact(c) => c,
            Outcome::Inconclusive(_) => return SweepItem::Undecided(g6),
        };
        let applies = match want_critical {
            true => class == CriticalityClass::Critical,
            false => class == CriticalityClass::WeaklyCriticalOnly,
        };
        if !applies {
            return SweepItem::Pass;
        }
        let report = match structure_coloring(g, &self.cfg) {
            Ok(Outcome::Exact(r)) => r,
            Ok(Outcome::Inconclusive(_)) => return SweepItem::Undecided(g6),
            Err(e) => {
                return SweepItem::Fail(CheckFailure {
                    graphs: vec![g6],
                    observed: format!("structure classification failed: {e}"),
                    expected: "maximum coloring matches the forced profile".into(),
                })
            }
        };
        let kind_ok = match want_critical {
            true => report.kind == StructureKind::Critical,
            false => matches!(
                report.kind,
                StructureKind::WeaklyType1 | StructureKind::WeaklyType2
            ),
        };
        let bound_ok = report.edge_bound_satisfied == Some(true);
        let contraction_ok = if want_critical {
            match contraction_complete_check(g, report.coloring.as_ref().unwrap()) {
                Ok(ok) => ok,
                Err(e) => {
                    return SweepItem::Fail(CheckFailure {
                        graphs: vec![g6],
                        observed: format!("contraction check errored: {e}"),
                        expected: "contraction yields a complete graph".into(),
                    })
                }
            }
        } else {
            true
        };
        if kind_ok && bound_ok && contraction_ok {
            SweepItem::Pass
        } else {
            SweepItem::Fail(CheckFailure {
                graphs: vec![g6],
                observed: format!(
                    "kind={:?}, edge bound ok={bound_ok}, contraction ok={contraction_ok}",
                    report.kind
                ),
                expected: match want_critical {
                    true => "critical profile, edge bound, complete contraction".into(),
                    false => "type-1 or type-2 profile and the weak edge bound".into(),
                },
            })
        }
    }

    fn witness_item(&self, g: &Graph, weak: bool) -> SweepItem {
        let g6 = Self::label_of(g);
        let class = match self.class_of(g) {
            Outcome::Exact(c) => c,
            Outcome::Inconclusive(_) => return SweepItem::Undecided(g6),
        };
        let should_exist = match weak {
            true => class == CriticalityClass::NotWeaklyCritical,
            false => class != CriticalityClass::Critical,
        };
        let found = match weak {
            true => find_witness_not_weakly_critical(g, &self.cfg),
            false => find_witness_not_critical(g, &self.cfg),
        };
        let witness = match found {
            Ok(Outcome::Exact(w)) => w,
            Ok(Outcome::Inconclusive(_)) => return SweepItem::Undecided(g6),
            Err(e) => {
                return SweepItem::Fail(CheckFailure {
                    graphs: vec![g6],
                    observed: format!("witness search errored: {e}"),
                    expected: "witness search completes".into(),
                })
            }
        };
        if witness.is_some() != should_exist {
            return SweepItem::Fail(CheckFailure {
                graphs: vec![g6],
                observed: format!("witness found={}, class={class:?}", witness.is_some()),
                expected: "witness exists iff the graph lacks the property".into(),
            });
        }
        if let Some(w) = witness {
            if let Err(e) = validate_witness(g, &w, &self.cfg) {
                return SweepItem::Fail(CheckFailure {
                    graphs: vec![g6],
                    observed: format!("witness failed validation: {e}"),
                    expected: "returned witness validates".into(),
                });
            }
        }
        SweepItem::Pass
    }

    fn nabla_check(&self, id: &str) -> Result<(String, Vec<CheckFailure>, Vec<String>)> {
        let instances = self.nabla_instances();
        let scope = format!(
            "{} (graph, k) instances with k in 2..=5 and k*n <= {}",
            instances.len(),
            self.max_nabla_order
        );
        let (f, u) = self.sweep(&instances, |&(i, k)| {
            let g = &self.corpus[i];
            let g6 = format!("{} with k={k}", Self::label_of(g));
            let omega = self.omega_of(g);
            let parity_even = (k * (omega + g.n())).is_multiple_of(2);
            let target = (k * (omega + g.n()) / 2) as u32;

            let kfold = match nabla_k(g, k) {
                Ok(x) => x,
                Err(_) => return SweepItem::Undecided(g6),
            };
            let coloring = match nabla_k_coloring(g, k) {
                Ok(c) => c,
                Err(e) => {
                    return SweepItem::Fail(CheckFailure {
                        graphs: vec![g6],
                        observed: format!("construction failed: {e}"),
                        expected: format!("pseudocomplete coloring with {target} colors"),
                    })
                }
            };
            if coloring.num_colors() != target {
                return SweepItem::Fail(CheckFailure {
                    graphs: vec![g6],
                    observed: format!("construction used {} colors", coloring.num_colors()),
                    expected: format!("floor(k(omega+n)/2) = {target}"),
                });
            }
            let psi_k = match psi_with_hint(&kfold, &coloring, &self.cfg) {
                Ok(Outcome::Exact(r)) => r.value,
                Ok(Outcome::Inconclusive(_)) => return SweepItem::Undecided(g6),
                Err(e) => {
                    return SweepItem::Fail(CheckFailure {
                        graphs: vec![g6],
                        observed: format!("psi of the k-fold join errored: {e}"),
                        expected: "psi computable".into(),
                    })
                }
            };
            let omega_k = self.omega_of(&kfold);
            let k_critical = 2 * psi_k as usize == omega_k + kfold.n();
            let k_weakly = psi_k as usize == (omega_k + kfold.n()) / 2;
            let base_psi = match self.psi_of(g) {
                Outcome::Exact(v) => v,
                Outcome::Inconclusive(_) => return SweepItem::Undecided(g6),
            };
            let base_class = classify(base_psi, omega, g.n());

            let (ok, observed, expected): (bool, String, String) = match id {
                "thm-nablak-critical-parity" => (
                    k_critical == parity_even,
                    format!("k-fold critical={k_critical}, k(omega+n) even={parity_even}"),
                    "k-fold join critical iff k(omega+n) even".into(),
                ),
                "thm-nablak-always-weakly-critical" => (
                    k_weakly,
                    format!("k-fold weakly critical={k_weakly}"),
                    "k-fold join always weakly critical".into(),
                ),
                "thm-nablak-kpsi-even" => {
                    if !parity_even {
                        (true, String::new(), String::new())
                    } else {
                        let additive = k as u32 * base_psi == psi_k;
                        (
                            additive == (base_class == CriticalityClass::Critical),
                            format!(
                                "k*psi(G)={}, psi(k-fold)={psi_k}, class={base_class:?}",
                                k as u32 * base_psi
                            ),
                            "k*psi(G) = psi(k-fold) iff G critical (even case)".into(),
                        )
                    }
                }
                "thm-nablak-kpsi-odd" => {
                    if parity_even || k < 3 {
                        (true, String::new(), String::new())
                    } else {
                        let formula = k as u32 * base_psi + (k as u32 / 2) == psi_k;
                        let weakly = base_class != CriticalityClass::NotWeaklyCritical;
                        (
                            formula == weakly,
                            format!(
                                "k*psi(G)+floor(k/2)={}, psi(k-fold)={psi_k}, weakly={weakly}",
                                k as u32 * base_psi + k as u32 / 2
                            ),
                            "k*psi(G)+floor(k/2) = psi(k-fold) iff G weakly critical (odd case)"
                                .into(),
                        )
                    }
                }
                _ => unreachable!("nabla_check dispatch"),
            };
            if ok {
                SweepItem::Pass
            } else {
                SweepItem::Fail(CheckFailure { graphs: vec![g6], observed, expected })
            }
        });
        Ok((scope, f, u))
    }

    fn check_remark_p3_c8(&self) -> Result<(String, Vec<CheckFailure>, Vec<String>)> {
        let p3 = crate::corpus::path_graph(3);
        let c8 = crate::corpus::cycle_graph(8);
        let mut failures = Vec::new();
        let mut inconclusive = Vec::new();
        match (self.psi_of(&p3), self.psi_of(&c8), self.psi_of_join(&p3, &c8)?) {
            (Outcome::Exact(a), Outcome::Exact(b), Outcome::Exact(j)) => {
                for (name, observed, expected) in
                    [("psi(P3)", a, 2), ("psi(C8)", b, 4), ("psi(P3∇C8)", j, 6)]
                {
                    if observed != expected {
                        failures.push(CheckFailure {
                            graphs: vec![Self::key(&p3), Self::key(&c8)],
                            observed: format!("{name} = {observed}"),
                            expected: format!("{name} = {expected}"),
                        });
                    }
                }
                for g in [&p3, &c8] {
                    if let Outcome::Exact(class) = self.class_of(g) {
                        if class == CriticalityClass::Critical {
                            failures.push(CheckFailure {
                                graphs: vec![Self::key(g)],
                                observed: format!("class {class:?}"),
                                expected: "not critical".into(),
                            });
                        }
                    }
                }
                if j != a + b {
                    failures.push(CheckFailure {
                        graphs: vec![Self::key(&p3), Self::key(&c8)],
                        observed: format!("psi(join) = {j}"),
                        expected: format!("additive: {}", a + b),
                    });
                }
            }
            _ => inconclusive.push("P3 | C8".into()),
        }
        Ok(("named instances P3 and C8".into(), failures, inconclusive))
    }

    fn check_remark_p3_p3(&self) -> Result<(String, Vec<CheckFailure>, Vec<String>)> {
        let p3 = crate::corpus::path_graph(3);
        let joined = join(&p3, &p3)?;
        let mut failures = Vec::new();
        let mut inconclusive = Vec::new();
        match (self.psi_of_join(&p3, &p3)?, self.class_of(&p3)) {
            (Outcome::Exact(pj), Outcome::Exact(class)) => {
                if pj != 5 {
                    failures.push(CheckFailure {
                        graphs: vec![Self::key(&joined)],
                        observed: format!("psi(P3∇P3) = {pj}"),
                        expected: "psi(P3∇P3) = 5".into(),
                    });
                }
                let join_class = classify(pj, self.omega_of(&joined), joined.n());
                if join_class != CriticalityClass::Critical {
                    failures.push(CheckFailure {
                        graphs: vec![Self::key(&joined)],
                        observed: format!("join class {join_class:?}"),
                        expected: "P3∇P3 critical".into(),
                    });
                }
                if class == CriticalityClass::Critical {
                    failures.push(CheckFailure {
                        graphs: vec![Self::key(&p3)],
                        observed: "P3 classified critical".into(),
                        expected: "P3 not critical".into(),
                    });
                }
            }
            _ => inconclusive.push("P3 | P3".into()),
        }
        Ok((
            "named instance P3 joined with itself".into(),
            failures,
            inconclusive,
        ))
    }

    /// Sweeps every in-cap pair, recording additivity and the criticality
    /// class of both operands, and flags any additive pair whose operands
    /// are both not weakly critical.
    pub fn scan_additive_pairs(&self) -> Result<AdditiveScan> {
        let pairs = self.pair_indices();
        let records: Vec<std::result::Result<PairRecord, String>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (g, h) = (&self.corpus[i], &self.corpus[j]);
                let tag = format!("{} | {}", Self::label_of(g), Self::label_of(h));
                let (pg, ph) = match (self.psi_of(g), self.psi_of(h)) {
                    (Outcome::Exact(a), Outcome::Exact(b)) => (a, b),
                    _ => return Err(tag),
                };
                let pj = match self.psi_of_join(g, h) {
                    Ok(Outcome::Exact(v)) => v,
                    _ => return Err(tag),
                };
                let (cg, ch) = match (self.class_of(g), self.class_of(h)) {
                    (Outcome::Exact(a), Outcome::Exact(b)) => (a, b),
                    _ => return Err(tag),
                };
                Ok(PairRecord {
                    g: Self::key(g),
                    h: Self::key(h),
                    additive: pj == pg + ph,
                    class_g: cg,
                    class_h: ch,
                })
            })
            .collect();

        let mut scan = AdditiveScan {
            pairs_examined: 0,
            additive_pairs: 0,
            violations: Vec::new(),
            class_combinations: BTreeMap::new(),
            inconclusive: Vec::new(),
        };
        for record in records {
            match record {
                Err(tag) => scan.inconclusive.push(tag),
                Ok(rec) => {
                    scan.pairs_examined += 1;
                    if rec.additive {
                        scan.additive_pairs += 1;
                        let combo = format!(
                            "{:?}+{:?}",
                            rec.class_g.min(rec.class_h),
                            rec.class_g.max(rec.class_h)
                        );
                        *scan.class_combinations.entry(combo).or_insert(0) += 1;
                        if rec.class_g == CriticalityClass::NotWeaklyCritical
                            && rec.class_h == CriticalityClass::NotWeaklyCritical
                        {
                            scan.violations.push(rec);
                        }
                    }
                }
            }
        }
        Ok(scan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{complete_graph, cycle_graph, path_graph};

    fn small_harness() -> Harness {
        let corpus = vec![
            path_graph(3),
            cycle_graph(5),
            cycle_graph(8),
            complete_graph(2),
            complete_graph(3),
        ];
        Harness::with_corpus(corpus, SearchConfig::default())
    }

    #[test]
    fn remark_checks_pass() {
        let h = small_harness();
        for id in ["remark-p3-c8", "remark-p3-p3"] {
            let r = h.run_check(id).unwrap();
            assert!(r.passed, "{id} failed: {:?}", r.failures);
            assert!(r.inconclusive.is_empty());
        }
    }

    #[test]
    fn unknown_check_is_an_error() {
        let h = small_harness();
        assert!(matches!(h.run_check("lemma-99"), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn psi_delta_breaks_lemma_2() {
        let h = small_harness().with_psi_delta(1);
        let r = h.run_check("lemma-2-upper-bound").unwrap();
        assert!(!r.passed);
        assert!(!r.failures.is_empty());
        assert!(!r.failures[0].graphs.is_empty());
    }

    #[test]
    fn scan_finds_the_known_additive_pair() {
        let h = small_harness();
        let scan = h.scan_additive_pairs().unwrap();
        assert!(scan.violations.is_empty());
        assert!(scan.additive_pairs >= 1);
        assert!(scan.inconclusive.is_empty());
    }

    /// With the pair cap raised, the self-pair of the 8-cycle is swept and
    /// found non-additive, as additivity would force a weakly critical
    /// operand.
    #[test]
    fn cycle_self_pair_is_not_additive() {
        let mut h = Harness::with_corpus(vec![cycle_graph(8)], SearchConfig::default());
        h.max_pair_order = 16;
        let scan = h.scan_additive_pairs().unwrap();
        assert_eq!(scan.pairs_examined, 1);
        assert_eq!(scan.additive_pairs, 0);
        assert!(scan.violations.is_empty());
    }

    #[test]
    fn starved_budget_reports_inconclusive_coverage() {
        let h = Harness::with_corpus(
            vec![path_graph(3), cycle_graph(8)],
            SearchConfig { node_budget: 3, seed: None },
        );
        let r = h.run_check("lemma-2-upper-bound").unwrap();
        assert!(!r.inconclusive.is_empty());
        assert!(r.failures.is_empty(), "starvation must not look like failure");
    }
}
