//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `--nocapture`). Every tolerance is exact-integer.
//!
//! One test, `criterion_03_equality_k_clause_as_stated`, is expected to
//! fail: the tightness clause it encodes — every additive pair has some
//! k >= 1 with mpd_G(k) + mpd_H(k) = k — is false (two one-vertex graphs
//! are already a counterexample). It is kept as stated rather than
//! weakened; see the failure message for the counterexample list.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use psi_lab::clique::clique_number;
use psi_lab::coloring::is_pseudocomplete;
use psi_lab::constructions::{
    boost_coloring, contraction_complete_check, join_coloring_lower, nabla_k_coloring,
    structure_coloring, StructureKind,
};
use psi_lab::corpus::{
    complete_graph, cycle_graph, edgeless_graph, non_isomorphic_graphs, path_graph,
};
use psi_lab::emit_graph6;
use psi_lab::graph::{join, nabla_k, Graph};
use psi_lab::mpd::{additivity_criterion, criticality_report, CriticalityReport};
use psi_lab::solver::{feasible_coloring, psi, psi_with_hint, Feasibility, SearchConfig};
use psi_lab::verify::Harness;
use psi_lab::witness::{
    find_witness_not_critical, find_witness_not_weakly_critical, validate_witness, WitnessPair,
};

use common::naive_psi;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn report(criterion: &str, detail: String) {
    println!("acceptance {criterion}: PASS — {detail}");
}

fn psi_value(g: &Graph) -> u32 {
    psi(g, &cfg()).expect_exact("psi").value
}

fn crit_report(g: &Graph) -> CriticalityReport {
    criticality_report(g, &cfg())
        .expect("criticality routes must agree")
        .expect_exact("criticality report")
}

/// Golden values, each certified by search, the join instance by explicit
/// exhaustion at one color more.
#[test]
fn criterion_01_golden_values() {
    let budget_small = Duration::from_secs(1);

    let t = Instant::now();
    assert_eq!(psi_value(&path_graph(3)), 2);
    let t_p3 = t.elapsed();
    assert!(t_p3 < budget_small, "psi(P3) took {t_p3:?}");

    let t = Instant::now();
    assert_eq!(psi_value(&cycle_graph(8)), 4);
    let t_c8 = t.elapsed();
    assert!(t_c8 < budget_small, "psi(C8) took {t_c8:?}");

    let t = Instant::now();
    let p3p3 = join(&path_graph(3), &path_graph(3)).unwrap();
    assert_eq!(psi_value(&p3p3), 5);
    assert!(crit_report(&p3p3).critical(), "P3∇P3 must be critical");
    let t_p3p3 = t.elapsed();
    assert!(t_p3p3 < budget_small, "psi(P3∇P3) took {t_p3p3:?}");

    let t = Instant::now();
    let joined = join(&path_graph(3), &cycle_graph(8)).unwrap();
    match feasible_coloring(&joined, 7, &cfg()).unwrap() {
        Feasibility::Infeasible => {}
        other => panic!("seven colors must be exhaustively infeasible, got {other:?}"),
    }
    assert_eq!(psi_value(&joined), 6);
    let t_join = t.elapsed();
    assert!(t_join < Duration::from_secs(60), "psi(P3∇C8) took {t_join:?}");

    report(
        "criterion-01 golden-values",
        format!(
            "psi(P3)=2 [{t_p3:?}], psi(C8)=4 [{t_c8:?}], psi(P3∇P3)=5 critical [{t_p3p3:?}], \
             psi(P3∇C8)=6 with t=7 exhausted [{t_join:?}]"
        ),
    );
}

/// Definition-versus-formula agreement for criticality and weak
/// criticality over every graph on at most six vertices. The report
/// constructor hard-errors on any disagreement.
#[test]
fn criterion_02_equivalence_sweep() {
    let t = Instant::now();
    let corpus = non_isomorphic_graphs(6);
    corpus.par_iter().for_each(|g| {
        let r = crit_report(g);
        assert_eq!(
            r.critical_by_formula, r.critical_by_mpd,
            "criticality routes disagree on {g:?}"
        );
        assert_eq!(
            r.weakly_critical_by_formula, r.weakly_critical_by_mpd,
            "weak criticality routes disagree on {g:?}"
        );
    });
    assert!(t.elapsed() < Duration::from_secs(600));
    report(
        "criterion-02 equivalence-sweep",
        format!("{} graphs, zero route disagreements [{:?}]", corpus.len(), t.elapsed()),
    );
}

fn small_pairs(max_sum: usize) -> (Vec<Graph>, Vec<(usize, usize)>) {
    let corpus = non_isomorphic_graphs(6);
    let pairs: Vec<(usize, usize)> = (0..corpus.len())
        .flat_map(|i| (i..corpus.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| corpus[i].n() + corpus[j].n() <= max_sum)
        .collect();
    (corpus, pairs)
}

/// The psi-drop criterion decides additivity exactly, on every pair of
/// combined order at most nine. `additivity_criterion` hard-errors if the
/// criterion and the directly computed Ψ of the join ever disagree, and
/// any reported tight k is re-checked against the table.
#[test]
fn criterion_03_additivity_iff_zero_violations() {
    let t = Instant::now();
    let (corpus, pairs) = small_pairs(9);
    let additive_count: usize = pairs
        .par_iter()
        .map(|&(i, j)| {
            let r = additivity_criterion(&corpus[i], &corpus[j], &cfg())
                .expect("criterion must match direct computation")
                .expect_exact("additivity report");
            if let Some(k) = r.equality_k {
                let row = &r.table[k];
                assert_eq!(
                    row.mpd_g + row.mpd_h,
                    k as u32,
                    "reported equality k is not tight"
                );
            }
            usize::from(r.additive)
        })
        .sum();
    assert!(t.elapsed() < Duration::from_secs(1800));
    report(
        "criterion-03 additivity-iff",
        format!(
            "{} pairs, {additive_count} additive, zero criterion/direct disagreements [{:?}]",
            pairs.len(),
            t.elapsed()
        ),
    );
}

/// The companion tightness clause, exactly as stated: every additive pair
/// must admit some k >= 1 with mpd_G(k) + mpd_H(k) = k.
///
/// This is EXPECTED TO FAIL: the clause is false. Two one-vertex graphs
/// are additive (Ψ(K2) = 2 = 1 + 1) while mpd_K1(1) + mpd_K1(1) = 2 > 1,
/// and every pair of complete graphs behaves the same way. The test is
/// kept faithful to the claim instead of being weakened to pass.
#[test]
fn criterion_03_equality_k_clause_as_stated() {
    let (corpus, pairs) = small_pairs(9);
    let missing: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let r = additivity_criterion(&corpus[i], &corpus[j], &cfg())
                .unwrap()
                .expect_exact("additivity report");
            if r.additive && r.equality_k.is_none() {
                Some(format!(
                    "{} | {}",
                    emit_graph6(&corpus[i]).unwrap(),
                    emit_graph6(&corpus[j]).unwrap()
                ))
            } else {
                None
            }
        })
        .collect();
    assert!(
        missing.is_empty(),
        "acceptance criterion-03 equality-k-clause: FAIL — {} additive pairs have no k >= 1 \
         with mpd_G(k)+mpd_H(k)=k; the clause is false as stated. First counterexamples: {:?}",
        missing.len(),
        &missing[..missing.len().min(5)]
    );
    report("criterion-03 equality-k-clause", "every additive pair had a tight k".into());
}

/// Ψ(G∇G) = ω(G) + |V| and the self-join is critical, for every graph on
/// at most five vertices.
#[test]
fn criterion_04_self_join_battery() {
    let t = Instant::now();
    let corpus = non_isomorphic_graphs(5);
    corpus.par_iter().for_each(|g| {
        let joined = join(g, g).unwrap();
        let hint = join_coloring_lower(g, g).unwrap();
        let value = psi_with_hint(&joined, &hint, &cfg())
            .unwrap()
            .expect_exact("psi of self-join")
            .value;
        let (omega, _) = clique_number(g);
        assert_eq!(
            value as usize,
            omega + g.n(),
            "psi(G∇G) must be omega+n for {g:?}"
        );
        let (omega_join, _) = clique_number(&joined);
        assert_eq!(
            2 * value as usize,
            omega_join + joined.n(),
            "self-join not critical for {g:?}"
        );
    });
    assert!(t.elapsed() < Duration::from_secs(600));
    report(
        "criterion-04 self-join",
        format!(
            "{} graphs: psi(G∇G)=omega+n and G∇G critical throughout [{:?}]",
            corpus.len(),
            t.elapsed()
        ),
    );
}

/// The k-fold battery on four named graphs: construction size and
/// validity, criticality parity, weak criticality, and both directions of
/// the two k·Ψ formulas.
#[test]
fn criterion_05_nabla_battery() {
    let t = Instant::now();
    let battery = [
        path_graph(3),
        cycle_graph(5),
        complete_graph(3),
        edgeless_graph(2),
    ];
    for g in &battery {
        let base = crit_report(g);
        let (omega, n) = (base.omega as usize, g.n());
        for k in 2..=5usize {
            let target = (k * (omega + n) / 2) as u32;
            let kfold = nabla_k(g, k).unwrap();
            let coloring = nabla_k_coloring(g, k).unwrap();
            assert_eq!(coloring.num_colors(), target, "count for {g:?}, k={k}");
            assert!(
                is_pseudocomplete(&kfold, &coloring).unwrap().is_complete(),
                "construction invalid for {g:?}, k={k}"
            );
            let psi_k = psi_with_hint(&kfold, &coloring, &cfg())
                .unwrap()
                .expect_exact("psi of the k-fold join")
                .value;
            assert_eq!(psi_k, target);

            let (omega_k, _) = clique_number(&kfold);
            let parity_even = (k * (omega + n)) % 2 == 0;
            let k_critical = 2 * psi_k as usize == omega_k + kfold.n();
            assert_eq!(k_critical, parity_even, "criticality parity for {g:?}, k={k}");
            assert_eq!(
                psi_k as usize,
                (omega_k + kfold.n()) / 2,
                "k-fold join must be weakly critical: {g:?}, k={k}"
            );

            if parity_even {
                assert_eq!(
                    k as u32 * base.psi == psi_k,
                    base.critical(),
                    "k·psi formula (even case) for {g:?}, k={k}"
                );
            } else if k >= 3 {
                assert_eq!(
                    k as u32 * base.psi + (k as u32 / 2) == psi_k,
                    base.weakly_critical(),
                    "k·psi formula (odd case) for {g:?}, k={k}"
                );
            }
        }
    }
    assert!(t.elapsed() < Duration::from_secs(300));
    report(
        "criterion-05 k-fold-battery",
        format!("4 graphs x k in 2..=5, all formulas in both directions [{:?}]", t.elapsed()),
    );
}

/// Witness searches succeed exactly on the graphs lacking the property,
/// and every returned witness validates, over all graphs on at most six
/// vertices.
#[test]
fn criterion_06_witness_iffs() {
    let t = Instant::now();
    let corpus = non_isomorphic_graphs(6);
    corpus.par_iter().for_each(|g| {
        let r = crit_report(g);
        let weak = find_witness_not_weakly_critical(g, &cfg())
            .unwrap()
            .expect_exact("weak witness search");
        assert_eq!(
            weak.is_some(),
            !r.weakly_critical(),
            "weak witness iff broken on {g:?}"
        );
        if let Some(w) = &weak {
            validate_witness(g, w, &cfg()).expect("weak witness validates");
        }
        let crit = find_witness_not_critical(g, &cfg())
            .unwrap()
            .expect_exact("critical witness search");
        assert_eq!(crit.is_some(), !r.critical(), "critical witness iff broken on {g:?}");
        if let Some(w) = &crit {
            validate_witness(g, w, &cfg()).expect("critical witness validates");
        }
    });
    assert!(t.elapsed() < Duration::from_secs(600));
    report(
        "criterion-06 witness-iffs",
        format!("{} graphs, both variants exact [{:?}]", corpus.len(), t.elapsed()),
    );
}

/// Structure of maximum colorings and the edge bounds over all graphs on
/// at most seven vertices.
#[test]
fn criterion_07_structure_and_edge_bounds() {
    let t = Instant::now();
    let corpus = non_isomorphic_graphs(7);
    let (criticals, weaklies): (Vec<usize>, Vec<usize>) = corpus
        .par_iter()
        .map(|g| {
            let value = psi_value(g);
            let (omega, _) = clique_number(g);
            let n = g.n();
            let critical = 2 * value as usize == omega + n;
            let weakly_only = !critical && value as usize == (omega + n) / 2;
            if !critical && !weakly_only {
                return (0, 0);
            }
            let r = structure_coloring(g, &cfg()).unwrap().expect_exact("structure");
            if critical {
                assert_eq!(r.kind, StructureKind::Critical, "profile forced for {g:?}");
                assert!(
                    contraction_complete_check(g, r.coloring.as_ref().unwrap()).unwrap(),
                    "contraction must be complete for {g:?}"
                );
                assert!(
                    8 * g.edge_count() >= (n + omega) * (n + omega - 2),
                    "critical edge bound broken on {g:?}"
                );
                (1, 0)
            } else {
                assert!(
                    matches!(r.kind, StructureKind::WeaklyType1 | StructureKind::WeaklyType2),
                    "weakly critical graph fits neither type: {g:?}"
                );
                assert!(
                    8 * g.edge_count() >= (n + omega - 1) * (n + omega - 3),
                    "weak edge bound broken on {g:?}"
                );
                (0, 1)
            }
        })
        .map(|(c, w)| (vec![c], vec![w]))
        .reduce(
            || (Vec::new(), Vec::new()),
            |mut a, b| {
                a.0.extend(b.0);
                a.1.extend(b.1);
                a
            },
        );
    let criticals: usize = criticals.iter().sum();
    let weaklies: usize = weaklies.iter().sum();
    assert!(criticals > 0 && weaklies > 0, "sweep must exercise both classes");
    assert!(t.elapsed() < Duration::from_secs(600));
    report(
        "criterion-07 structure-and-edge-bounds",
        format!(
            "{} graphs: {criticals} critical, {weaklies} weakly-critical-only, all profiles \
             and bounds hold [{:?}]",
            corpus.len(),
            t.elapsed()
        ),
    );
}

/// Boost colorings certify non-additivity for every pair of graphs that
/// are not weakly critical, over the small corpus plus the 8-cycle paired
/// with itself.
#[test]
fn criterion_08_boost_coloring_sweep() {
    let t = Instant::now();
    let mut candidates = non_isomorphic_graphs(6);
    candidates.push(cycle_graph(8));

    let witnesses: HashMap<usize, WitnessPair> = candidates
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            find_witness_not_weakly_critical(g, &cfg())
                .unwrap()
                .expect_exact("witness search")
                .map(|w| (i, w))
        })
        .collect();

    let c8_index = candidates.len() - 1;
    let pairs: Vec<(usize, usize)> = witnesses
        .keys()
        .flat_map(|&i| witnesses.keys().map(move |&j| (i.min(j), i.max(j))))
        .filter(|&(i, j)| {
            let sum = candidates[i].n() + candidates[j].n();
            sum <= 12 || (i, j) == (c8_index, c8_index)
        })
        .collect::<std::collections::HashSet<_>>()
        .into_iter()
        .collect();

    assert!(
        pairs.contains(&(c8_index, c8_index)),
        "the cycle pair must be part of the sweep"
    );

    pairs.par_iter().for_each(|&(i, j)| {
        let (g, h) = (&candidates[i], &candidates[j]);
        let boosted = boost_coloring(g, h, &witnesses[&i], &witnesses[&j], &cfg())
            .expect("boost construction succeeds");
        let expected = witnesses[&i].coloring.num_colors() + witnesses[&j].coloring.num_colors() + 1;
        assert_eq!(boosted.num_colors(), expected, "boost count for {g:?} | {h:?}");
        let joined = join(g, h).unwrap();
        assert!(
            is_pseudocomplete(&joined, &boosted).unwrap().is_complete(),
            "boost coloring invalid for {g:?} | {h:?}"
        );
    });
    assert!(t.elapsed() < Duration::from_secs(600));
    report(
        "criterion-08 boost-colorings",
        format!(
            "{} non-weakly-critical graphs, {} pairs incl. (C8,C8): psi+psi+1 colors, all \
             pseudocomplete [{:?}]",
            witnesses.len(),
            pairs.len(),
            t.elapsed()
        ),
    );
}

/// The solver agrees with the enumerate-every-set-partition oracle on all
/// graphs with at most five vertices.
#[test]
fn criterion_09_reference_oracle() {
    let t = Instant::now();
    let corpus = non_isomorphic_graphs(5);
    corpus.par_iter().for_each(|g| {
        assert_eq!(psi_value(g), naive_psi(g), "oracle disagreement on {g:?}");
    });
    assert!(t.elapsed() < Duration::from_secs(600));
    report(
        "criterion-09 reference-oracle",
        format!("{} graphs match the partition oracle [{:?}]", corpus.len(), t.elapsed()),
    );
}

/// Corrupting the solver's Ψ by +1 must break the clique-vertex bound
/// check with a concrete counterexample payload.
#[test]
fn criterion_10_negative_path_meta() {
    let harness = Harness::embedded(cfg()).with_psi_delta(1);
    let result = harness.run_check("lemma-2-upper-bound").unwrap();
    assert!(!result.passed, "corrupted solver must fail the bound check");
    assert!(!result.failures.is_empty());
    let failure = &result.failures[0];
    assert!(!failure.graphs.is_empty(), "failure must carry a graph6 payload");
    assert!(failure.observed.contains("psi"));
    assert!(failure.expected.contains("floor"));

    // The same check passes with the honest solver.
    let honest = Harness::embedded(cfg()).run_check("lemma-2-upper-bound").unwrap();
    assert!(honest.passed);
    report(
        "criterion-10 negative-path",
        format!(
            "+1 corruption yields {} counterexamples, first: {:?}",
            result.failures.len(),
            failure.graphs
        ),
    );
}
