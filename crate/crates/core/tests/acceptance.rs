//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL` line; run with `--nocapture` to see details.
//! All tolerances are exact.

use graph_containers::codes::transport_bound;
use graph_containers::constructions::{construction_78, good_triple_count};
use graph_containers::graphs::{build_graph, GraphKind};
use graph_containers::katona::katona_k;
use graph_containers::lattice::{BigCount, SetMask};
use graph_containers::oracles::{
    count_independent_sets, enumerate_maximal_independent_sets, max_independent_set, EnumBudget,
};
use graph_containers::verify::{container_matrix, run_criterion, CriterionResult};
use num_rational::BigRational;

fn budget() -> EnumBudget {
    EnumBudget::default().unlimited_nodes()
}

fn report(id: u32) -> CriterionResult {
    let r = run_criterion(id, &budget(), 2, true);
    println!(
        "criterion {:>2} ({}): {} in {:.2}s",
        r.id,
        r.title,
        if r.pass { "PASS" } else { "FAIL" },
        r.seconds.unwrap_or(0.0)
    );
    for line in &r.details {
        println!("    {line}");
    }
    r
}

fn assert_pass(r: &CriterionResult) {
    let failures: Vec<&String> = r.details.iter().filter(|l| l.starts_with("FAIL")).collect();
    assert!(r.pass, "criterion {} failed: {failures:#?}", r.id);
}

#[test]
fn criterion_01_antichain_counts() {
    let r = report(1);
    assert_pass(&r);
    let g = build_graph(5, GraphKind::Comparability).unwrap();
    assert_eq!(count_independent_sets(&g, &budget()).unwrap(), BigCount::from(7581u32));
    assert!(r.seconds.unwrap() < 30.0);
}

#[test]
fn criterion_02_container_soundness() {
    let r = report(2);
    assert_pass(&r);
    assert!(container_matrix().len() >= 12);
    // three schedules per instance, one of them two-stage
    assert_eq!(r.details.len(), 3 * container_matrix().len());
    assert!(r.seconds.unwrap() < 120.0);
}

#[test]
fn criterion_03_kleitman() {
    assert_pass(&report(3));
}

#[test]
fn criterion_04_scd() {
    let r = report(4);
    assert_pass(&r);
    assert!(r.details.iter().any(|l| l.starts_with("n=12: 924 chains")));
}

#[test]
fn criterion_05_code_bounds() {
    let r = report(5);
    assert_pass(&r);
    let codes = count_independent_sets(&build_graph(3, GraphKind::Hamming { t: 1 }).unwrap(), &budget()).unwrap();
    assert_eq!(codes, BigCount::from(13u32));
}

#[test]
fn criterion_06_transportation() {
    assert_pass(&report(6));
    assert_eq!(transport_bound(4, 2, 3).unwrap(), BigRational::new(3.into(), 2.into()));
    let (c, _) = max_independent_set(&build_graph(4, GraphKind::Transport { k: 2, t: 1 }).unwrap(), &budget()).unwrap();
    assert_eq!(c, 1);
}

#[test]
fn criterion_07_katona() {
    let r = report(7);
    assert_pass(&r);
    // n + t even: all sets of size >= (n+t)/2; odd: the layers above plus
    // binom(n-1, (n+t-1)/2)
    assert_eq!(katona_k(4, 1).unwrap(), BigCount::from(8u32));
    assert_eq!(katona_k(4, 2).unwrap(), BigCount::from(5u32));
    assert_eq!(katona_k(5, 2).unwrap(), BigCount::from(10u32));
    assert!(r.seconds.unwrap() < 120.0);
}

#[test]
fn criterion_08_random_model() {
    let r = report(8);
    assert_pass(&r);
    assert!(r.details.iter().any(|l| l.starts_with("A_ex(25,2)")));
}

#[test]
fn criterion_09_bnk() {
    assert_pass(&report(9));
    let (mis, _) =
        enumerate_maximal_independent_sets(&build_graph(3, GraphKind::Bnk { k: 1 }).unwrap(), &budget(), false)
            .unwrap();
    assert_eq!(mis, BigCount::from(5u32));
    assert_eq!(good_triple_count(4, 2), BigCount::from(6u32));
}

#[test]
fn criterion_10_two_coloured() {
    let r = report(10);
    assert_pass(&r);
    let g = build_graph(4, GraphKind::MonoDiff { red: SetMask(0x3) }).unwrap();
    assert_eq!(max_independent_set(&g, &budget()).unwrap().0, 6);
    assert!(r.seconds.unwrap() < 60.0);
}

#[test]
fn criterion_11_skew_construction() {
    assert_pass(&report(11));
    assert_eq!(construction_78(2).unwrap().count(), BigCount::from(6u32));
    assert_eq!(construction_78(4).unwrap().count(), BigCount::from(216u32));
}

#[test]
fn criterion_12_weighted_inequality() {
    assert_pass(&report(12));
}
