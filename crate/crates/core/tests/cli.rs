//! End-to-end runs of the `kwc` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kwc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kwc")).args(args).output().expect("kwc runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kwc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn count_reports_decimal_strings() {
    let out = kwc(&["count", "--graph", "comparability:n=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], "20");
    assert_eq!(v["command"], "count");
    assert_eq!(v["config"]["command"]["count"]["graph"], "comparability:n=3");

    let out = kwc(&["count", "--graph", "bnk:n=3,k=1", "--mode", "maximal"]);
    assert_eq!(json(&out)["count"], "5");
    let out = kwc(&["count", "--graph", "hamming:n=7,t=1", "--mode", "max"]);
    let v = json(&out);
    assert_eq!(v["count"], "16");
    assert_eq!(v["witness"].as_array().unwrap().len(), 16);
}

#[test]
fn bounds_are_exact_rationals() {
    let v = json(&kwc(&["bounds", "--family", "hamming", "--n", "7", "--t", "1"]));
    assert_eq!((v["num"].as_str(), v["den"].as_str()), (Some("16"), Some("1")));
    let v = json(&kwc(&["bounds", "--family", "transport", "--n", "6", "--k", "2", "--d", "3"]));
    assert_eq!((v["num"].as_str(), v["den"].as_str()), (Some("15"), Some("4")));
    let v = json(&kwc(&["bounds", "--family", "katona", "--n", "5", "--t", "1"]));
    assert_eq!(v["num"], "16");
}

#[test]
fn containers_report() {
    let out = kwc(&[
        "containers", "--graph", "comparability:n=4", "--delta", "4,1", "--switch", "8", "--verify", "--max-s", "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["n_independent_sets"], 168);
    assert_eq!(v["covered"], true);
    assert_eq!(v["audit"]["replay_deterministic"], true);
    assert!(v["enumerated"]["realizable_fingerprints"].as_u64().unwrap() >= 1);

    let fam = scratch("layer.txt");
    std::fs::write(&fam, "n=3\n3\n5\n6\n").unwrap();
    let out = kwc(&["containers", "--graph", "comparability:n=3", "--delta", "1", "--family", fam.to_str().unwrap()]);
    let v = json(&out);
    assert!(!v["trace"].as_array().unwrap().is_empty());
    assert!(v["container"].as_array().unwrap().len() >= 3);
}

#[test]
fn supersat_checks() {
    let out = kwc(&["supersat", "--lemma", "kleitman", "--n", "3", "--x", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["bound"].as_str(), v["observed_min"].as_u64()), (Some("4"), Some(4)));

    let out = kwc(&["supersat", "--lemma", "claim-cd", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"].as_array().unwrap().len(), 4);

    let out = kwc(&["supersat", "--lemma", "mono", "--n", "3", "--R", "0x1", "--x", "1"]);
    assert_eq!(out.status.code(), Some(0));

    let out = kwc(&["supersat", "--lemma", "hamming", "--n", "5", "--t", "1", "--x", "2", "--mode", "random", "--trials", "8", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(kwc(&[]).status.code(), Some(1));
    assert_eq!(kwc(&["count", "--graph", "tilt:n=3,p=2,q=4"]).status.code(), Some(1));
    assert_eq!(kwc(&["supersat", "--lemma", "hamming", "--n", "5"]).status.code(), Some(1));
    assert_eq!(kwc(&["count", "--graph", "comparability:n=6", "--budget-nodes", "10"]).status.code(), Some(1));
    assert_eq!(kwc(&["supersat", "--lemma", "tilt", "--n", "3", "--p", "1", "--q", "2", "--x", "2"]).status.code(), Some(2));
    assert_eq!(kwc(&["--version"]).status.code(), Some(0));
}

#[test]
fn random_katona_is_deterministic() {
    let args = ["random-katona", "--n", "5", "--t", "1", "--p", "1/2", "--trials", "6", "--seed", "9"];
    let one = kwc(&args);
    assert_eq!(one.status.code(), Some(0));
    let again = kwc(&args);
    assert_eq!(one.stdout, again.stdout);
    let mut threaded: Vec<&str> = vec!["--threads", "3"];
    threaded.extend(args);
    let par = json(&kwc(&threaded));
    let seq = json(&one);
    assert_eq!(par["per_trial"], seq["per_trial"]);
    assert_eq!(par["K"], "16");
}

#[test]
fn out_file_and_csv() {
    let path = scratch("report.csv");
    let out = kwc(&["--format", "csv", "--out", path.to_str().unwrap(), "construct", "--what", "good-triples", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("B,r,s"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn construct_and_check_round_trip() {
    let fam = scratch("c78.txt");
    let out = kwc(&["construct", "--what", "c78", "--n", "4", "--emit", fam.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], "216");
    assert_eq!(v["all_skew"], true);

    let one = scratch("c78-last.txt");
    let out = kwc(&["construct", "--what", "c78", "--n", "4", "--index", "215", "--emit", one.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = kwc(&["construct", "--what", "skew-check", "--input", one.to_str().unwrap(), "--a", "2", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["skew"], true);

    let isp = scratch("isp.txt");
    std::fs::write(&isp, "n=2\n1 2\n2 1\n").unwrap();
    let out = kwc(&["construct", "--what", "isp-check", "--input", isp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&isp, "n=2\n1 2\n1 2\n").unwrap();
    assert_eq!(kwc(&["construct", "--what", "isp-check", "--input", isp.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&isp, "n=2\n1 zz\n").unwrap();
    assert_eq!(kwc(&["construct", "--what", "isp-check", "--input", isp.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn construct_bnk_pieces() {
    let out = kwc(&["construct", "--what", "fT", "--n", "5", "--k", "2", "--base", "6", "--r", "4", "--s", "2", "--choices", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["independent"], true);
    assert_eq!(v["free_edges"], 2);

    let v = json(&kwc(&["construct", "--what", "matching", "--n", "4", "--k", "2", "--i", "1"]));
    assert_eq!((v["transversals"].as_str(), v["distinct_maximal_extensions"].as_u64()), (Some("8"), Some(8)));

    let v = json(&kwc(&["construct", "--what", "pipeline", "--n", "4", "--k", "2"]));
    assert_eq!(v["distinct_maximal"], 3);
    assert_eq!(v["two_to_one"], true);

    let v = json(&kwc(&["construct", "--what", "isp-min", "--ground", "2", "--size", "3"]));
    assert!(v["min_violations"].as_u64().is_some());
}

#[test]
fn verify_subset() {
    let out = kwc(&["verify-all", "--level", "desk", "--only", "4,6,11"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], 3);
    let progress = String::from_utf8(out.stderr).unwrap();
    assert_eq!(progress.lines().filter(|l| l.ends_with("PASS")).count(), 3);
    assert_eq!(kwc(&["verify-all", "--only", "13"]).status.code(), Some(1));
}
