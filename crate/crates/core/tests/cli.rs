use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

use revfree_core::search::{SearchOptions, SearchReport};
use revfree_core::{AvoidanceQuery, Word};

fn revfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revfree"))
        .args(args)
        .output()
        .expect("spawn revfree")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn morphism_file(text: &str) -> PathBuf {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let n = NEXT.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!("revfree-cli-{}-{n}.txt", std::process::id()));
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_exit_codes() {
    let ok = revfree(&["check", "--word", "012012", "-k", "2"]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = revfree(&["check", "--word", "0110", "-k", "2", "-s", "2", "--json"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violation"]["kind"], "reversal");
    assert_eq!(v["violation"]["x"], "01");

    let square = revfree(&["check", "--word", "012012", "-k", "2", "--squarefree", "--json"]);
    assert_eq!(square.status.code(), Some(1));
    assert_eq!(json(&square)["violation"]["kind"], "square");

    assert_eq!(revfree(&["check", "--word", "0120", "-k", "2", "-s", "2"]).status.code(), Some(2));
    assert_eq!(revfree(&["check", "--word", "01", "-k", "0"]).status.code(), Some(2));
    assert_eq!(revfree(&["check", "--word", "01"]).status.code(), Some(2));
}

#[test]
fn factors_and_enumerate() {
    let v = json(&revfree(&["factors", "--word", "0120120", "--length", "2", "--json"]));
    assert_eq!(v["factors"]["members"], serde_json::json!(["01", "12", "20"]));
    assert_eq!(v["reversal_conflict"], false);

    let out = revfree(&["enumerate", "-s", "2", "-k", "4", "--length", "8", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    let q = AvoidanceQuery::reversal(4).unwrap();
    let words = v["words"].as_array().unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, words.len());
    assert!(!words.is_empty());
    for w in words {
        let w = Word::parse(w.as_str().unwrap(), 2).unwrap();
        assert!(revfree_core::avoidance::is_valid(&w, &q));
    }
    let none = json(&revfree(&["enumerate", "-s", "2", "-k", "4", "--length", "9", "--json"]));
    assert_eq!(none["count"], 0);
}

#[test]
fn search_report_round_trips() {
    let out = revfree(&["search", "-s", "4", "-k", "2", "--squarefree", "--cap", "64"]);
    assert!(out.status.success());
    let report: SearchReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.outcome, "finite");
    assert_eq!(report.max_length, Some(20));

    let q = AvoidanceQuery::squarefree(2).unwrap();
    let direct = SearchReport::run(4, &q, 64, SearchOptions::default()).unwrap();
    assert_eq!(report.witnesses, direct.witnesses);
    assert_eq!(report.nodes_explored, direct.nodes_explored);

    let flagged = revfree(&["search", "-s", "4", "-k", "2", "--squarefree", "--parallel", "--symmetry"]);
    let flagged: SearchReport = serde_json::from_slice(&flagged.stdout).unwrap();
    assert_eq!(flagged.witnesses, direct.witnesses);

    let open: SearchReport =
        serde_json::from_slice(&revfree(&["search", "-s", "3", "-k", "2", "--cap", "40"]).stdout).unwrap();
    assert_eq!(open.outcome, "exceeds_cap");
    let survivor = Word::parse(open.sample_survivor.as_deref().unwrap(), 3).unwrap();
    assert_eq!(survivor.len(), 40);
    assert!(revfree_core::avoidance::is_valid(&survivor, &AvoidanceQuery::reversal(2).unwrap()));
}

#[test]
fn match_periodic() {
    let v = json(&revfree(&["match-periodic", "--word", "1101100101100101100", "--json"]));
    assert_eq!(v["matched"], true);
    assert_eq!(v["preamble"], "1");
    assert_eq!(v["period"], "101100");

    let miss = revfree(&["match-periodic", "--word", "000000000000000", "--json"]);
    assert_eq!(miss.status.code(), Some(1));
    assert_eq!(json(&miss)["matched"], false);
    assert_eq!(revfree(&["match-periodic", "--word", "0010"]).status.code(), Some(2));
}

#[test]
fn morphic_subcommands() {
    let h6 = morphism_file("# h6\n0 -> 0001011\n1 -> 0010111\n");
    let h6 = h6.to_str().unwrap();

    let out = revfree(&["morphic", "apply", "--morphism", h6, "--word", "01"]);
    assert_eq!(stdout(&out).trim(), "00010110010111");

    let out = revfree(&["morphic", "decode", "--morphism", h6, "--word", "00010110010111"]);
    assert_eq!(stdout(&out).trim(), "01");
    let out = revfree(&["morphic", "decode", "--morphism", h6, "--word", "0001010"]);
    assert_eq!(out.status.code(), Some(1));

    let v = json(&revfree(&["morphic", "factor-set", "--morphism", h6, "-k", "6", "--json"]));
    assert_eq!(v["factors"]["members"].as_array().unwrap().len(), 15);
    assert_eq!(v["reversal_conflict"], false);

    let marker = revfree(&["morphic", "marker", "--morphism", h6, "--marker", "000"]);
    assert_eq!(marker.status.code(), Some(0));
    assert_eq!(json(&marker)["synchronized"], true);
    let marker = revfree(&["morphic", "marker", "--morphism", h6, "--marker", "01"]);
    assert_eq!(marker.status.code(), Some(1));

    let h8 = morphism_file("alphabet=5\n0 -> 012\n1 -> 013\n2 -> 014\n");
    let h8 = h8.to_str().unwrap();
    let out = revfree(&["morphic", "squarefree-test", "--morphism", h8]);
    assert_eq!(out.status.code(), Some(0));
    let out = revfree(&[
        "morphic", "stream", "--morphism", h8, "--builtin", "thue-squarefree-ternary", "--length", "500",
    ]);
    let prefix = Word::parse(stdout(&out).trim(), 5).unwrap();
    assert_eq!(prefix.len(), 500);
    assert!(prefix.is_squarefree());
    assert!(revfree_core::avoidance::is_valid(&prefix, &AvoidanceQuery::reversal(2).unwrap()));

    let identity = morphism_file("0 -> 0\n1 -> 1\n2 -> 2\n");
    let out = revfree(&["morphic", "squarefree-test", "--morphism", identity.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doubling = morphism_file("0 -> 00\n1 -> 11\n2 -> 22\n");
    let out = revfree(&["morphic", "squarefree-test", "--morphism", doubling.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = revfree(&["morphic", "stream", "--period", "001011", "--preamble", "1", "--length", "13"]);
    assert_eq!(stdout(&out).trim(), "1001011001011");

    let missing = revfree(&["morphic", "apply", "--morphism", "/nonexistent/h", "--word", "0"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_paper_all_and_corrupted() {
    let out = revfree(&["verify-paper", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["total"], 8);
    assert_eq!(v["passed"], 8);

    // one changed letter in h6
    let bad = morphism_file("0 -> 0001011\n1 -> 0010110\n");
    let out = revfree(&["verify-paper", "--json", "--h6", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    for entry in v["entries"].as_array().unwrap() {
        let expected = if entry["id"] == "T6" { "fail" } else { "pass" };
        assert_eq!(entry["status"], expected, "{}", entry["id"]);
    }

    let single = json(&revfree(&["verify-paper", "--json", "--only", "t4"]));
    assert_eq!(single["total"], 1);
    assert_eq!(single["entries"][0]["id"], "T4");
    assert_eq!(revfree(&["verify-paper", "--only", "T9"]).status.code(), Some(2));
}
