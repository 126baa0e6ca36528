use std::fs;
use std::path::PathBuf;

use rgraphs::cli::run;
use rgraphs::format::{to_edge_list, to_graph6};
use rgraphs::named;
use serde_json::Value;

fn write(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn petersen_file() -> String {
    write("petersen.g6", &to_graph6(&named::petersen()).unwrap())
        .display()
        .to_string()
}

fn json_lines(stdout: &str) -> Vec<Value> {
    stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn every_subcommand_runs_on_petersen() {
    let p = petersen_file();
    let expected = [
        ("classify", "true"),
        ("rgraph", "true"),
        ("oddcut", "found"),
        ("tightcut", "false"),
        ("brick", "true"),
        ("color", "found"),
        ("fulkerson", "found"),
        ("fanraspaud", "found"),
        ("fixedf", "found"),
        ("gadget", "true"),
        ("unslicable", "true"),
        ("verify-t5", "true"),
    ];
    for (cmd, status) in expected {
        let out = run(["rgraphs", cmd, "--json", &p]);
        assert_eq!(out.code, 0, "{cmd}: {}", out.stderr);
        let reports = json_lines(&out.stdout);
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0]["status"], status, "{cmd}");
        assert_eq!(reports[0]["falsified"], false);
    }
}

#[test]
fn colour_count_flag() {
    let p = petersen_file();
    let out = run(["rgraphs", "color", "--colors", "3", "--json", &p]);
    assert_eq!(json_lines(&out.stdout)[0]["status"], "refuted");
    assert_eq!(out.code, 0);
}

#[test]
fn fixed_matching_flag() {
    let p = write("k4.txt", &to_edge_list(&named::k4()));
    let p = p.to_str().unwrap();
    let out = run(["rgraphs", "fixedf", "--matching", "0,5", "--json", p]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json_lines(&out.stdout)[0]["status"], "found");
    let out = run(["rgraphs", "fixedf", "--matching", "0,1", "--json", p]);
    assert_eq!(out.code, 1);
    assert_eq!(json_lines(&out.stdout)[0]["status"], "error");
}

#[test]
fn budget_exhaustion_exits_2() {
    let p = petersen_file();
    let out = run(["rgraphs", "color", "--colors", "3", "--budget", "5", &p]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("indeterminate"));
}

#[test]
fn bad_input_is_an_error_line_not_a_crash() {
    let p = write("bad.txt", "4 2\n0 1\n1 1\n");
    let out = run(["rgraphs", "rgraph", p.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("error"));
    let out = run(["rgraphs", "rgraph", "/nonexistent/graph.g6"]);
    assert_eq!(out.code, 1);
    assert!(!out.stderr.is_empty());
    let out = run(["rgraphs", "rgraph"]);
    assert_eq!(out.code, 1);
}

#[test]
fn unknown_subcommand_is_rejected() {
    let out = run(["rgraphs", "frobnicate"]);
    assert_eq!(out.code, 1);
    assert!(!out.stderr.is_empty());
}

#[test]
fn rgraph_reports_failing_clause() {
    let p = write("bridged.txt", &to_edge_list(&named::bridged_cubic()));
    let out = run(["rgraphs", "rgraph", "--json", p.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let r = &json_lines(&out.stdout)[0];
    assert_eq!(r["status"], "false");
    assert_eq!(r["witness"]["failure"]["clause"], "small_odd_cut");
    assert_eq!(r["witness"]["bridgeless"], false);
}

#[test]
fn corpus_summary_and_ordering() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/cubic");
    let dir = dir.to_str().unwrap();
    let serial = run(["rgraphs", "corpus", "--predicate", "rgraph", "--json", dir]);
    let parallel = run([
        "rgraphs", "corpus", "--predicate", "rgraph", "--json", "--jobs", "4", dir,
    ]);
    assert_eq!(serial.code, 0, "{}", serial.stderr);
    assert_eq!(serial.stdout, parallel.stdout);
    let lines = json_lines(&serial.stdout);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["graphs"], 27);
    assert_eq!(summary["falsified"], 0);
    assert_eq!(summary["error"], 0);
}

#[test]
fn timing_is_opt_in() {
    let p = petersen_file();
    let out = run(["rgraphs", "rgraph", "--json", &p]);
    assert!(!out.stdout.contains("wall_ms"));
    let out = run(["rgraphs", "rgraph", "--json", "--timing", &p]);
    assert!(out.stdout.contains("wall_ms"));
}

#[test]
fn corpus_skips_graphs_outside_the_precondition() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/cubic");
    let out = run([
        "rgraphs",
        "corpus",
        "--predicate",
        "fulkerson",
        "--json",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let lines = json_lines(&out.stdout);
    let skipped: Vec<_> = lines.iter().filter(|l| l["status"] == "skipped").collect();
    assert_eq!(skipped.len(), 1);
    assert!(skipped[0]["error"].as_str().unwrap().contains("not a 3-graph"));
    assert_eq!(lines.last().unwrap()["summary"]["found"], 26);
}
