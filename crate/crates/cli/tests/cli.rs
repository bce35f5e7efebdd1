use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.display().to_string()
}

fn spjoin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spjoin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn close(v: &Value, x: f64) -> bool {
    (v.as_f64().unwrap() - x).abs() < 1e-8
}

#[test]
fn spectrum_of_k4_minus_an_edge() {
    let out = spjoin(&["spectrum", &fixture("k4_minus_edge.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let groups = v["eigenvalues"].as_array().unwrap();
    let s17 = 17f64.sqrt();
    let want = [(1.0 + s17) / 2.0, 0.0, -1.0, (1.0 - s17) / 2.0];
    assert_eq!(groups.len(), 4);
    for (g, w) in groups.iter().zip(want) {
        assert!(close(&g["value"], w), "{g}");
    }
    assert_eq!(v["trace_check"]["pass"], true);
    assert_eq!(v["energy_check"]["pass"], true);
}

#[test]
fn spectrum_of_small_graphs() {
    let v = json(&spjoin(&["spectrum", &fixture("null2.json")]));
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 1);
    assert_eq!(v["eigenvalues"][0]["multiplicity"], 2);
    assert_eq!(v["eigenvalues"][0]["main"], true);
    assert_eq!(v["eigenvalues"][0]["value"].as_f64(), Some(0.0));

    let v = json(&spjoin(&["spectrum", &fixture("k4.json")]));
    let g = v["eigenvalues"].as_array().unwrap();
    assert!(close(&g[0]["value"], 3.0) && g[0]["main"] == true);
    assert!(close(&g[1]["value"], -1.0) && g[1]["multiplicity"] == 3 && g[1]["main"] == false);
}

#[test]
fn spectrum_reads_edge_lists() {
    let out = spjoin(&["spectrum", "--format", "edges", &fixture("petersen.edges")]);
    let v = json(&out);
    let g = v["eigenvalues"].as_array().unwrap();
    let got: Vec<(f64, u64)> = g.iter().map(|x| (x["value"].as_f64().unwrap(), x["multiplicity"].as_u64().unwrap())).collect();
    assert_eq!(got, vec![(3.0, 1), (1.0, 5), (-2.0, 4)]);
}

#[test]
fn output_is_deterministic() {
    let a = spjoin(&["join", &fixture("three_part_join.json"), "--verify-theorem1", "--verify-theorem2"]);
    let b = spjoin(&["join", &fixture("three_part_join.json"), "--verify-theorem1", "--verify-theorem2"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("-0.0,"));
}

#[test]
fn join_inherited_eigenvalues() {
    let out = spjoin(&["join", &fixture("three_part_join.json"), "--verify-theorem1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["graph"]["n"], 10);
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 19);
    assert_eq!(v["graph"]["labels"][9], "j");
    let parts = v["theorem1"]["parts"].as_array().unwrap();
    assert_eq!(parts[0]["hypothesis"]["status"], "certified");
    assert_eq!(parts[0]["excluded"].as_array().unwrap().len(), 1);
    assert!(close(&parts[0]["excluded"][0], 0.0));
    assert!(parts[0]["inherited"].as_array().unwrap().is_empty());
    assert!(close(&parts[1]["inherited"][0]["value"], 0.0));
    assert!(close(&parts[2]["inherited"][0]["value"], -1.0));
    assert_eq!(v["theorem1"]["pass"], true);
}

#[test]
fn join_unconstrained_cycle_family_spectrum_equality() {
    let out = spjoin(&["join", &fixture("cycle_path_12_3.json"), "--verify-theorem2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["theorem2"]["pass"], true);
    assert!(v["theorem2"]["equality_deviation"].as_f64().unwrap() < 1e-6);
}

#[test]
fn join_with_edgeless_host_is_a_disjoint_union() {
    let out = spjoin(&["join", &fixture("null_host.json"), "--emit", "edges"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "5\n0 1\n0 2\n1 2\n3 4\n");
}

#[test]
fn join_dot_has_clusters() {
    let out = spjoin(&["join", &fixture("three_part_join.json"), "--emit", "dot", "--verify-theorem1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph join {"));
    assert_eq!(text.matches("subgraph cluster_").count(), 3);
    assert!(text.contains("9 [label=\"j\"]"));
    assert_eq!(text.matches(" -- ").count(), 19);
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"theorem1\""));
}

#[test]
fn join_rejects_non_regular_parts_for_the_quotient_check() {
    let out = spjoin(&["join", &fixture("three_part_join.json"), "--verify-theorem2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_round_trip_through_join_output() {
    let out = spjoin(&["join", &fixture("null_host.json")]);
    let v = json(&out);
    let dir = std::env::temp_dir().join(format!("spjoin-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    std::fs::write(&path, serde_json::to_string(&v["graph"]).unwrap()).unwrap();
    let again = json(&spjoin(&["spread", path.to_str().unwrap()]));
    assert_eq!(again["edges"], 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn spread_of_gnk() {
    let out = spjoin(&["spread", "--gnk", "9", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(close(&v["spread"], 97f64.sqrt()));
    assert!(v["bounds"].as_array().unwrap().iter().all(|b| b["satisfied"] == true));
}

#[test]
fn spread_of_cycle_family() {
    let out = spjoin(&["spread", "--theorem6", "12", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(close(&v["spread"]["spread"], 12.0));
    // with q = n/2 each vertex has degree 2 + n/2, so the reported flag is false
    assert_eq!(v["nonregular"], false);
    assert_eq!(v["spread"]["regular_degree"], 8);

    let v = json(&spjoin(&["spread", "--theorem6", "13", "3", "4"]));
    assert_eq!(v["nonregular"], true);
    assert!(close(&v["spread"]["spread"], 12.0));
}

#[test]
fn spread_of_edgeless_graph() {
    let v = json(&spjoin(&["spread", "--format", "edges", &fixture("null3.edges")]));
    assert_eq!(v["spread"].as_f64(), Some(0.0));
}

#[test]
fn spread_source_conflicts_are_usage_errors() {
    assert_eq!(spjoin(&["spread", &fixture("k4.json"), "--gnk", "9", "6"]).status.code(), Some(1));
    assert_eq!(spjoin(&["spread"]).status.code(), Some(1));
    assert_eq!(spjoin(&["spread", "--gnk", "9", "9"]).status.code(), Some(1));
}

#[test]
fn parse_errors_exit_one_and_name_the_problem() {
    let dir = std::env::temp_dir().join(format!("spjoin-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.edges");
    std::fs::write(&path, "3\n0 1\n1\n").unwrap();
    let out = spjoin(&["spectrum", "--format", "edges", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    std::fs::write(&path, "{\"n\": 2, \"edges\": [[0, 5]]}").unwrap();
    let out = spjoin(&["spectrum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("edges"));
    std::fs::remove_dir_all(dir).unwrap();
    assert_eq!(spjoin(&["spectrum", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn verify_conjecture_small() {
    let out = spjoin(&["verify", "conjecture", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(close(&v["detail"]["max_spread"], 17f64.sqrt()));
    assert_eq!(v["detail"]["spectra_match"], true);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_lemma1_small() {
    let out = spjoin(&["verify", "lemma1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["violations"], 0);
}

#[test]
fn verify_bounds_exhaustive_section_is_clean() {
    let out = spjoin(&["verify", "bounds", "--n", "6", "--seed", "42", "--random", "500"]);
    let v = json(&out);
    let sections = v["sections"].as_array().unwrap();
    let exhaustive = sections.iter().find(|s| s["name"] == "exhaustive_graphs").unwrap();
    assert_eq!(exhaustive["cases"], 1 + 2 + 8 + 64 + 1024 + 32768);
    let violated: u64 = exhaustive["checks"]
        .as_object()
        .unwrap()
        .values()
        .map(|t| t["violated"].as_u64().unwrap())
        .sum();
    assert_eq!(violated, 0);
    // the exit code reflects every section
    let total = v["violations"].as_u64().unwrap();
    assert_eq!(out.status.code(), Some(if total == 0 { 0 } else { 2 }));
}

#[test]
fn verify_capacity_limits() {
    assert_eq!(spjoin(&["verify", "conjecture", "--n", "8"]).status.code(), Some(1));
    assert_eq!(spjoin(&["verify", "conjecture", "--n", "10", "--long"]).status.code(), Some(3));
    assert_eq!(spjoin(&["verify", "lemma1", "--n", "9", "--long"]).status.code(), Some(3));
}
