use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorcat"))
        .args(args)
        .env_remove("TENSORCAT_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn valid_files_validate() {
    let out = run(&["validate", &data("cg_s3.json"), &data("s3_std.json"), &data("regular_cg_z2.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["schema"], "tensorcat-report/1");
    assert_eq!(v["result"]["passed"], true);
    let kinds: Vec<&str> =
        v["result"]["files"].as_array().unwrap().iter().map(|f| f["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["hopf", "corep", "corep"]);
}

#[test]
fn corrupted_json_exits_two_with_position() {
    let out = run(&["validate", &data("corrupted.json")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let err = v["result"]["files"][0]["error"].as_str().unwrap();
    assert!(err.contains("line 6 column"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["invariant", &data("no_such_file.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("i/o error"));
}

#[test]
fn non_unitary_corep_reports_unitarity_residual() {
    let out = run(&["validate", &data("non_unitary.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let checks = v["result"]["files"][0]["checks"].as_array().unwrap();
    let unit = checks.iter().find(|c| c["name"] == "unitarity").unwrap();
    assert_eq!(unit["passed"], false);
    assert!(unit["residual"].as_f64().unwrap() > 0.5);
    let out = run(&["invariant", &data("non_unitary.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not unitary"));
}

#[test]
fn s3_invariant_has_index_four() {
    let out = run(&["invariant", &data("s3_std.json"), "--depth", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let r = &v["result"];
    assert_eq!(r["index"].to_string(), "4.0000000000000000e+0");
    assert_eq!(r["checks"]["passed"], true);
    assert_eq!(r["standard_invariant"]["irreducible"], true);
    assert_eq!(v["parameters"]["depth"], 3);
    assert_eq!(v["parameters"]["seed"], 0);
}

#[test]
fn depth_one_gives_a_two_level_report() {
    let out = run(&["invariant", &data("s3_std.json"), "--depth", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["result"]["tower"]["a_levels"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["standard_invariant"]["bottom"].as_array().unwrap().len(), 2);
}

#[test]
fn dimension_one_is_rejected() {
    let out = run(&["invariant", &data("z2_character.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("does not exceed one"));
}

#[test]
fn invalid_depth_and_tolerance_are_rejected() {
    assert_eq!(run(&["invariant", &data("s3_std.json"), "--depth", "0"]).status.code(), Some(1));
    assert_eq!(run(&["invariant", &data("s3_std.json"), "--check-eps", "0"]).status.code(), Some(1));
}

fn dot_edges(dot: &str) -> Vec<(String, String, usize)> {
    dot.lines()
        .filter(|l| l.contains(" -- "))
        .map(|l| {
            let parts: Vec<&str> = l.trim().split(' ').collect();
            let m = parts[3].trim_start_matches("[multiplicity=").trim_end_matches("];");
            (parts[0].trim_matches('"').to_string(), parts[2].trim_matches('"').to_string(), m.parse().unwrap())
        })
        .collect()
}

#[test]
fn graph_json_and_dot_agree() {
    for file in ["regular_cg_z2.json", "s3_std.json"] {
        let j = run(&["graph", &data(file)]);
        assert_eq!(j.status.code(), Some(0), "{}", stderr(&j));
        let d = run(&["graph", &data(file), "--format", "dot"]);
        assert_eq!(d.status.code(), Some(0));
        let v = json(&j)["result"].clone();
        let even: Vec<&str> = v["even_vertices"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        let odd: Vec<&str> = v["odd_vertices"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        let mut from_json = Vec::new();
        for (i, e) in even.iter().enumerate() {
            for (k, o) in odd.iter().enumerate() {
                let m = v["adjacency"][i][k].as_u64().unwrap() as usize;
                if m > 0 {
                    from_json.push((format!("e{e}"), format!("o{o}"), m));
                }
            }
        }
        from_json.sort();
        let dot = String::from_utf8(d.stdout).unwrap();
        assert!(dot.starts_with("graph principal {"));
        assert_eq!(dot_edges(&dot), from_json);
    }
}

#[test]
fn regular_z2_graph_is_complete_bipartite() {
    let out = run(&["graph", &data("regular_cg_z2.json")]);
    let v = json(&out);
    assert_eq!(v["result"]["stabilized"], true);
    assert_eq!(v["result"]["adjacency"], serde_json::json!([[1, 1], [1, 1]]));
}

#[test]
fn unstabilized_graph_is_emitted_with_flag() {
    let out = run(&["graph", &data("s3_std.json"), "--depth", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("did not stabilize"));
    let v = json(&out);
    assert_eq!(v["result"]["stabilized"], false);
    assert!(!v["result"]["even_vertices"].as_array().unwrap().is_empty());
}

#[test]
fn selected_criteria_pass() {
    let out = run(&["selftest", "--criterion", "1", "--criterion", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 2);
}

#[test]
fn tiny_tolerance_fails_with_residuals() {
    let out = run(&["selftest", "--criterion", "6", "--check-eps", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("failing criteria: 6"));
    let v = json(&out);
    let checks = v["result"]["criteria"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["passed"] == false && c["residual"].as_f64().unwrap() > 0.0));
}

#[test]
fn selftest_output_is_byte_identical() {
    let a = run(&["selftest", "--level", "full", "--seed", "7"]);
    let b = run(&["selftest", "--level", "full", "--seed", "7"]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let threaded = Command::new(env!("CARGO_BIN_EXE_tensorcat"))
        .args(["selftest", "--level", "fast", "--seed", "7"])
        .env("TENSORCAT_THREADS", "4")
        .output()
        .unwrap();
    let c = run(&["selftest", "--level", "fast", "--seed", "7"]);
    assert_eq!(json(&threaded)["parameters"]["threads"], 4);
    assert_eq!(json(&threaded)["result"].to_string(), json(&c)["result"].to_string());
}

#[test]
fn text_format_lists_criteria() {
    let out = run(&["selftest", "--criterion", "2", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("criterion 2: PASS"));
}
