use std::fs;
use std::path::PathBuf;
use std::process::Command;

use rllab_core::families::{fixture_corpus, Expected, FamilySpec};
use serde_json::{json, Value};

fn rllab(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_rllab"))
        .args(args)
        .env_remove("RLLAB_BUDGET")
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().expect("exit code"), report)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn set(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn whirl_rl_two_is_twelve() {
    let (code, r) = rllab(&["rl-number", "--family", "whirl", "--t", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["value"], 12);
    assert_eq!(r["result"]["query"], "RL(2)");
    let paths = r["result"]["witness"]["paths"].as_array().unwrap();
    let total: usize = paths.iter().map(|p| p.as_array().unwrap().len()).sum();
    assert_eq!((paths.len(), total), (2, 12));
}

#[test]
fn paw_rl_exploration_stalls_at_one_two_three() {
    let (code, r) = rllab(&["force", "--rule", "rl", "--family", "paw", "--initial", "2,3"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["stalled_state_exists"], true);
    let states = res["states"].as_array().unwrap();
    assert!(states.iter().any(|s| set(&s["blue"]) == [1, 2, 3] && s["stalled"] == true));
    let sizes: std::collections::BTreeSet<usize> = states.iter().map(|s| set(&s["blue"]).len()).collect();
    assert!(sizes.len() >= 2);
    for step in res["steps"].as_array().unwrap() {
        assert!(step["from"].is_u64() && step["to"].is_u64() && step["blue"].is_array());
    }
}

#[test]
fn paw_z_trace_colors_everything() {
    let (code, r) = rllab(&["force", "--rule", "z", "--family", "paw", "--initial", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["forcing_set"], true);
    assert_eq!(set(&r["result"]["blue"]), [1, 2, 3, 4]);
    let (_, single) = rllab(&["force", "--rule", "z", "--family", "paw", "--initial", "4"]);
    assert_eq!(single["result"]["forcing_set"], false);
}

#[test]
fn hypercube_bounds_all_pass() {
    let (code, r) = rllab(&["verify-bounds", "--family", "hypercube:3", "--t", "2", "--rsl", "--seeds", "50"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["all_pass"], true);
    assert_eq!(res["checks"].as_array().unwrap().len(), 50);
    assert_eq!(res["linkage_number"]["value"], 4);
}

#[test]
fn verify_all_passes_by_default() {
    let (code, r) = rllab(&["verify-all"]);
    assert_eq!(code, 0, "{}", r["result"]["failing_citations"]);
    let res = &r["result"];
    assert_eq!(res["failed"], 0);
    assert_eq!(res["records"], fixture_corpus().len());
    assert_eq!(res["property_violations"], 0);
    for e in res["summary"].as_array().unwrap() {
        assert!(e["citation"].is_string() && e["runtime_ms"].is_number());
        assert!(!e["expected"].is_null());
        assert_eq!(e["pass"], true);
    }
}

#[test]
fn verify_all_filter_keeps_one_family() {
    let (code, r) = rllab(&["verify-all", "--family", "T_k"]);
    assert_eq!(code, 0);
    let fams: Vec<&str> = r["result"]["summary"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["family"].as_str().unwrap())
        .collect();
    assert_eq!(fams, ["tk:2", "tk:3"]);
    let (_, one) = rllab(&["verify-all", "--family", "cycle:5"]);
    assert!(one["result"]["summary"].as_array().unwrap().iter().all(|e| e["family"] == "cycle:5"));
}

#[test]
fn wrong_fixture_exits_one_and_names_it() {
    let mut corpus = fixture_corpus();
    corpus.retain(|r| r.family == FamilySpec::Paw || r.family == FamilySpec::Seth);
    corpus[0].expected = Expected::Int(99);
    corpus[0].citation = "planted: wrong value".into();
    let path = scratch("wrong_corpus.json");
    fs::write(&path, serde_json::to_string(&corpus).unwrap()).unwrap();
    let (code, r) = rllab(&["verify-all", "--corpus", path.to_str().unwrap(), "--skip-properties"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "violation");
    assert_eq!(r["result"]["failing_citations"], json!(["planted: wrong value"]));
    assert_eq!(r["result"]["failed"], 1);
}

#[test]
fn reports_round_trip() {
    let cases: [&[&str]; 3] = [
        &["verify-bounds", "--family", "cycle:6", "--t", "2", "--seeds", "5", "--seed", "17"],
        &["det-expand", "--family", "paw", "--alpha", "1,2", "--beta", "3,4", "--seed", "3"],
        &["rsl-number", "--family", "seth", "--t", "2"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let out = scratch(&format!("report_{i}.json"));
        let mut with_out = args.to_vec();
        with_out.extend(["--out", out.to_str().unwrap()]);
        let (code, first) = rllab(&with_out);
        assert_eq!(code, 0);
        let saved: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(saved, first);
        let (code, again) = rllab(&["rerun", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(again["config"], first["config"]);
        assert_eq!(again["result"], first["result"]);
    }
}

#[test]
fn different_seeds_draw_different_matrices() {
    let run = |seed: &str| rllab(&["det-expand", "--family", "cycle:5", "--alpha", "1", "--beta", "3", "--seed", seed]).1;
    let (a, b) = (run("1"), run("2"));
    assert_ne!(a["result"]["matrix"], b["result"]["matrix"]);
    assert_eq!(a["result"]["agree"], true);
    assert_eq!(a["result"]["expansion"], a["result"]["elimination"]);
}

#[test]
fn exit_codes() {
    assert_eq!(rllab(&["z-number", "--family", "nope"]).0, 3);
    assert_eq!(rllab(&["z-number", "--family", "paw", "--graph", "x.json"]).0, 3);
    assert_eq!(rllab(&["z-number"]).0, 3);
    assert_eq!(rllab(&["z-number", "--family", "paw", "--budget", "0"]).0, 3);
    assert_eq!(rllab(&["rl-number", "--family", "paw", "--t", "9"]).0, 3);
    assert_eq!(rllab(&["frobnicate"]).0, 3);
    let (code, r) = rllab(&["rl-number", "--family", "mary", "--t", "2", "--budget", "5"]);
    assert_eq!((code, r["status"].as_str()), (2, Some("budget-exhausted")));
    let (code, r) = rllab(&["certify", "--family", "paw", "--property", "rigid", "--paths", "1-4"]);
    assert_eq!(code, 3);
    assert!(r["error"].is_string());
    let help = Command::new(env!("CARGO_BIN_EXE_rllab")).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn budget_falls_back_to_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rllab"))
        .args(["rl-number", "--family", "mary", "--t", "2"])
        .env("RLLAB_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["budget_limit"], 5);
}

#[test]
fn graph_files_in_both_formats() {
    let json_path = scratch("c4.json");
    fs::write(&json_path, r#"{"n":4,"edges":[[1,2],[2,3],[3,4],[4,1]]}"#).unwrap();
    let text_path = scratch("c4.txt");
    fs::write(&text_path, "4\n1 2\n2 3\n3 4\n4 1\n").unwrap();
    let a = rllab(&["z-number", "--graph", json_path.to_str().unwrap()]).1;
    let b = rllab(&["z-number", "--graph", text_path.to_str().unwrap()]).1;
    assert_eq!(a["result"]["value"], 2);
    assert_eq!(a["result"], b["result"]);
    let dup = scratch("dup.json");
    fs::write(&dup, r#"{"n":3,"edges":[[1,2],[2,1]]}"#).unwrap();
    assert_eq!(rllab(&["z-number", "--graph", dup.to_str().unwrap()]).0, 3);
}

#[test]
fn certify_properties() {
    let holds = |args: &[&str]| {
        let (code, r) = rllab(args);
        assert_eq!(code, 0, "{r}");
        r["result"]["holds"].as_bool().unwrap()
    };
    let paw = ["certify", "--family", "paw"];
    let with = |extra: &[&'static str]| [paw.as_slice(), extra].concat();
    assert!(holds(&with(&["--property", "rigid", "--paths", "2-1;3-4", "--alpha", "2,3", "--beta", "1,4"])));
    assert!(holds(&with(&["--property", "unique", "--paths", "1-2"])));
    assert!(!holds(&with(&["--property", "vital", "--paths", "1-2"])));
    assert!(holds(&with(&["--property", "rigid-shortest", "--paths", "1-2", "--alpha", "1", "--beta", "2"])));
    assert!(holds(&["certify", "--family", "cycle:6", "--property", "two-parallel-paths"]));
    assert!(!holds(&["certify", "--family", "complete:4", "--property", "two-parallel-paths"]));
    let x = ["certify", "--family", "x", "--property", "x-minor", "--paths"];
    assert!(holds(&[x.as_slice(), &["1-2;3-4", "--alpha", "1,3", "--beta", "2,4"]].concat()));
    assert!(!holds(&[x.as_slice(), &["1-2;4-3", "--alpha", "1,4", "--beta", "2,3"]].concat()));
}

#[test]
fn spectra_and_treewidth() {
    let (code, r) = rllab(&["spectra", "--family", "tk:3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["matrix"], "tk-e-matrix");
    assert_eq!(r["result"]["spectrum"]["multiplicities"], json!([11, 7, 6, 2, 2, 1, 1, 1]));
    assert_eq!(r["result"]["tk"]["relation_ok"], true);
    let (_, r) = rllab(&["spectra", "--family", "complete:5"]);
    assert_eq!(r["result"]["spectrum"]["multiplicities"], json!([4, 1]));
    let m = scratch("m.json");
    fs::write(&m, r#"{"n":2,"entries":[["0","1/2"],["1/2","0"]]}"#).unwrap();
    let (_, r) = rllab(&["spectra", "--matrix", m.to_str().unwrap()]);
    assert_eq!(r["result"]["spectrum"]["raw"], json!([-0.5, 0.5]));
    let (code, r) = rllab(&["treewidth", "--family", "complete:5"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["treewidth"]["width"], 4);
    assert_eq!(r["result"]["decomposition_valid"], true);
}

#[test]
fn families_catalog() {
    let (code, r) = rllab(&["families", "list"]);
    assert_eq!(code, 0);
    assert!(r["result"].as_array().unwrap().len() >= 10);
    let (_, r) = rllab(&["families", "show", "paw"]);
    assert_eq!(r["result"]["order"], 4);
    assert_eq!(r["result"]["graph"]["edges"].as_array().unwrap().len(), 4);
    assert_eq!(rllab(&["families", "show", "hypercube:8"]).0, 3);
}
