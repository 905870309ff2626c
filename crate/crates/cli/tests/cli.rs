use std::path::Path;
use std::process::Command;

use cgs_cli::generate::{generate, GenConfig, GenKind};
use cgs_cli::instance::{emit_instance, parse_instance, Instance};
use cgs_core::finders::find_linked_cycles_k6;
use serde_json::Value;

fn cgs(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cgs")).args(args).env_remove("CGS_OUT_DIR").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn gen_file(dir: &Path, kind: &str, seed: u64) -> String {
    let p = dir.join(format!("{kind}-{seed}.json"));
    let (code, _, err) = cgs(&["gen", "--kind", kind, "--seed", &seed.to_string(), "-o", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_writes_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_file(dir.path(), "k6-points", 7);
    let (code, stdout, _) = cgs(&["gen", "--kind", "k6-points", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(f).unwrap(), stdout);
}

#[test]
fn every_generated_kind_checks_ok() {
    let dir = tempfile::tempdir().unwrap();
    for kind in GenKind::ALL {
        let f = gen_file(dir.path(), kind.name(), 3);
        assert_eq!(cgs(&["check", &f]), (0, "ok\n".into(), String::new()), "{kind}");
    }
}

#[test]
fn check_reports_coplanar_points() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "flat.json", r#"{"kind":"points3","points":[[0,0,0],[1,0,0],[0,1,0],[1,1,0]]}"#);
    let (code, out, _) = cgs(&["check", &f]);
    assert_eq!(code, 1);
    assert!(out.starts_with("violation:"));
}

#[test]
fn check_reports_crossing_routes() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"kind":"embedding","graph":{"vertices":4,"edges":[[0,1],[2,3]]},
        "positions":[[0,0,0],[2,0,0],[1,-1,0],[1,1,0]]}"#;
    let (code, out, _) = cgs(&["check", &write(dir.path(), "x.json", text)]);
    assert_eq!(code, 1);
    assert!(out.contains("violation:"), "{out}");
}

#[test]
fn malformed_input_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", "{\n\"kind\": \"points3\",\n\"points\": [[1,2,3],\n]}");
    let (code, _, err) = cgs(&["check", &f]);
    assert_eq!(code, 1);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn vankampen_of_k5_and_pentagon_points() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_file(dir.path(), "k5-drawing", 11);
    assert_eq!(cgs(&["vankampen", &f]).1, "1\n");
    let p = write(dir.path(), "p.json", r#"{"kind":"points2","points":[[0,2],[2,1],[1,-2],[-1,-2],[-2,1]]}"#);
    assert_eq!(cgs(&["vankampen", &p]).1, "1\n");
}

#[test]
fn find_linked_on_points_and_embeddings() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["k6-points", "k44-linear", "k6-pl-subdivided"] {
        let f = gen_file(dir.path(), kind, 5);
        let (code, out, err) = cgs(&["find-linked", &f, "--verify", "--seed", "2"]);
        assert_eq!(code, 0, "{kind}: {err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["lk_value"], 1);
        assert_eq!(v["report"]["oracle_confirmed"], true);
        assert!(v["ledgers"].as_array().unwrap().iter().all(|l| l["total"] == l["expected"]));
    }
}

#[test]
fn find_linked_rejects_other_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_file(dir.path(), "polygon-pair", 1);
    let (code, _, err) = cgs(&["find-linked", &f]);
    assert_eq!(code, 1);
    assert!(err.contains("neither K6 nor K4,4"), "{err}");
}

#[test]
fn oracle_count_is_odd_for_k6_points() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_file(dir.path(), "k6-points", 9);
    let (code, out, _) = cgs(&["oracle", &f, "--cycles", "3,3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pairs"], 10);
    assert_eq!(v["count"].as_u64().unwrap() % 2, 1);
}

#[test]
fn project_writes_svg_under_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_file(dir.path(), "k6-points", 4);
    let out = Command::new(env!("CARGO_BIN_EXE_cgs"))
        .args(["project", &f, "--svg", "diagram.svg"])
        .env("CGS_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let crossings = v["crossings"].as_array().unwrap().len();
    let svg = std::fs::read_to_string(dir.path().join("diagram.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="gap""#).count(), crossings);
    assert_eq!(v["van_kampen"].as_u64().unwrap(), v["disjoint_edge_crossings"].as_u64().unwrap() % 2);
}

#[test]
fn link_agrees_between_file_forms() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..6 {
        let f = gen_file(dir.path(), "polygon-pair", seed);
        let (code, whole, err) = cgs(&["link", &f]);
        assert_eq!(code, 0, "{err}");
        let Instance::Embedding(emb) = parse_instance(&std::fs::read(&f).unwrap()).unwrap() else { panic!() };
        let n1 = emb.graph().neighbors(0).into_iter().max().unwrap() + 1;
        let split = |range: std::ops::Range<usize>| Instance::Points3(emb.positions()[range].to_vec());
        let a = write(dir.path(), "a.json", &emit_instance(&split(0..n1)));
        let b = write(dir.path(), "b.json", &emit_instance(&split(n1..emb.positions().len())));
        let (code, pair, _) = cgs(&["link", &a, &b, "--seed", "9"]);
        assert_eq!(code, 0);
        assert_eq!(whole, pair, "seed {seed}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cgs(&["gen", "--kind", "k5-drawing", "--bound", "0"]).0, 1);
    assert_eq!(cgs(&["oracle", "x.json", "--cycles", "3"]).0, 1);
    assert_eq!(cgs(&["check", "/nonexistent/file.json"]).0, 1);
    assert_eq!(cgs(&["--version"]).0, 0);
}

#[test]
fn subdivided_k6_seed_zero_finds_a_pair() {
    // Endpoint-ordered cancellation sums are odd for this instance; the
    // finder must only rely on the per-vertex sums.
    let Instance::Embedding(emb) = generate(GenKind::K6PlSubdivided, &GenConfig::default()).unwrap() else {
        panic!()
    };
    let f = find_linked_cycles_k6(&emb, 0, 10_000).unwrap();
    assert!(f.ledgers.iter().all(|l| l.holds()));
}
