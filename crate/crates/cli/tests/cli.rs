use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use locale_workbench::birkhoff::{clopen_upset_lattice, LatticeJson};
use locale_workbench::poset::PosetJson;
use serde_json::Value;

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Writes `text` to a fresh file under the system temp directory.
fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("workbench-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(space: &str, name: &str) -> Value {
    let path = fixture(name, space);
    let out = workbench(&["analyze", arg(&path)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const CHAIN3: &str = r#"{"points":["0","a","1"],"covers":[["0","a"],["a","1"]]}"#;
const M3: &str = r#"{"points":["0","a","b","c","1"],"covers":[["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}"#;
const BOOL4: &str = r#"{"points":["0","a","b","1"],"covers":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#;

#[test]
fn dual_of_three_chain_is_two_chain() {
    let lattice = fixture("chain3.json", CHAIN3);
    let dot = fixture("chain3.dot", "");
    let out = workbench(&["dual", arg(&lattice), "--dot", arg(&dot)]);
    assert_eq!(code(&out), 0);
    let space: PosetJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(space.points.len(), 2);
    assert_eq!(space.covers.len(), 1);
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph") && dot.contains("->"));
}

#[test]
fn dual_round_trips_through_the_upset_lattice() {
    for (name, text) in [("c3.json", CHAIN3), ("b4.json", BOOL4)] {
        let lattice = fixture(name, text);
        let out = workbench(&["dual", arg(&lattice)]);
        assert_eq!(code(&out), 0);
        let space: PosetJson = serde_json::from_slice(&out.stdout).unwrap();
        let back = clopen_upset_lattice(&space.build().unwrap()).lattice.to_poset().unwrap();
        let input: LatticeJson = serde_json::from_str(text).unwrap();
        let input = input.build().unwrap().to_poset().unwrap();
        assert_eq!(back.canonical_form(), input.canonical_form(), "{name}");
    }
}

#[test]
fn dual_rejects_m3_with_a_witness() {
    let lattice = fixture("m3.json", M3);
    let out = workbench(&["dual", arg(&lattice)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("distributivity fails"));
}

#[test]
fn dual_of_two_element_lattice_is_a_point() {
    let lattice = fixture("two.json", r#"{"points":["0","1"],"covers":[["0","1"]]}"#);
    let out = workbench(&["dual", arg(&lattice)]);
    let space: PosetJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(space.points.len(), 1);
}

#[test]
fn analyze_fan_families() {
    let omega = report(r#"{"family":"omega_fans"}"#, "omega.json");
    assert_eq!(omega["flags"]["hausdorff"], false);
    assert_eq!(omega["flags"]["has_unit"], true);
    let bare = report(r#"{"family":"bare_fan"}"#, "bare.json");
    let f = &bare["flags"];
    assert_eq!((&f["hausdorff"], &f["compact"]), (&Value::Bool(true), &Value::Bool(false)));
    assert_eq!((&f["has_unit"], &f["max_bounded"]), (&Value::Bool(false), &Value::Bool(true)));
    let chain = report(r#"{"family":"chain_fans"}"#, "chain.json");
    assert_eq!(chain["unit"]["refutation"]["point_class"], "X_ω*");
}

#[test]
fn analyze_two_chain() {
    let r = report(r#"{"points":["x1","x2"],"covers":[["x1","x2"]]}"#, "ch2.json");
    assert_eq!(r["min_yd"]["text"], "{x2}");
    for (_, v) in r["flags"].as_object().unwrap() {
        assert_eq!(*v, Value::Bool(true));
    }
}

#[test]
fn analyze_is_deterministic_and_renders() {
    let path = fixture("det.json", r#"{"family":"fan_plus_bottom"}"#);
    let a = workbench(&["analyze", arg(&path), "--format", "text"]);
    let b = workbench(&["analyze", arg(&path), "--format", "text"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("min Y_d"));
    let dot = workbench(&["analyze", arg(&path), "--format", "dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).contains("fillcolor"));
}

#[test]
fn analyze_rejects_bad_input() {
    let path = fixture("bad.json", r#"{"family":"no_such_family"}"#);
    assert_eq!(code(&workbench(&["analyze", arg(&path)])), 2);
    let cyclic = fixture("cyc.json", r#"{"points":["a","b"],"covers":[["a","b"],["b","a"]]}"#);
    assert_eq!(code(&workbench(&["analyze", arg(&cyclic)])), 2);
    assert_eq!(code(&workbench(&["analyze", "/no/such/file.json"])), 2);
}

#[test]
fn verify_default_run_passes() {
    let out = workbench(&["verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains(" 0 failed"));
}

#[test]
fn verify_filters_and_emits_json() {
    let out = workbench(&["verify", "--only", "upset-Nj-eq-Fj", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids = v["by_theorem"].as_object().unwrap();
    assert_eq!(ids.keys().collect::<Vec<_>>(), ["upset-Nj-eq-Fj"]);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&workbench(&["verify", "--bound", "8"])), 64);
    assert_eq!(code(&workbench(&["verify", "--only", "no-such-theorem"])), 64);
    assert_eq!(code(&workbench(&["frobnicate"])), 64);
    assert_eq!(code(&workbench(&["--help"])), 0);
}

#[test]
fn nucleus_reports_its_nuclear_set() {
    let space = fixture("n-ch2.json", r#"{"points":["x1","x2"],"covers":[["x1","x2"]]}"#);
    let table = fixture("n-dn.json", r#"[[[],[]],[["x2"],["x1","x2"]],[["x1","x2"],["x1","x2"]]]"#);
    let out = workbench(&["nucleus", arg(&space), arg(&table)]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nuclear_set"], serde_json::json!(["x2"]));
    assert_eq!(v["dense"], true);
    let broken = fixture("n-bad.json", r#"[[[],[]],[["x2"],[]],[["x1","x2"],["x1","x2"]]]"#);
    assert_eq!(code(&workbench(&["nucleus", arg(&space), arg(&broken)])), 2);
}
