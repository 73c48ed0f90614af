use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn twoweight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoweight")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

const PARITY: &str = r#"{"ring":"Z/4","rows":[[1,0,3],[0,1,3]]}"#;
const IMPROPER: &str = r#"{"ring":"F/2xF/2","rows":[[[1,1],[0,0],[1,1]],[[0,0],[1,1],[1,1]]]}"#;

#[test]
fn ring_info_reports() {
    let out = twoweight(&["ring", "info", "Z/4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("w(2) = 2"));
    assert!(stdout(&twoweight(&["ring", "info", "T:F2XY"])).contains("Frobenius: no (socle not cyclic)"));
    assert!(stdout(&twoweight(&["ring", "info", "F/2xF/2"])).contains("positive definite: no"));
    let bad = twoweight(&["ring", "info", "Z/1x"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn analyze_parity_code() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "parity.json", PARITY);
    let out = twoweight(&["code", "analyze", "--matrix", &m]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["two_weight"], serde_json::json!({"w1": "2", "w2": "4", "b1": 6, "b2": 9}));
    assert_eq!(report["srg"]["feasible"], true);
    let tsv = stdout(&twoweight(&["code", "analyze", "--matrix", &m, "--format", "tsv"]));
    assert_eq!(tsv, "weight\tcount\n0\t1\n2\t6\n4\t9\n");
}

#[test]
fn construct_then_verify_graph() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("z9.json").display().to_string();
    let out = twoweight(&["construct", "--family", "p61", "--ring", "Z/9", "--s", "1", "--out", &m]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("4\t2\t3\t9/2\t81\t24\t9\t6\n"));
    let out = twoweight(&["graph", "build", "--matrix", &m, "--verify", "full"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(81,24,9,6) verified"));
    assert!(text.contains("feasible: yes"));
    let none = stdout(&twoweight(&["graph", "build", "--matrix", &m, "--verify", "none"]));
    assert!(none.contains("formula-only"));
    let max = stdout(&twoweight(&["graph", "build", "--matrix", &m, "--adjacency-weight", "4.5"]));
    assert!(max.contains("(81,56,37,42) verified"));
}

#[test]
fn graph_exports() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "parity.json", PARITY);
    let g = dir.path().join("g.dimacs");
    let out = twoweight(&[
        "graph", "build", "--matrix", &m, "--format", "dimacs", "--out", g.to_str().unwrap(), "--verify",
        "sampled:3:1000",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(16,6,2,2) verified (1000 pairs)"));
    let text = std::fs::read_to_string(&g).unwrap();
    assert!(text.starts_with("p edge 16 48\n"));
    let bad = twoweight(&["graph", "build", "--matrix", &m, "--format", "gml"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn improper_code_needs_flag() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "improper.json", IMPROPER);
    assert_eq!(twoweight(&["graph", "build", "--matrix", &m]).status.code(), Some(2));
    let out = twoweight(&["graph", "build", "--matrix", &m, "--force-improper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(16,3,2,0) verified"));
    assert!(text.contains("nontrivial: no"));
}

#[test]
fn geometry_dump_counts() {
    let out = twoweight(&["geometry", "dump", "--ring", "Z/4", "--dim", "2"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["points"].as_array().unwrap().len(), 6);
    assert_eq!(report["neighbour_classes"].as_array().unwrap().len(), 3);
    let report: Value = serde_json::from_str(&stdout(&twoweight(&["geometry", "dump", "--ring", "F/2xF/2", "--dim", "2"]))).unwrap();
    assert!(report["neighbour_classes"].is_null());
}

#[test]
fn manifests_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "parity.json", PARITY);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (man, threads) in [(&a, "1"), (&b, "2")] {
        let out = twoweight(&["--threads", threads, "--manifest", man.to_str().unwrap(), "code", "analyze", "--matrix", &m]);
        assert!(out.status.success());
    }
    let a: Value = serde_json::from_str(&std::fs::read_to_string(a).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(b).unwrap()).unwrap();
    assert_eq!(a["outputs"], b["outputs"]);
    assert_eq!(a["inputs"], b["inputs"]);
    assert_eq!(a["subcommand"], "code analyze");
}

fn golden(name: &str) {
    let expected = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.tsv"))).unwrap();
    let out = twoweight(&["tables", name]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), expected);
}

#[test]
fn golden_z9() {
    golden("z9");
}

#[test]
fn golden_p62() {
    golden("p62");
}

#[test]
fn golden_segments_q2() {
    golden("segments-q2");
}

#[test]
fn golden_segments_q3() {
    golden("segments-q3");
}
