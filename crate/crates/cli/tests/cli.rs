use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn edgereg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgereg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_graph(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const C3: &str = r#"{"vertices":[{"name":"x1","weight":2},{"name":"x2","weight":2},{"name":"x3","weight":2}],
"edges":[["x3","x1"],["x1","x2"],["x2","x3"]]}"#;

#[test]
fn ideal_basis_and_reg() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "c3.json", C3);
    let o = edgereg(&["ideal", "--graph", &g]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(x1^2*x3, x1*x2^2, x2*x3^2)");

    let o = edgereg(&["basis", "--graph", &g, "--t", "2"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,vector,monomial");
    assert_eq!(lines[1], "1,2 0 0,x1^4*x3^2");
    assert_eq!(lines.len(), 7);

    // closed form for C_3 with weights 2: 6 - 3 + 1 + (t - 1) * 3
    let o = edgereg(&["reg", "--graph", &g, "--t", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("7"));
}

#[test]
fn betti_json_and_grid() {
    let o = edgereg(&["betti", "--ideal", "(x, y)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["field"], "Q");
    assert_eq!(v["entries"][1], serde_json::json!({"i": 1, "j": 2, "rank": 1}));
    let o = edgereg(&["betti", "--ideal", "(x, y)", "--format", "grid", "--field", "GF2"]);
    assert!(stdout(&o).contains("1: 2 1"));
}

#[test]
fn formula_reports_normalization_and_violations() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(
        dir.path(),
        "path.json",
        r#"{"vertices":[{"name":"a","weight":4},{"name":"b","weight":1},{"name":"c","weight":2}],"edges":[["a","b"],["b","c"]]}"#,
    );
    let o = edgereg(&["formula", "--graph", &g, "--t", "1"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("normalized to 1"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["admissible"], false);
    assert_eq!(v["predicted"], 1 + 1 + 2 - 2 + 1);
    assert!(v["value"].is_null());
}

#[test]
fn verify_examples_pass() {
    let o = edgereg(&["verify", "examples"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn campaign_is_deterministic_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, csv) = (dir.path().join("a.json"), dir.path().join("b.json"), dir.path().join("r.csv"));
    for (out, workers) in [(&a, "1"), (&b, "3")] {
        let o = edgereg(&[
            "verify", "campaign", "--family", "cycle", "--n", "3..4", "--t", "1..2", "--weights", "2,3", "--seed", "7",
            "--workers", workers, "--no-timing", "--out", out.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(report["schema"], "edgereg.verify/1");
    assert_eq!(report["records"].as_array().unwrap().len(), (8 + 16) * 2);
    let rows = fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("id,family,n,instance,weights,t,class,admissible,predicted,engine,status,reason,field,elapsed_ms"));
    assert_eq!(rows.lines().count(), 1 + 48);
}

#[test]
fn exit_codes() {
    // lattice cap of 1 forces every instance to be skipped
    let o = edgereg(&["verify", "campaign", "--family", "cycle", "--n", "3", "--t", "1", "--weights", "2", "--lattice-cap", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = edgereg(&["reg", "--ideal", "(x*"]);
    assert_eq!(o.status.code(), Some(3));
    let o = edgereg(&["verify", "structure", "--n", "3", "--t", "1..2", "--weights", "2"]);
    assert_eq!(o.status.code(), Some(0));
}
