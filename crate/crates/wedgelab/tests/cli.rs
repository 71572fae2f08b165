use std::path::Path;
use std::process::{Command, Output};

fn wedgelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wedgelab")).args(args).output().expect("binary runs")
}

fn config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn catalog_lists_rows_and_passes() {
    let out = wedgelab(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 18);
    assert_eq!(v["passed"], true);
    let sp4 = v["checks"].as_array().unwrap().iter().find(|c| c["realization"] == "sp(4)").unwrap();
    assert_eq!(sp4["computed_g1_dim"], 3);

    let out = wedgelab(&["catalog", "--family", "split"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["family"] == "split"));

    assert_eq!(wedgelab(&["catalog", "--family", "exotic"]).status.code(), Some(2));
}

#[test]
fn verify_quadric_passes_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "q.toml", "[run]\nn = 200\nseed = 5\n");
    let a = wedgelab(&["verify", "--suite", "quadric", "--config", &cfg]);
    let b = wedgelab(&["verify", "--suite", "quadric", "--config", &cfg]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v[0]["suite"], "quadric");
    assert_eq!(v[0]["seed"], 5);
}

#[test]
fn verify_all_with_zero_samples_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let cfg = config(
        dir.path(),
        "z.toml",
        &format!("[run]\nn = 0\n[output]\nreport = {:?}\n", report.to_str().unwrap()),
    );
    let out = wedgelab(&["verify", "--suite", "all", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn sequential_and_parallel_reports_match() {
    let dir = tempfile::tempdir().unwrap();
    let seq = config(dir.path(), "s.toml", "[run]\nn = 40\nexec = \"sequential\"\n");
    let par = config(dir.path(), "p.toml", "[run]\nn = 40\nexec = \"parallel\"\n");
    let a = wedgelab(&["verify", "--suite", "wedge", "--config", &seq]);
    let b = wedgelab(&["verify", "--suite", "wedge", "--config", &par]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn impossible_tolerance_is_an_invariant_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "t.toml", "[run]\nn = 10\n[tolerance]\nresidual = 1e-300\n");
    let out = wedgelab(&["verify", "--suite", "linop", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["passed"], false);
}

#[test]
fn config_errors_exit_two_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let bad = config(dir.path(), "bad.toml", "[run]\nseed = 1\nsed = 3\n");
    let out = wedgelab(&["verify", "--suite", "linop", "--config", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("sed"), "{err}");

    let garbled = config(dir.path(), "g.toml", "[run\nn = = 2\n");
    assert_eq!(wedgelab(&["verify", "--suite", "linop", "--config", &garbled]).status.code(), Some(2));
    let negative = config(dir.path(), "n.toml", "[tolerance]\nband = -1.0\n");
    assert_eq!(wedgelab(&["verify", "--suite", "linop", "--config", &negative]).status.code(), Some(2));
    let missing = dir.path().join("missing.toml");
    assert_eq!(wedgelab(&["verify", "--suite", "linop", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(wedgelab(&["verify", "--suite", "everything"]).status.code(), Some(2));
}

#[test]
fn sample_is_byte_identical_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = wedgelab(&["sample", "--spec", "dS2", "--domain", "positivity", "--n", "100", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "index,class,x0,x1,x2,positivity,margin");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 100);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 7);
        for c in &cells[2..5] {
            let x: f64 = c.parse().unwrap();
            assert_eq!(format!("{x:?}"), *c);
        }
    }
}

#[test]
fn sample_routes_sl2_kms_and_rejects_unsupported_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("k.csv");
    let out = wedgelab(&["sample", "--spec", "sl2-cayley", "--domain", "kms", "--n", "20", "--seed", "3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out_path).unwrap().starts_with("index,class,f0_x0,f0_x1,f0_x2,kms,margin\n"));

    let p = dir.path().join("x.csv");
    let p = p.to_str().unwrap();
    assert_eq!(wedgelab(&["sample", "--spec", "sp4", "--domain", "kms", "--n", "5", "--seed", "1", "--out", p]).status.code(), Some(2));
    assert_eq!(wedgelab(&["sample", "--spec", "so9", "--domain", "kms", "--n", "5", "--seed", "1", "--out", p]).status.code(), Some(2));
    assert_eq!(wedgelab(&["sample", "--spec", "dS2", "--domain", "moon", "--n", "5", "--seed", "1", "--out", p]).status.code(), Some(2));
}

#[test]
fn sample_reads_defaults_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let cfg = config(
        dir.path(),
        "s.toml",
        &format!("[run]\nspec = \"dS3\"\nn = 12\nseed = 4\n[output]\ncsv = {:?}\n", csv.to_str().unwrap()),
    );
    let out = wedgelab(&["sample", "--domain", "polar", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 13);
}
