//! The command-line interface, run as a subprocess.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lgorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgorb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = lgorb(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lgorb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_reports_the_milnor_ring() {
    let v = json(&["analyze", "--poly", "x^3 + x*y^2", "--vars", "x,y"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "analyze");
    assert_eq!(v["input"]["vars"], serde_json::json!(["x", "y"]));
    assert_eq!(v["result"]["milnor_number"], 4);
    assert_eq!(v["result"]["weights"], serde_json::json!(["1/3", "1/3"]));
    assert_eq!(v["result"]["central_charge"], "2/3");
}

#[test]
fn orbifold_spectrum_is_an_array_of_triples() {
    let v = json(&["orbifold", "--poly", "z^8", "--gens", "[[1/2]]", "--sigma", "1"]);
    let spec = v["result"]["spectrum"].as_array().unwrap();
    assert_eq!(spec.len(), 5);
    assert_eq!(spec[0], serde_json::json!(["0", "0", 0]));
    assert!(v["result"]["matches"].as_array().unwrap().contains(&Value::from("D_5")));
    assert_eq!(spec[2], serde_json::json!(["3/8", "3/8", 1]));
    assert_eq!(v["input"]["sigma"], serde_json::json!([1]));
    let chi = v["result"]["sectors"][1]["chi"].as_str().unwrap();
    assert!(chi.starts_with("theta="));
}

#[test]
fn dualize_is_deterministic() {
    let args = ["--format", "json", "dualize", "--poly", "x^3 + x*y^3", "--gens", "[[1/3,2/9]]"];
    let (a, b) = (lgorb(&args), lgorb(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["result"]["matches"], serde_json::json!(["E_7"]));
    assert_eq!(v["result"]["involution"], true);
    assert_eq!(v["result"]["euler_class"], "G-Euler");
}

#[test]
fn frobenius_file_feeds_the_axiom_checker() {
    let file = scratch("a4.json");
    let path = file.to_str().unwrap();
    let o = lgorb(&["orbifold", "--poly", "z^5", "--gens", "[[1/5]]", "--frobenius-out", path]);
    assert!(o.status.success());
    let o = lgorb(&["axioms", "--input", path]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("associativity") && !text.contains("FAIL"));
    // a corrupted structure constant is caught and the exit status says so
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    v["chi"][1] = Value::from("theta=1/7");
    let bad = scratch("a4-bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = lgorb(&["axioms", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn tables_exit_status_reflects_failures() {
    let o = lgorb(&["tables", "--which", "3", "--params", "n=2..4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failed"));
    let o = lgorb(&["tables", "--which", "p8"]);
    assert!(o.status.success());
    let v = json(&["tables", "--which", "2", "--params", "n=3..3"]);
    assert_eq!(v["input"]["n_min"], 3);
    assert!(v["result"]["table_2"]["rows"].as_array().unwrap().len() >= 4);
}

#[test]
fn fold_and_out_file() {
    let out = scratch("fold.json");
    let o = lgorb(&["--format", "json", "--out", out.to_str().unwrap(), "fold", "--poly", "x^3 + y^5", "--gens", "[[0,1/3]]"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["result"]["matches"], serde_json::json!(["H_4"]));
    assert_eq!(v["result"]["rank"], 4);
}

#[test]
fn catalog_override() {
    let file = scratch("catalog.json");
    std::fs::write(
        &file,
        r#"{"schema_version": 1, "catalog_version": "t", "families": [],
            "entries": [{"name": "Y", "degrees": ["0", "1/3"], "provenance": "test"}]}"#,
    )
    .unwrap();
    let v = json(&["--catalog", file.to_str().unwrap(), "fold", "--poly", "z^5", "--gens", "[[1/3]]"]);
    assert_eq!(v["result"]["matches"], serde_json::json!(["I_2(5)"]));
    let v = json(&["--catalog", file.to_str().unwrap(), "orbifold", "--poly", "z^3", "--gens", "[[0]]"]);
    assert!(v["result"]["matches"].as_array().unwrap().contains(&Value::from("Y")));
}

#[test]
fn input_errors() {
    for args in [
        vec!["orbifold", "--poly", "z^5", "--gens", "[1/5]"],
        vec!["orbifold", "--poly", "z^5", "--gens", "[[1/2]]"],
        vec!["orbifold", "--poly", "x^2*y^2", "--gens", "[[0,0]]"],
        vec!["orbifold", "--poly", "z^5", "--gens", "[[1/5]]", "--sigma", "1,1"],
        vec!["tables", "--which", "9"],
        vec!["analyze", "--poly", "x^3 +"],
    ] {
        let o = lgorb(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
    let o = lgorb(&["--max-group-order", "3", "orbifold", "--poly", "z^5", "--gens", "[[1/5]]"]);
    assert_eq!(o.status.code(), Some(2));
}
