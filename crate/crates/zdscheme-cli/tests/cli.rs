use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zdscheme"))
}

fn spec(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, json).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const Z2X2_COUNTING: &str = r#"{"kind":"vilenkin","orders":[2,2],"normalization":"counting"}"#;
const Z9: &str = r#"{"kind":"padic","p":3,"d":2}"#;

#[test]
fn tables_writes_six_files_with_counting_p_rows() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z2x2.json", Z2X2_COUNTING);
    let out = t.path().join("out");
    let o = run(&["tables", "--spec", &s, "--format", "csv", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut names: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "block_tables.csv",
            "intersections.csv",
            "p_table.csv",
            "q_table.csv",
            "schur.csv",
            "valencies.csv"
        ]
    );
    let p = fs::read_to_string(out.join("p_table.csv")).unwrap();
    assert_eq!(p, "radius,0,1,2\n0,1,1,1\n1,1,1,-1\n2,2,-2,0\n");
}

#[test]
fn tables_are_byte_identical_across_runs() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z9.json", Z9);
    for format in ["csv", "json"] {
        let a = t.path().join(format!("a_{format}"));
        let b = t.path().join(format!("b_{format}"));
        for d in [&a, &b] {
            let o = run(&["tables", "--spec", &s, "--format", format, "--out-dir", d.to_str().unwrap()]);
            assert_eq!(code(&o), 0);
        }
        for e in fs::read_dir(&a).unwrap() {
            let name = e.unwrap().file_name();
            assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
        }
    }
}

#[test]
fn z9_block_table_has_phase_column() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z9.json", Z9);
    let out = t.path().join("out");
    let o = run(&["tables", "--spec", &s, "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let bt = fs::read_to_string(out.join("block_tables.csv")).unwrap();
    assert!(bt.starts_with("table,row,col,magnitude,phase,value\n"));
    assert!(bt.lines().any(|l| l.contains(",1/3,") || l.contains(",2/3,")));
}

#[test]
fn json_tables_parse() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z9.json", Z9);
    let out = t.path().join("out");
    let o = run(&["tables", "--spec", &s, "--format", "json", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(out.join("q_table.json")).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn invalid_specs_exit_with_two() {
    let t = tempfile::tempdir().unwrap();
    let empty = spec(t.path(), "empty.json", r#"{"kind":"vilenkin","orders":[]}"#);
    let o = run(&["tables", "--spec", &empty]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("/orders"));

    let broken = spec(t.path(), "broken.json", "{");
    assert_eq!(code(&run(&["verify", "--spec", &broken])), 2);
    assert_eq!(code(&run(&["verify", "--spec", "/nonexistent/spec.json"])), 2);
}

#[test]
fn verify_passes_on_z2_squared() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z2x2.json", Z2X2_COUNTING);
    let o = run(&["verify", "--spec", &s]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(v["suites"].as_array().unwrap().len() >= 5);
}

#[test]
fn verify_passes_on_windowed_chain() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(
        t.path(),
        "w.json",
        r#"{"kind":"windowed","inner":{"kind":"rt","q":3,"n":2},"base_index":1}"#,
    );
    let out = t.path().join("out");
    let o = run(&["verify", "--spec", &s, "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(out.join("verify.json").exists());
}

#[test]
fn zero_tolerance_is_rejected() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z9.json", Z9);
    let o = run(&["verify", "--spec", &s, "--tolerance", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("tolerance"));
}

#[test]
fn cap_below_two_is_rejected_and_small_cap_blocks_large_groups() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z9.json", Z9);
    assert_eq!(code(&run(&["verify", "--spec", &s, "--cap", "1"])), 2);
    let o = run(&["verify", "--spec", &s, "--cap", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn wavelets_writes_square_matrix_and_gram_check() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z2x2.json", Z2X2_COUNTING);
    let out = t.path().join("out");
    let o = run(&["wavelets", "--spec", &s, "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let m = fs::read_to_string(out.join("wavelet_basis.csv")).unwrap();
    let mut r = csv::Reader::from_reader(m.as_bytes());
    assert_eq!(r.headers().unwrap().len(), 4 + 4);
    assert_eq!(r.records().count(), 4);
    let g: Value = serde_json::from_str(&fs::read_to_string(out.join("wavelet_gram.json")).unwrap()).unwrap();
    assert_eq!(g["passed"], Value::Bool(true));
}

#[test]
fn codes_zero_code_has_full_dual_distribution() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z9.json", Z9);
    let o = run(&["codes", "--spec", &s, "--generators", ""]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dual"]["size"], 9);
    assert_eq!(v["m_hat"], serde_json::json!(["1", "2", "6"]));
}

#[test]
fn codes_z9_subgroup_of_order_three() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z9.json", Z9);
    let out = t.path().join("out");
    let o = run(&["codes", "--spec", &s, "--generators", "3", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(out.join("codes.json")).unwrap()).unwrap();
    assert_eq!(v["code"]["size"], 3);
    assert_eq!(v["dual"]["size"], 3);
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn codes_rejects_non_subgroups_and_bad_generators() {
    let t = tempfile::tempdir().unwrap();
    let s = spec(t.path(), "z9.json", Z9);
    assert_eq!(code(&run(&["codes", "--spec", &s, "--members", "0;1"])), 2);
    assert_eq!(code(&run(&["codes", "--spec", &s, "--generators", "1,2"])), 2);
    assert_eq!(code(&run(&["codes", "--spec", &s, "--generators", "x"])), 2);
    assert_eq!(code(&run(&["codes", "--spec", &s])), 2);
}
