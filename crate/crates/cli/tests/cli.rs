use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stabdisj"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json_of(path: &std::path::Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn five_qubit_report_matches_golden() {
    let dir = tempdir().unwrap();
    let out_path = dir.path().join("five.json");
    let code = data("five_qubit.qec");
    let out = run(&["analyze", code.to_str().unwrap(), "--json", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let got = fs::read_to_string(&out_path).unwrap();
    let want = fs::read_to_string(golden("five_qubit.json")).unwrap();
    assert_eq!(got, want);

    let v: Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["metrics"]["delta"]["lo"], "5/3");
    assert_eq!(v["metrics"]["delta"]["exact"], true);
    assert_eq!(v["bounds"][0]["theorem"], "transversal");
    assert_eq!(v["bounds"][0]["level"], 2);
    assert!(stdout(&out).contains("Delta = 5/3"));
}

#[test]
fn c422_table_matches_golden() {
    let dir = tempdir().unwrap();
    let out_path = dir.path().join("c422.json");
    let code = data("c422.qec");
    let out = run(&["analyze", code.to_str().unwrap(), "--c-max", "3", "--json", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(&out_path).unwrap(),
        fs::read_to_string(golden("c422_cmax3.json")).unwrap()
    );
    let v = json_of(&out_path);
    let x1 = &v["metrics"]["classes"][0];
    assert_eq!(x1["name"], "X1");
    let table: Vec<&str> = x1["disjointness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["lo"].as_str().unwrap())
        .collect();
    assert_eq!(table, ["2", "3/2", "4/3"]);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempdir().unwrap();
    let code = data("five_qubit.qec");
    let mut texts = Vec::new();
    for i in 0..2 {
        let p = dir.path().join(format!("r{i}.json"));
        let out = run(&[
            "analyze",
            code.to_str().unwrap(),
            "--verify-oracle",
            "--seed",
            "7",
            "--multiblock",
            "2",
            "--permuting",
            "--shallow",
            "2",
            "1",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        texts.push(fs::read_to_string(&p).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let v: Value = serde_json::from_str(&texts[0]).unwrap();
    let theorems: Vec<&str> = v["bounds"].as_array().unwrap().iter().map(|b| b["theorem"].as_str().unwrap()).collect();
    assert_eq!(theorems, ["transversal", "cleaning", "multiblock", "permuting-multi", "shallow"]);
    assert_eq!(v["bounds"][2]["level"], 5);
    assert_eq!(v["oracle"]["violations"], 0);
    assert_eq!(v["oracle"]["preserving"], 100);
}

#[test]
fn timings_are_opt_in() {
    let dir = tempdir().unwrap();
    let code = data("five_qubit.qec");
    let p = dir.path().join("t.json");
    run(&["analyze", code.to_str().unwrap(), "--json", p.to_str().unwrap()]);
    assert!(json_of(&p).get("timings_ms").is_none());
    run(&["analyze", code.to_str().unwrap(), "--timings", "--json", p.to_str().unwrap()]);
    assert!(json_of(&p)["timings_ms"]["metrics"].is_number());
}

#[test]
fn parse_errors_carry_line_numbers_and_exit_2() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.qec");
    fs::write(&bad, "dim = 2\nstabilizer XX\nstabilizer ZQ\n").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let circ = dir.path().join("bad.circ");
    fs::write(&circ, "gate * H\ngate 0,0 CZ\n").unwrap();
    let out = run(&["verify", data("steane.qec").to_str().unwrap(), circ.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_file_is_verified() {
    let dir = tempdir().unwrap();
    let w = dir.path().join("w.txt");
    // not a representative of X1
    fs::write(&w, "class 1,0 c 1\nZZZZZ\n").unwrap();
    let out = run(&["analyze", data("five_qubit.qec").to_str().unwrap(), "--witness", w.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    fs::write(&w, "class 1,0 c 1\nXXXXX\n").unwrap();
    let out = run(&["analyze", data("five_qubit.qec").to_str().unwrap(), "--witness", w.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn steane_hadamard_is_level_two() {
    let dir = tempdir().unwrap();
    let p = dir.path().join("v.json");
    let out = run(&[
        "verify",
        data("steane.qec").to_str().unwrap(),
        data("steane_h.circ").to_str().unwrap(),
        "--json",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&p);
    assert_eq!(v["hierarchy_level"], 2);
    assert_eq!(v["bound"]["level"], 2);
    assert_eq!(v["verdict"], "consistent");
    assert!(stdout(&out).contains("hierarchy level: 2"));
}

#[test]
fn five_qubit_logical_x_is_level_one() {
    let dir = tempdir().unwrap();
    let circ = dir.path().join("x.circ");
    fs::write(&circ, "gate * X\n").unwrap();
    let out = run(&["verify", data("five_qubit.qec").to_str().unwrap(), circ.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("hierarchy level: 1"));
}

#[test]
fn single_t_on_steane_is_not_logical() {
    let out = run(&["verify", data("steane.qec").to_str().unwrap(), data("steane_t0.circ").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("not-logical"));
}

#[test]
fn family_emits_code_files() {
    let out = run(&["family", "reed-muller", "--D", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), fs::read_to_string(data("steane.qec")).unwrap());
    let out = run(&["family", "surface", "--l", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["family", "c105"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn c105_rows_is_clifford_and_flagged() {
    let dir = tempdir().unwrap();
    let p = dir.path().join("c105.json");
    let out = run(&["family", "c105", "--partition", "rows", "--analyze", "--json", p.to_str().unwrap()]);
    // witness-backed results are non-exact
    assert_eq!(out.status.code(), Some(3));
    let v = json_of(&p);
    assert_eq!(v["bounds"][0]["level"], 2);
    assert_eq!(v["metrics"]["exactness"], "witness-backed");
    assert_eq!(v["exact"], false);
}

#[test]
fn surface_three_meets_declared_values() {
    let dir = tempdir().unwrap();
    let p = dir.path().join("s.json");
    let out = run(&["family", "surface", "--l", "3", "--analyze", "--verify-declared", "--json", p.to_str().unwrap()]);
    assert!(matches!(out.status.code(), Some(0 | 3)));
    let v = json_of(&p);
    assert_eq!(v["metrics"]["d_min"]["lo"], 3);
    assert_eq!(v["metrics"]["d_max"]["hi"], 5);
    assert_eq!(v["metrics"]["d_min"]["source"], "exhaustive");
    let lo: Vec<u64> = v["metrics"]["delta"]["lo"]
        .as_str()
        .unwrap()
        .split('/')
        .map(|t| t.parse().unwrap())
        .collect();
    // Delta >= 3/2
    assert!(2 * lo[0] >= 3 * lo.get(1).copied().unwrap_or(1));
}
