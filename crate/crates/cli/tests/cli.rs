use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mscodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mscodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = mscodes(&all);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn construct_example(dir: &Path) -> String {
    let path = dir.join("code.json").to_string_lossy().into_owned();
    let out = mscodes(&[
        "construct", "--variant", "projective", "--s", "3", "--t", "1", "--n", "3", "--syndrome", "1,0",
        "--code", &path,
    ]);
    assert!(out.status.success());
    path
}

#[test]
fn worked_construction() {
    let v = json(&["construct", "--variant", "projective", "--s", "3", "--t", "1", "--n", "3", "--syndrome", "1,0"]);
    let words: Vec<&str> = v["codewords"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    assert_eq!(words, ["{0,0,inf}", "{0,1,1}", "{0,2,2}", "{1,2,inf}", "{inf,inf,inf}"]);
    assert_eq!(v["group_order"], "4");
    assert_eq!(v["averaging_bound"], "5/1");
}

#[test]
fn best_class_meets_average() {
    let v = json(&["construct", "--variant", "affine", "--s", "4", "--t", "2", "--n", "5"]);
    // |S_{5,4}| = 56, |G| = 15
    assert!(v["size"].as_u64().unwrap() >= 4);
    assert_eq!(v["averaging_bound"], "56/15");
}

#[test]
fn parameter_errors_exit_2() {
    let out = mscodes(&["construct", "--variant", "projective", "--s", "4", "--t", "5", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t < q"));
    assert_eq!(mscodes(&["construct", "--variant", "affine", "--s", "6", "--t", "2", "--n", "3"]).status.code(), Some(2));
    assert_eq!(mscodes(&["tables", "ideal", "--q", "3", "--r", "5..1"]).status.code(), Some(2));
    assert_eq!(mscodes(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn decode_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let code = construct_example(dir.path());
    let v = json(&["decode", "--code", &code, "--received", "0,1"]);
    assert_eq!((v["codeword"].as_str(), v["error"].as_str()), (Some("{0,1,1}"), Some("{1}")));
    let v = json(&["decode", "--code", &code, "--received", "[1,2,0,0]"]);
    assert_eq!((v["codeword"].as_str(), v["error"].as_str()), (Some("{0,1,1}"), Some("{}")));

    let short = mscodes(&["decode", "--code", &code, "--received", "inf"]);
    assert_eq!(short.status.code(), Some(2));
    let stray = mscodes(&["decode", "--code", &code, "--received", "0,0,0"]);
    assert_eq!(stray.status.code(), Some(1));
    let malformed = mscodes(&["decode", "--code", &code, "--received", "0,7"]);
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn simulate_is_perfect_within_radius() {
    let dir = tempfile::tempdir().unwrap();
    let code = construct_example(dir.path());
    for r in ["0", "1"] {
        let v = json(&["simulate", "--code", &code, "--trials", "1000", "--r", r, "--seed", "11"]);
        assert_eq!(v["successes"], 1000);
    }
    assert_eq!(mscodes(&["simulate", "--code", &code, "--r", "2"]).status.code(), Some(2));

    let affine = dir.path().join("affine.json").to_string_lossy().into_owned();
    assert!(mscodes(&["construct", "--variant", "affine", "--s", "3", "--t", "2", "--n", "6", "--f", "1,0,1", "--code", &affine])
        .status
        .success());
    let v = json(&["simulate", "--code", &affine, "--trials", "500", "--r", "2"]);
    assert_eq!(v["successes"], 500);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let code = construct_example(dir.path());
    let runs: [&[&str]; 4] = [
        &["--format", "csv", "tables", "bounds", "--n", "4..9", "--q", "2..4", "--t", "0..3", "--with-oracle"],
        &["--format", "json", "tables", "pairs", "--n", "0..5", "--q", "3", "--with-oracle"],
        &["--format", "json", "simulate", "--code", &code, "--r", "1", "--trials", "50", "--seed", "3"],
        &["--format", "csv", "construct", "--variant", "affine", "--s", "5", "--t", "2", "--n", "4"],
    ];
    for args in runs {
        let (a, b) = (mscodes(args), mscodes(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn code_file_written_by_construct_is_lossless() {
    let dir = tempfile::tempdir().unwrap();
    let code = construct_example(dir.path());
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&code).unwrap()).unwrap();
    assert_eq!(file["variant"], "projective");
    assert_eq!(file["f"], serde_json::json!([1, 0, 1]));
    assert_eq!(file["codewords"].as_array().unwrap().len(), 5);
    assert_eq!(file["codewords"][1], serde_json::json!([1, 2, 0, 0]));
}

#[test]
fn ball_table() {
    let out = mscodes(&[
        "--format", "csv", "tables", "balls", "--n", "6", "--q", "3", "--centers", "6,0,0", "3,2,1", "2,2,2", "--r",
        "0..4",
    ]);
    assert_eq!(
        stdout(&out),
        "r,\"(6,0,0)\",\"(3,2,1)\",\"(2,2,2)\"\n0,1,1,1\n1,3,7,7\n2,6,16,19\n3,10,24,25\n4,15,27,28\n"
    );
    let v = json(&["tables", "balls", "--n", "4", "--q", "3", "--with-oracle"]);
    assert!(v.as_array().unwrap().iter().all(|row| row["agree"] == true));
}

#[test]
fn ideal_and_bound_tables() {
    let v = json(&["tables", "ideal", "--q", "3", "--r", "0..5", "--with-oracle"]);
    let sizes: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["size"].as_str().unwrap()).collect();
    assert_eq!(sizes, ["1", "7", "19", "37", "61", "91"]);
    assert!(v.as_array().unwrap().iter().all(|r| r["agree"] == true));

    let v = json(&["tables", "bounds", "--n", "6", "--q", "3", "--t", "2"]);
    let row = &v[0];
    assert_eq!(row["sphere_packing"], "14/3");
    assert_eq!(row["sp_floor"], "4");
    assert_eq!(row["kt_anticode"], "3106/19");
    assert_eq!(row["kt_vacuous"], true);
    assert!(row.get("sphere_packing_approx").is_none());
}

#[test]
fn verify_suites() {
    for args in [
        &["verify", "bounds", "--tiny"][..],
        &["verify", "codes", "--max-n", "4"],
        &["verify", "geometry", "--max-n", "5", "--max-q", "3"],
    ] {
        let out = mscodes(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ideal.csv");
    let out = mscodes(&["--out", path.to_str().unwrap(), "--format", "csv", "tables", "ideal", "--q", "2", "--r", "3"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "q,r_plus,r_minus,size\n2,3,3,7\n");
}
