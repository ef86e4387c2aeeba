use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;

use tl_cli::commands::{dims, ResultTable};
use tl_cli::config::{Format, NRange, Route, RunConfig};
use tl_cli::error::{EXIT_RESOURCE_CAP, EXIT_USAGE};

fn tlq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlq")).args(args).output().expect("tlq runs")
}

fn json(args: &[&str]) -> Value {
    let out = tlq(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn fib(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// Each row's `dimQ_*` columns, checked equal, as one number per `n`.
fn dim_q_by_n(table: &Value) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for row in table["rows"].as_array().unwrap() {
        assert_eq!(row["agree"], true, "{row}");
        let n = row["n"].as_u64().unwrap();
        let vals: Vec<u64> = ["dimQ_rank", "dimQ_altsum", "dimQ_matrix", "dimQ_closed"]
            .iter()
            .filter_map(|k| row[*k].as_u64())
            .collect();
        assert_eq!(vals.len(), 4, "{row}");
        assert!(vals.iter().all(|&v| v == vals[0]));
        if out.last().map(|p| p.0) != Some(n) {
            out.push((n, vals[0]));
        }
    }
    out
}

#[test]
fn ising_dimensions_are_powers_of_two() {
    let t = json(&["dims", "--level", "4", "--n", "4..12"]);
    let got = dim_q_by_n(&t);
    assert_eq!(got.len(), 9);
    for (n, d) in got {
        assert_eq!(d, 1 << (n - 1));
    }
    for row in t["rows"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        assert_eq!(row["l_rank"].as_u64().unwrap(), 1 << ((n - 1) / 2));
    }
}

#[test]
fn level_five_dimensions_are_fibonacci() {
    for (n, d) in dim_q_by_n(&json(&["dims", "--level", "5", "--n", "3..12"])) {
        assert_eq!(d, fib(2 * n as usize - 1), "n={n}");
    }
}

#[test]
fn level_six_dimensions() {
    for (n, d) in dim_q_by_n(&json(&["dims", "--level", "6", "--n", "2..10"])) {
        assert_eq!(d, (3u64.pow(n as u32 - 1) + 1) / 2, "n={n}");
    }
}

#[test]
fn json_round_trips_to_the_same_table() {
    let cfg = RunConfig {
        level: 5,
        n: NRange::new(2, 9),
        routes: Route::ALL.to_vec(),
        format: Format::Json,
        out: None,
        max_rank_n: 12,
        seed: 0,
    }
    .validate()
    .unwrap();
    let table = dims(&cfg).unwrap();
    let text = serde_json::to_string(&table).unwrap();
    let back: ResultTable = serde_json::from_str(&text).unwrap();
    assert_eq!(back, table);

    let from_cli: ResultTable = serde_json::from_value(json(&["dims", "--level", "5", "--n", "2..9"])).unwrap();
    assert_eq!(from_cli, table);
}

#[test]
fn large_values_survive_serialization() {
    // beyond i64: matrix and closed routes only
    let t = json(&["dims", "--level", "4", "--n", "130", "--routes", "matrix,closed"]);
    let row = &t["rows"][0];
    let want = BigInt::from(2).pow(129);
    assert_eq!(row["dimQ_matrix"].as_str().unwrap(), want.to_string());
    let back: ResultTable = serde_json::from_value(t).unwrap();
    assert_eq!(back.rows[0].dim_q_closed, Some(want));
}

#[test]
fn exit_codes() {
    assert_eq!(tlq(&["dims", "--level", "4", "--n", "4..20"]).status.code(), Some(EXIT_RESOURCE_CAP as i32));
    assert!(tlq(&["dims", "--level", "4", "--n", "4..20", "--max-rank-n", "20", "--routes", "altsum"]).status.success());
    assert_eq!(tlq(&["dims", "--level", "2"]).status.code(), Some(EXIT_USAGE as i32));
    assert_eq!(tlq(&["dims", "--n", "9..3"]).status.code(), Some(EXIT_USAGE as i32));
    assert_eq!(tlq(&["dims", "--routes", "nope"]).status.code(), Some(EXIT_USAGE as i32));
    assert_eq!(tlq(&["frobnicate"]).status.code(), Some(EXIT_USAGE as i32));
    assert_eq!(tlq(&["jw", "--level", "9", "--max-terms", "100"]).status.code(), Some(EXIT_RESOURCE_CAP as i32));
    assert_eq!(tlq(&["--help"]).status.code(), Some(0));
}

#[test]
fn jones_wenzl_at_level_three() {
    let t = json(&["jw", "--level", "3"]);
    assert_eq!(t["meta"]["formula"], "E_2 = 1 - f1");
    assert!(t["meta"]["checks"].as_object().unwrap().values().all(|v| v == true));
    let t = json(&["jw", "--level", "4"]);
    assert_eq!(t["meta"]["formula"], "E_3 = 1 - delta f1 - delta f2 + f1 f2 + f2 f1");
}

#[test]
fn verify_catalan() {
    let r = json(&["verify", "catalan", "--K", "12"]);
    assert_eq!(r["suite"], "catalan");
    assert_eq!(r["passed"], true);
    assert!(r["checks"].as_array().unwrap().len() >= 2);
}

#[test]
fn verify_ising_and_clifford() {
    for suite in ["ising", "clifford"] {
        let r = json(&["verify", suite, "--max-n", "7"]);
        assert_eq!(r["passed"], true, "{r}");
    }
}

#[test]
fn quotient_matches_catalan_minus_ideal() {
    let t = json(&["quotient", "--level", "4", "--n", "2..8"]);
    for row in t["rows"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        assert_eq!(row["dimQ_ideal"].as_u64().unwrap(), 1 << (n - 1));
        assert_eq!(row["agree"], true);
    }
}

#[test]
fn csv_and_markdown_outputs() {
    let out = tlq(&["dims", "--level", "4", "--n", "2..4", "--format", "csv"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "n");
    assert!(headers.iter().any(|h| h == "dimQ_matrix"));
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);

    let md = String::from_utf8(tlq(&["dims", "--level", "4", "--n", "4", "--format", "markdown"]).stdout).unwrap();
    assert!(md.contains("| n | t | w |"));
    assert!(md.contains("- **level**: 4"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = tlq(&["catalan", "--K", "6", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"][6]["catalan"], 132);
}

#[test]
fn output_is_deterministic() {
    let a = tlq(&["dims", "--level", "6", "--n", "2..10"]).stdout;
    let b = tlq(&["dims", "--level", "6", "--n", "2..10"]).stdout;
    assert_eq!(a, b);
}
