use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_naive-matrix")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], env: (&str, &str)) -> Output {
    Command::new(env!("CARGO_BIN_EXE_naive-matrix")).args(args).env(env.0, env.1).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn generate_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let out = run(&["generate", "--k", "3", "--r", "1", "--rows", "2", "--format", "rows-json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "{\"k\":3,\"r\":1,\"rows\":[[1,2,3],[4,5,6]]}\n");
}

#[test]
fn generation_is_deterministic() {
    let args = ["generate", "--k", "4", "--r", "3", "--rows", "200", "--format", "rows-json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn pbm_row_sums_equal_k_in_leading_block() {
    let out = run(&["generate", "--k", "3", "--r", "7", "--rows", "35", "--format", "matrix-pbm"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("P1"));
    assert_eq!(lines.next(), Some("15 35"));
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), 35);
    for row in body {
        assert_eq!(row.split(' ').count(), 15);
        assert_eq!(row.split(' ').filter(|c| *c == "1").count(), 3);
    }
}

#[test]
fn usage_errors() {
    for args in [
        &["generate", "--k", "1", "--r", "1", "--rows", "1"][..],
        &["generate", "--k", "3", "--r", "0", "--rows", "1"],
        &["export-pg", "--n", "2", "--q", "6"],
        &["verify", "general", "--a", "9", "--n", "2"],
        &["verify"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn generation_error_exits_1() {
    let out = run_env(&["generate", "--k", "3", "--r", "1", "--rows", "5"], ("COLUMN_CAP", "9"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 4 incomplete"));
}

#[test]
fn bad_env_is_a_usage_error() {
    let out = run_env(&["generate", "--k", "3", "--r", "1", "--rows", "5"], ("COLUMN_CAP", "lots"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_subcommands_pass() {
    for args in [
        &["verify", "theorem", "--n", "3"][..],
        &["verify", "periodicity", "--n", "2", "--blocks", "3"],
        &["verify", "invariants", "--n", "3"],
        &["verify", "general", "--a", "1", "--n", "2", "--iso"],
        &["verify", "lemma", "--bound", "128"],
        &["verify", "field", "--q", "16"],
        &["verify", "field", "--q", "65536", "--samples", "5000"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let report = json(&out);
        assert_eq!(report["status"], "pass");
        for key in ["subject", "checks", "counts", "elapsed_ms"] {
            assert!(report.get(key).is_some(), "{args:?} lacks {key}");
        }
    }
}

#[test]
fn general_report_lists_design_counts() {
    let report = json(&run(&["verify", "general", "--a", "1", "--n", "2", "--iso"]));
    let counts = &report["counts"];
    assert_eq!((counts["v"].as_u64(), counts["k"].as_u64(), counts["r"].as_u64()), (Some(21), Some(5), Some(5)));
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"design.pair_coverage"));
    assert!(names.contains(&"veblen_young.pasch"));
    assert!(names.contains(&"isomorphic_to_pg"));
}

#[test]
fn tiny_iso_budget_is_indeterminate() {
    let out = run_env(&["verify", "general", "--a", "1", "--n", "2", "--iso"], ("BUDGET_NODES", "1"));
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "indeterminate");
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "theorem", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["counts"]["d"], 7);
    assert_eq!(report["counts"]["s"], 7);
}

#[test]
fn rows_json_round_trip_through_cli() {
    let first = run(&["generate", "--k", "5", "--r", "5", "--rows", "21", "--format", "rows-json"]).stdout;
    let doc = naive_matrix::export::RowsDocument::parse(std::str::from_utf8(&first).unwrap()).unwrap();
    assert_eq!(doc.to_json().as_bytes(), first.as_slice());
}
