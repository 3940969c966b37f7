use std::process::{Command, Output};

use serde_json::Value;

fn evenpoints(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evenpoints"))
        .args(args)
        .env("EVENPOINTS_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = evenpoints(&full);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn hilbert_of_eight_points() {
    let out = evenpoints(&["hilbert", "-w", "1^8", "--dmax", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1,14,91,364,1085,2666,5719,11096,19929\n");
}

#[test]
fn hilbert_small_cases_and_oracle() {
    assert_eq!(stdout(&evenpoints(&["hilbert", "-w", "1^3", "--dmax", "2"])), "1,0,1\n");
    let out = evenpoints(&["hilbert", "-w", "2^5", "--dmax", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("1,6\noracle: agrees"));
    let v = json(&["hilbert", "-w", "2,1,3,2", "--dmax", "3", "--oracle"]);
    assert_eq!(v["oracle"]["agrees"], true);
    assert_eq!(v["table"].as_array().unwrap().len(), 4);
}

#[test]
fn hilbert_csv_has_header() {
    let out = stdout(&evenpoints(&["hilbert", "-w", "1^4", "--dmax", "2", "--format", "csv"]));
    assert_eq!(out, "d,h\n0,1\n1,2\n2,3\n");
}

#[test]
fn degree_tables() {
    let ones = evenpoints(&["degree", "--table", "ones", "--n-max", "16"]);
    assert_eq!(stdout(&ones), "1,3,40,1225,67956,5986134,769550496\n");
    let twos = evenpoints(&["degree", "--table", "twos", "--n-max", "11"]);
    assert_eq!(stdout(&twos), "2,5,24,154,1280,13005,156800,2189726\n");
    assert_eq!(stdout(&evenpoints(&["degree", "-w", "2,2,2,2"])), "2\n");
}

#[test]
fn degree_of_odd_total_is_a_usage_error() {
    let out = evenpoints(&["degree", "-w", "1^5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("-w 2,2,2,2,2"));
}

#[test]
fn big_degrees_are_exact_json_numbers() {
    let v = json(&["degree", "--table", "ones", "--n-max", "16"]);
    let last = &v.as_array().unwrap()[6];
    assert_eq!(last["n"], 16);
    assert_eq!(last["degree"].to_string(), "769550496");
    let huge = json(&["degree", "-w", "2^22"]);
    assert!(huge["degree"].is_number());
    let digits = huge["degree"].to_string();
    assert!(digits.len() > 20 && digits.chars().all(|c| c.is_ascii_digit()), "{digits}");
}

#[test]
fn koszul_verdicts() {
    let out = stdout(&evenpoints(&["koszul", "-w", "1^8", "--depth", "8"]));
    assert!(out.ends_with("NEGATIVE-AT-7 (-62320)\n"), "{out}");
    let out = stdout(&evenpoints(&["koszul", "-w", "1^10", "--depth", "100"]));
    assert!(out.ends_with("INCONCLUSIVE-TO-100\n"));
    let out = stdout(&evenpoints(&["koszul", "-w", "2^4", "--depth", "10"]));
    assert!(out.ends_with("INCONCLUSIVE-TO-10\n"));
    let v = json(&["koszul", "-w", "1^8", "--depth", "8"]);
    assert_eq!(v["first_negative"], 7);
    assert_eq!(v["coefficients"][8], -641704);
}

#[test]
fn series_with_rational_form() {
    let v = json(&["series", "-w", "1^8", "--dmax", "8"]);
    assert_eq!(v["rational_form"]["numerator"], serde_json::json!([1, 8, 22, 8, 1]));
    assert_eq!(v["rational_form"]["denominator_exponent"], 6);
    let odd = json(&["series", "-w", "1^5", "--dmax", "4"]);
    assert_eq!(odd["rational_form"], Value::Null);
}

#[test]
fn kostka_counts() {
    assert_eq!(stdout(&evenpoints(&["kostka", "-w", "1^8", "--dmax", "2"])), "1,14,91\n");
    let v = json(&["kostka", "-w", "1^4", "--dmax", "1", "--list"]);
    assert_eq!(v["table"][1]["partitions"], serde_json::json!([[1, 0, 1, 0], [1, 1, 0, 0]]));
}

#[test]
fn polytope_export() {
    let v = json(&["polytope", "-w", "2^5", "--dmax", "2", "--points"]);
    assert_eq!(v["polytope"]["dim"], 2);
    assert_eq!(v["polytope"]["lattice"], "2Z");
    assert_eq!(v["levels"][1]["count"], 6);
    assert_eq!(v["levels"][2]["count"], 16);
    assert_eq!(v["levels"][1]["points"][0], serde_json::json!([0, 2]));
    let q = json(&["polytope", "-w", "1^5", "--which", "qw", "--dmax", "2"]);
    assert_eq!(q["levels"][1]["count"], 0);
    let out = evenpoints(&["polytope", "-w", "1^5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn certify_runs() {
    let out = evenpoints(&["certify", "-w", "2^5", "--dmax", "5", "--buchberger"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).ends_with("ALL PASS\n"));
    let out = evenpoints(&["certify", "-w", "2^6", "--dmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["certify", "-w", "2,4,2,4", "--dmax", "4", "--buchberger"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["radical"], true);
}

#[test]
fn certify_rejects_odd_weights() {
    let out = evenpoints(&["certify", "-w", "1^5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("weights must be even"));
}

#[test]
fn export_gb_schema() {
    let v = json(&["export-gb", "-w", "2^5"]);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.iter().filter(|e| e["type"] == "A").count(), 4);
    assert_eq!(entries[0]["lhs"], serde_json::json!([[0, 2], [4, 2]]));
    assert_eq!(entries[0]["rhs"], serde_json::json!([[2, 2], [2, 2]]));
    assert!(entries[0].get("position").is_none());
    assert!(entries.iter().filter(|e| e["type"] == "B").all(|e| e["position"].is_u64()));
}

#[test]
fn output_is_deterministic() {
    let args = ["export-gb", "-w", "2^6", "--format", "json"];
    let a = evenpoints(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_evenpoints"))
        .args(args)
        .env("EVENPOINTS_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_for_usage() {
    assert_eq!(evenpoints(&["bogus"]).status.code(), Some(1));
    assert_eq!(evenpoints(&["hilbert"]).status.code(), Some(1));
    assert_eq!(evenpoints(&["hilbert", "-w", "0,1,1"]).status.code(), Some(1));
    assert_eq!(evenpoints(&["--help"]).status.code(), Some(0));
    assert_eq!(evenpoints(&["--version"]).status.code(), Some(0));
    let capped = evenpoints(&["hilbert", "-w", "1^26", "--dmax", "1"]);
    assert_eq!(capped.status.code(), Some(1));
    assert!(stderr(&capped).contains("--force"));
    let low_cap = evenpoints(&["hilbert", "-w", "1^6", "--subset-cap", "5"]);
    assert_eq!(low_cap.status.code(), Some(1));
    let forced = evenpoints(&["hilbert", "-w", "1^6", "--dmax", "1", "--subset-cap", "5", "--force"]);
    assert_eq!(stdout(&forced), "1,5\n");
}
