use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn weakcliff(args: &[&str]) -> Output {
    weakcliff_with_config(args, None)
}

fn weakcliff_with_config(args: &[&str], config: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weakcliff"));
    cmd.args(args).env_remove("WEAKCLIFF_CONFIG");
    if let Some(path) = config {
        cmd.env("WEAKCLIFF_CONFIG", path);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or("").to_string()
}

/// `{command, config, results[], version}` with nothing else at the top level.
fn check_schema(v: &Value, command: &str) {
    let obj = v.as_object().expect("report is an object");
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["command", "config", "results", "version"]);
    assert_eq!(v["command"], command);
    assert!(v["version"].is_string());
    let config = v["config"].as_object().expect("config object");
    for key in ["algebra", "signature", "degree", "headroom", "format", "seed"] {
        assert!(config.contains_key(key), "config lacks {key}");
    }
    assert!(v["results"].is_array());
}

#[test]
fn multipole_command() {
    assert_eq!(first_line(&weakcliff(&["multipole", "1", "2"])), "J2");
    assert_eq!(first_line(&weakcliff(&["multipole", "0"])), "1");
    assert_eq!(first_line(&weakcliff(&["multipole", "2", "1", "2"])), "J1.J2 - 1/2*J3");
    let bad = weakcliff(&["multipole", "1", "4"]);
    assert_eq!(bad.status.code(), Some(2));
    let short = weakcliff(&["multipole", "2", "1"]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn reduce_command() {
    let cases = [
        ("clifford", "e1*e1", "1"),
        ("weak", "(e1^e2)*e1 - e1*(e1^e2)", "e2"),
        ("sym", "e1*e2 - e2*e1", "0"),
        ("free", "e1^e2", "1/2*e1.e2 - 1/2*e2.e1"),
    ];
    for (algebra, expr, want) in cases {
        let o = weakcliff(&["reduce", "--algebra", algebra, expr]);
        assert!(o.status.success(), "{algebra} {expr}");
        assert_eq!(first_line(&o), want, "{algebra} {expr}");
    }
}

#[test]
fn reduce_errors_exit_with_two() {
    let parse = weakcliff(&["reduce", "e1 +* e2"]);
    assert_eq!(parse.status.code(), Some(2));
    let err = String::from_utf8(parse.stderr).unwrap();
    assert!(err.contains("parse error at 4"), "{err}");
    let overflow = weakcliff(&["reduce", "-D", "1", "e1*e2"]);
    assert_eq!(overflow.status.code(), Some(2));
    let algebra = weakcliff(&["reduce", "--algebra", "lie", "e1"]);
    assert_eq!(algebra.status.code(), Some(2));
}

#[test]
fn spin_zero_routes_to_sym() {
    let o = weakcliff(&["reduce", "--algebra", "spin:0", "e1*e2 - e2*e1"]);
    assert!(o.status.success());
    assert_eq!(first_line(&o), "0");
    assert!(String::from_utf8(o.stderr).unwrap().contains("symmetric"));
    let o = weakcliff(&["dims", "--spin", "0", "-D", "3"]);
    assert_eq!(first_line(&o), "1 4 10 20");
}

#[test]
fn dims_command() {
    assert_eq!(first_line(&weakcliff(&["dims", "--algebra", "clifford", "-D", "4"])), "1 4 7 8 8");
    assert_eq!(first_line(&weakcliff(&["dims", "--algebra", "sym", "-D", "3"])), "1 4 10 20");
    assert_eq!(first_line(&weakcliff(&["dims", "--algebra", "free", "-D", "2"])), "1 4 13");
    let o = weakcliff(&["dims", "--algebra", "spin:1/2", "-D", "4"]);
    assert_eq!(first_line(&o), "1 4 8 9 9");
    assert!(stdout(&o).contains("audit: stable"));
}

#[test]
fn dims_json_report() {
    let o = weakcliff(&["dims", "--algebra", "clifford", "-D", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    check_schema(&v, "dims");
    assert_eq!(v["results"][0]["dims"], serde_json::json!([1, 4, 7, 8]));
    assert_eq!(v["config"]["algebra"], "clifford");
}

#[test]
fn verify_passes_and_reports() {
    let o = weakcliff(&["verify", "--suite", "clifford-spin-half", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    check_schema(&v, "verify");
    let results = v["results"].as_array().unwrap();
    assert!(results.iter().any(|r| r["name"] == "quadrupole vanishes" && r["pass"] == true));
    for r in results {
        for key in ["suite", "name", "identity", "value", "pass"] {
            assert!(r.get(key).is_some(), "result lacks {key}");
        }
    }
    let o = weakcliff(&["verify", "--suite", "multipoles", "--kmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mu_3 contractionless"));
}

#[test]
fn verify_failures_exit_with_one() {
    let o = weakcliff(&["verify", "--suite", "spin-half"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL [spin-half] casimir"));
    let bad = weakcliff(&["verify", "--suite", "nope"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_f_constraint_reports_the_family() {
    let o = weakcliff(&["verify", "--suite", "f-constraint"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k*(1, -1, 0)"));
}

#[test]
fn metric_table_rows() {
    let o = weakcliff(&["metric-table", "--format", "json", "0", "1/2", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    check_schema(&v, "metric-table");
    let rows = v["results"].as_array().unwrap();
    let row = |l: &str, r: &str| rows.iter().find(|x| x["left"] == l && x["right"] == r).unwrap();
    assert_eq!(row("e1^e2", "e1^e2")["values"]["1/2"], "-1/4");
    assert_eq!(row("e1^e2", "e1^e2")["values"]["1"], "-2/3");
    assert_eq!(row("e1^e2^e3", "e1^e2^e3")["values"]["1"], "2/3");
    assert_eq!(row("e1^e2", "e1^e2")["values"]["0"], "0");
    assert_eq!(row("e1^e2^e3", "e1^e2^e3")["values"]["0"], "0");
    assert_eq!(row("e1", "e1^e2")["symbolic"], "0");
}

#[test]
fn mon_and_solve_f() {
    assert_eq!(first_line(&weakcliff(&["mon", "J1*J1"])), "1/3*C");
    assert_eq!(first_line(&weakcliff(&["mon", "J1*J2*J3"])), "1/6*C");
    assert_eq!(first_line(&weakcliff(&["mon", "J1*J2 - J2*J1"])), "0");
    let o = weakcliff(&["solve-f"]);
    assert!(o.status.success());
    assert!(first_line(&o).contains("k*(1, -1, 0)"));
}

#[test]
fn config_file_supplies_defaults() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# test defaults\nalgebra = clifford\ndegree = 4\nformat = text").unwrap();
    let o = weakcliff_with_config(&["dims"], Some(file.path()));
    assert_eq!(first_line(&o), "1 4 7 8 8");
    // flags win over the file
    let o = weakcliff_with_config(&["dims", "--algebra", "sym", "-D", "2"], Some(file.path()));
    assert_eq!(first_line(&o), "1 4 10");
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = blue").unwrap();
    let o = weakcliff_with_config(&["dims"], Some(bad.path()));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "reflections", "--cases", "20", "--seed", "7", "--format", "json"];
    assert_eq!(stdout(&weakcliff(&args)), stdout(&weakcliff(&args)));
}
