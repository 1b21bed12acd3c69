use std::fs;
use std::process::{Command, Output};

fn qcore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcore"))
        .args(args)
        .env_remove("QCORE_DEFAULT_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn expand_golden() {
    let o = qcore(&["expand", "a5bar", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 2 4 8 14 14 20 24\n");
    assert_eq!(stdout(&qcore(&["expand", "b5bar", "10"])), "1 1 1 2 3 -1 0 2 0 -2 6\n");
    assert_eq!(stdout(&qcore(&["expand", "c5", "0"])), "1\n");
    assert_eq!(stdout(&qcore(&["expand", "f5^5/f1", "-N", "6"])), "1 1 2 3 5 2 6\n");
    assert_eq!(stdout(&qcore(&["expand", "R(q)", "5"])), "1 -1 1 0 -1 1\n");
    assert_eq!(stdout(&qcore(&["expand", "phi(-q)", "4"])), "1 -2 0 0 2\n");
}

#[test]
fn expand_default_order_and_env() {
    let o = qcore(&["expand", "c5"]);
    assert_eq!(stdout(&o).split_whitespace().count(), 101);
    let o = Command::new(env!("CARGO_BIN_EXE_qcore"))
        .args(["expand", "a5bar"])
        .env("QCORE_DEFAULT_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "1 2 4 8\n");
    let o = Command::new(env!("CARGO_BIN_EXE_qcore"))
        .args(["expand", "a5bar"])
        .env("QCORE_DEFAULT_ORDER", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expand_json() {
    let o = qcore(&["expand", "b5bar", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 5);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "1", "2", "3", "-1"]));
}

#[test]
fn expand_errors_are_usage_errors() {
    for spec in ["zeta", "phi(", "f0", "(q;-q)"] {
        let o = qcore(&["expand", spec, "5"]);
        assert_eq!(o.status.code(), Some(2), "{spec}");
        assert!(stderr(&o).starts_with("error:"), "{spec}");
    }
    assert_eq!(qcore(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_single_and_unknown() {
    let o = qcore(&["verify", "thm3.b5_20n_15", "--order", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS thm3.b5_20n_15 N=1000"));
    let o = qcore(&["verify", "no.such.id"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown identity \"no.such.id\""));
}

#[test]
fn verify_core_tier_is_clean_and_deterministic() {
    let a = qcore(&["verify", "--tier", "core", "-N", "300"]);
    let b = qcore(&["verify", "core", "-N", "300", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().last().unwrap().starts_with("summary: "));
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn verify_injected_fault() {
    let o = qcore(&["verify", "thm1.a5n2", "--inject-fault", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().next().unwrap(), "FAIL thm1.a5n2 N=1000 first mismatch at index 0: lhs 4, rhs 5");
    let o = qcore(&["verify", "lemma.A4B", "-N", "200", "--inject-fault", "42", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["status"], "mismatch");
    assert_eq!(first["index"], 42);
    assert!(first.get("elapsed").is_none());
}

#[test]
fn verify_list() {
    let o = qcore(&["verify", "all", "--list"]);
    let text = stdout(&o);
    assert!(text.contains("thm1.a5n2 [core, subsequence-relation] a5bar(5n+2) = 4*c5(5n+1)"));
    assert!(text.contains("[extended, series-equality]"));
}

#[test]
fn oracle_counts() {
    let o = qcore(&["oracle", "9", "6", "--list"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "(4,3,1,1)"));
    assert_eq!(stdout(&qcore(&["oracle", "4", "5"])).lines().next(), Some("c_5(4) = 5"));
    assert_eq!(stdout(&qcore(&["oracle", "0", "5"])).lines().next(), Some("c_5(0) = 1"));
    let o = qcore(&["oracle", "70", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_reports_n() {
    let o = qcore(&["census", "b5bar", "-N", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("b5bar over 1..10: zero 2"));
    let o = qcore(&["census", "c5", "-N", "500", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["zero"], 0);
    assert_eq!(v["order"], 500);
}

#[test]
fn bfile_round_trip_and_forgery() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a5bar.txt");
    let p = path.to_str().unwrap();
    assert!(qcore(&["bfile", "export", "a5bar", p, "100"]).status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 101);
    assert_eq!(text.lines().nth(7), Some("7 24"));

    let o = qcore(&["bfile", "check", "a5bar", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no discrepancies"));

    fs::write(&path, text.replace("\n6 20\n", "\n6 99\n")).unwrap();
    let o = qcore(&["bfile", "check", "a5bar", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first discrepancy at n = 6: file has 99, expected 20"));
}

#[test]
fn bfile_errors() {
    let dir = tempfile::tempdir().unwrap();
    let gap = dir.path().join("gap.txt");
    fs::write(&gap, "0 1\n1 2\n3 8\n").unwrap();
    let o = qcore(&["bfile", "check", "a5bar", gap.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 3: index gap"));

    let junk = dir.path().join("junk.txt");
    fs::write(&junk, "0 1\nseven 2\n").unwrap();
    let o = qcore(&["bfile", "check", "a5bar", junk.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 2"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(qcore(&["bfile", "check", "a5bar", missing.to_str().unwrap()]).status.code(), Some(3));
    let unwritable = dir.path().join("no/such/dir/out.txt");
    assert_eq!(qcore(&["bfile", "export", "c5", unwritable.to_str().unwrap()]).status.code(), Some(3));
}
