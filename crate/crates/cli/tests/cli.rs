use std::path::PathBuf;
use std::process::{Command, Output};

fn mockjac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mockjac"))
        .args(args)
        .env_remove("MOCKJAC_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("mockjac-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn expand_examples() {
    let o = mockjac(&["expand", "--eta", "1^24/2^24", "--order", "5"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(&lines[..3], ["-1 1", "0 -24", "1 276"]);
    let o = mockjac(&["expand", "--eulerian", "3:psi", "--order", "5"]);
    assert_eq!(stdout(&o), "1 1\n2 1\n3 1\n4 2\n");
    let o = mockjac(&["expand", "--eta", "", "--order", "3"]);
    assert_eq!(stdout(&o), "0 1\n");
    let o = mockjac(&["expand", "--lambency", "2", "--order", "1"]);
    assert_eq!(stdout(&o), "-1 1\n0 -24\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["expand", "--eta", "1^x", "--order", "3"][..],
        &["expand", "--eulerian", "9:nope", "--order", "3"],
        &["expand", "--order", "3"],
        &["verify", "nope"],
        &["fit", "--lambency", "99", "--D", "-3", "--r", "1"],
    ] {
        assert_eq!(mockjac(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn fit_outcomes() {
    let o = mockjac(&["fit", "--lambency", "7", "--D", "-3", "--r", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("excluded"));
    let o = mockjac(&["fit", "--lambency", "2", "--D", "-7", "--r", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing source"));
    let o = mockjac(&["fit", "--lambency", "10+2", "--D", "-4", "--r", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("degree   1"));
    assert!(out.contains("residual 0 on 9 surplus"));
    let o = mockjac(&["fit", "--lambency", "10+2", "--D", "-4", "--r", "6", "--format", "records"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["surplus"], 9);
}

#[test]
fn verify_suites() {
    let o = mockjac(&["verify", "fricke", "--order", "100"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("39 passed, 0 failed, 0 skipped"));
    let o = mockjac(&["verify", "mocktheta", "--order", "15"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("skipped (needs ingested"));
    let o = mockjac(&["verify", "positivity", "--format", "records"]);
    assert!(o.status.success());
    let recs: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let sigma: Vec<_> = recs.iter().filter(|r| r["case"].as_str().unwrap().ends_with("sigma")).collect();
    assert_eq!(sigma.len(), 39);
    let holds = sigma.iter().filter(|r| r["detail"].as_str().unwrap().starts_with("holds")).count();
    assert_eq!(holds, 23);
}

#[test]
fn records_are_deterministic() {
    let a = mockjac(&["verify", "fixtures", "--format", "records", "--jobs", "1"]);
    let b = mockjac(&["verify", "fixtures", "--format", "records", "--jobs", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn ingest_and_data_flag() {
    let good = scratch("good.csv", "lambency,class,r,D,coeff\n2,1A,1,1,-2\n2,1A,1,-7,90\n");
    let o = mockjac(&["ingest", good.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("2 1A: 3 residues, 2 nonzero coefficients"));
    let bad = scratch("bad.csv", "lambency,class,r,D,coeff\n2,1A,1,2,5\n");
    assert_eq!(mockjac(&["ingest", bad.to_str().unwrap()]).status.code(), Some(2));
    let o = mockjac(&["ingest", "/nonexistent/file.csv"]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_mockjac"))
        .args(["verify", "positivity"])
        .env("MOCKJAC_DATA", &good)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("[positivity] 2 phi: pass"));
}
