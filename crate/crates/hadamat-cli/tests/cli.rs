use std::path::PathBuf;
use std::process::{Command, Output};

fn dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("hadamat-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn hadamat(d: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hadamat"))
        .args(args)
        .current_dir(d)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(d: &PathBuf, name: &str, file: &str) {
    let o = hadamat(d, &["gen", name]);
    assert_eq!(o.status.code(), Some(0), "gen {name}");
    std::fs::write(d.join(file), &o.stdout).unwrap();
}

#[test]
fn gen_aliases_and_families() {
    let d = dir("gen");
    assert_eq!(stdout(&hadamat(&d, &["gen", "D1"])), stdout(&hadamat(&d, &["gen", "D_1"])));
    let f = stdout(&hadamat(&d, &["gen", "fourier", "--n", "3"]));
    assert_eq!(f, "hadamat-matrix v1\norder 3\ndim 3\nscale 0\n1 1 1\n1 z3^1 z3^2\n1 z3^2 z3^1\n");
    let c = stdout(&hadamat(&d, &["gen", "circulant", "--n", "5", "--row", "1,z5^1,z5^4,z5^4,z5^1"]));
    assert!(c.contains("order 5\ndim 5\n") && c.contains("\n1 z5^1 z5^4 z5^4 z5^1\n"));
    let up = stdout(&hadamat(&d, &["gen", "fourier", "--n", "3", "--order", "6"]));
    assert!(up.contains("1 z6^2 z6^4"));
    let unknown = hadamat(&d, &["gen", "X_9"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("D_1"));
    assert_eq!(hadamat(&d, &["gen", "circulant"]).status.code(), Some(2));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn check_verbs() {
    let d = dir("check");
    gen(&d, "F5", "F5.mat");
    for k in 1..=4 {
        gen(&d, &format!("D_{k}"), &format!("D{k}.mat"));
    }
    let o = hadamat(&d, &["gen", "identity", "--n", "5"]);
    std::fs::write(d.join("I.mat"), &o.stdout).unwrap();

    let h = hadamat(&d, &["check", "hadamard", "F5.mat", "D1.mat"]);
    assert_eq!(stdout(&h), "F5: hadamard true\nD1: hadamard true\n");

    let m = hadamat(&d, &["check", "mub", "I.mat", "D1.mat", "D2.mat", "D3.mat", "D4.mat", "--json"]);
    assert_eq!(m.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&m.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["pairwise"].as_array().unwrap().len(), 5);

    let u = hadamat(&d, &["check", "unitary", "I.mat", "--assert"]);
    assert_eq!(u.status.code(), Some(0));
    let io = hadamat(&d, &["check", "inverse-orthogonal", "F5.mat", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&io.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    let io_i = hadamat(&d, &["check", "inverse-orthogonal", "I.mat", "--assert"]);
    assert_eq!(io_i.status.code(), Some(1));
    assert_eq!(hadamat(&d, &["check", "hadamard", "missing.mat"]).status.code(), Some(2));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn equiv_and_canon() {
    let d = dir("equiv");
    gen(&d, "F3", "F3.mat");
    gen(&d, "A_12", "A12.mat");
    let o = hadamat(&d, &["equiv", "F3.mat", "A12.mat", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["pairs_examined"], 36);
    assert_eq!(v["witness"]["replay"], true);
    let first = hadamat(&d, &["equiv", "F3.mat", "A12.mat", "--first-match"]);
    assert!(stdout(&first).contains("equivalent: true"));

    let canon = hadamat(&d, &["canon", "A12.mat"]);
    std::fs::write(d.join("c.mat"), &canon.stdout).unwrap();
    let again = hadamat(&d, &["canon", "c.mat"]);
    assert_eq!(canon.stdout, again.stdout);
    let body: Vec<String> = stdout(&canon).lines().skip(4).map(String::from).collect();
    assert!(body.iter().all(|l| l.starts_with("1 ")));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn search_outputs_and_guards() {
    let d = dir("search");
    let rows = stdout(&hadamat(&d, &["search", "--n", "3", "--order", "3"]));
    assert!(rows.starts_with("0 0 1\n") && rows.contains("# solutions 6\n"));
    let matrices = stdout(&hadamat(&d, &["search", "--n", "2", "--order", "4", "--format", "matrix"]));
    assert_eq!(matrices.matches("hadamat-matrix v1").count(), 2);
    assert_eq!(hadamat(&d, &["search", "--n", "3"]).status.code(), Some(2));
    assert_eq!(hadamat(&d, &["search", "--n", "9", "--order", "3"]).status.code(), Some(2));
    let guarded = Command::new(env!("CARGO_BIN_EXE_hadamat"))
        .args(["search", "--n", "5", "--order", "5"])
        .env("HADAMAT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(guarded.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&guarded.stderr).contains("HADAMAT_BUDGET"));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn verify_paper_assert_reflects_failures() {
    let d = dir("verify");
    let plain = hadamat(&d, &["verify-paper"]);
    assert_eq!(plain.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&plain.stdout).unwrap();
    let fails = v["summary"]["fail"].as_u64().unwrap();
    let asserted = hadamat(&d, &["verify-paper", "--assert"]);
    assert_eq!(asserted.status.code(), Some(if fails > 0 { 1 } else { 0 }));
    std::fs::remove_dir_all(d).unwrap();
}
