use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn sunada(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sunada")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn gassmann_pair_is_weakly_conjugate() {
    let out = sunada(&["gassmann", "check", data("gassmann.grp").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["weakly_conjugate"], true);
    assert_eq!(v["conjugate"], false);
    assert_eq!(v["induced_equal"], true);
}

#[test]
fn isometry_separates_gassmann_pair() {
    let out = sunada(&["isometry", "test", data("gassmann.grp").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["ell"], 7);
    assert_eq!(v["budget"], 56);

    let out = sunada(&["isometry", data("s3-transpositions.grp").to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(json(&out)["equivalent"], true);
}

#[test]
fn table_matches() {
    let out = sunada(&["table1", "--diff", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("all rows match"));
}

#[test]
fn catalog_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gerst.grp");
    let out = sunada(&["catalog", "gerst", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = sunada(&["gassmann", "check", path.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["group_order"], 32);
    assert_eq!(v["weakly_conjugate"], true);
    assert_eq!(v["conjugate"], false);
}

#[test]
fn graph_bench_reports_isospectral_covers() {
    let out = sunada(&[
        "graph",
        "bench",
        data("s3-transpositions.grp").to_str().unwrap(),
        data("s3-triangle.graph").to_str().unwrap(),
        "--solo",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["schreier"]["isospectral"], true);
    assert_eq!(v["solo"].as_array().unwrap().len(), 4);
}

#[test]
fn random_reports_are_deterministic() {
    let a = sunada(&["graph", "random", "--count", "40", "--seed", "11", "--jobs", "1"]);
    let b = sunada(&["graph", "random", "--count", "40", "--seed", "11", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = sunada(&["graph", "random", "--count", "40", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn homwide_commands() {
    let grp = data("klein.grp");
    let out = sunada(&["homwide", "check", grp.to_str().unwrap(), data("klein-regular-f3.mod").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["homologically_wide"]["status"], "found");

    let out = sunada(&["homwide", "surface", grp.to_str().unwrap(), "--euler", "-4"]);
    assert_eq!(json(&out)["verdict"], "wide");
    let out = sunada(&["homwide", "seifert-weber"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn input_errors_exit_with_two() {
    let grp = data("gassmann.grp");
    assert_eq!(sunada(&["gassmann", "check", "/no/such/file.grp"]).status.code(), Some(2));
    assert_eq!(sunada(&["gassmann", "check", grp.to_str().unwrap(), "--h1", "missing"]).status.code(), Some(2));
    assert_eq!(sunada(&["isometry", "run", grp.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(sunada(&["frobnicate"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "degree 3\n(0 1 5)\n").unwrap();
    let out = sunada(&["gassmann", "check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
