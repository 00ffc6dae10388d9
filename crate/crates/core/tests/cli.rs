use std::path::Path;
use std::process::{Command, Output};

use mppc::SolutionFile;
use serde_json::Value;

fn mppc(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mppc"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &Path, name: &str, n: &str, seed: &str) -> std::path::PathBuf {
    let file = dir.join(name);
    let out = mppc(&["generate", "--n", n, "--seed", seed, "--out", path(&file)], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    file
}

#[test]
fn generate_solve_evaluate_export() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(dir.path(), "inst.json", "12", "4");
    let sol = dir.path().join("sol.json");
    let out = mppc(&["solve", "--in", path(&inst), "--algorithm", "3", "--out", path(&sol)], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let file = SolutionFile::from_reader(std::fs::File::open(&sol).unwrap()).unwrap();
    assert_eq!(file.algorithm, "alg3");
    assert!(file.elapsed_ms.is_some());

    let out = mppc(&["validate", "--in", path(&inst), "--solution", path(&sol)], &[]);
    assert!(out.status.success());

    let report = dir.path().join("report.json");
    let out = mppc(&["evaluate", "--in", path(&inst), "--solution", path(&sol), "--report", path(&report)], &[]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.starts_with("problem"));
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rows[0]["n"], 12);

    let geo = dir.path().join("routes.geojson");
    let out = mppc(&["export-geojson", "--in", path(&inst), "--solution", path(&sol), "--out", path(&geo)], &[]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&geo).unwrap()).unwrap();
    assert_eq!(doc["type"], "FeatureCollection");
}

#[test]
fn flags_override_environment() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(dir.path(), "inst.json", "6", "1");
    let run = |args: &[&str], env: &[(&str, &str)]| {
        let out = mppc(&[&["solve", "--in", path(&inst)], args].concat(), env);
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["algorithm"].as_str().unwrap().to_string()
    };
    assert_eq!(run(&[], &[]), "alg2");
    assert_eq!(run(&[], &[("MPPC_ALGORITHM", "1")]), "alg1");
    assert_eq!(run(&["--algorithm", "3"], &[("MPPC_ALGORITHM", "1")]), "alg3");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(mppc(&["solve", "--bogus"], &[]).status.code(), Some(1));
    assert_eq!(mppc(&[], &[]).status.code(), Some(1));
    assert_eq!(mppc(&["--help"], &[]).status.code(), Some(0));

    let inst = generate(dir.path(), "inst.json", "5", "2");
    assert_eq!(mppc(&["solve", "--in", path(&inst), "--epsilon", "-1"], &[]).status.code(), Some(1));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"version\": 1, \"sites\": 3}").unwrap();
    assert_eq!(mppc(&["solve", "--in", path(&broken)], &[]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(mppc(&["validate", "--in", path(&missing)], &[]).status.code(), Some(2));

    // two vehicles claiming the same site
    let sol = dir.path().join("bad.json");
    std::fs::write(
        &sol,
        r#"{"version": 1, "instance_name": "x", "algorithm": "hand",
            "routes": [{"vehicle": 0, "visits": [0]}, {"vehicle": 1, "visits": [0]}], "profit": 0}"#,
    )
    .unwrap();
    let out = mppc(&["validate", "--in", path(&inst), "--solution", path(&sol)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SharedSite"));
    let out = mppc(&["export-geojson", "--in", path(&inst), "--solution", path(&sol)], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_runs_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    for seed in ["1", "2", "3"] {
        generate(dir.path(), &format!("i{seed}.json"), "8", seed);
    }
    let out = mppc(&["bench", "--suite", path(dir.path()), "--jobs", "2"], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8(out.stdout).unwrap();
    assert_eq!(table.lines().count(), 4);
}

#[test]
fn wspd_dump_lists_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(dir.path(), "inst.json", "9", "5");
    let dump = dir.path().join("wspd.txt");
    let out = mppc(
        &["solve", "--in", path(&inst), "--algorithm", "3", "--s", "2", "--dump-wspd", path(&dump)],
        &[],
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.starts_with("# wspd s=2 pairs="));
    assert!(text.lines().count() > 8);
}
