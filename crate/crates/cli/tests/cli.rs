use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn forbid(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forbid"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn status_line(out: &Output) -> Value {
    let stderr = String::from_utf8_lossy(&out.stderr);
    let lines: Vec<&str> = stderr.lines().collect();
    assert_eq!(lines.len(), 1, "stderr: {stderr}");
    serde_json::from_str(lines[0]).expect("stderr line is JSON")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn write_c5(dir: &Path) {
    fs::write(dir.join("c5.txt"), "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
}

#[test]
fn enumerate_prints_bell_number() {
    let dir = tempfile::tempdir().unwrap();
    let out = forbid(dir.path(), &["enumerate", "--n", "5", "--class", "forb-p3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "52");
    assert_eq!(status_line(&out)["status"], "ok");
}

#[test]
fn solve_st_reports_c5_is_not_split() {
    let dir = tempfile::tempdir().unwrap();
    write_c5(dir.path());
    let out = forbid(
        dir.path(),
        &["solve", "st", "--graph", "c5.txt", "--s", "1", "--t", "1"],
    );
    assert_eq!(out.status.code(), Some(1));
    let found = forbid(
        dir.path(),
        &["solve", "st", "--graph", "c5.txt", "--s", "2", "--t", "1"],
    );
    assert_eq!(found.status.code(), Some(0));
    let record: Value = serde_json::from_slice(&found.stdout).unwrap();
    assert_eq!(record["data"]["partition"].as_array().unwrap().len(), 3);
}

#[test]
fn tiny_budget_gives_unknown() {
    let dir = tempfile::tempdir().unwrap();
    write_c5(dir.path());
    let args = [
        "solve", "st", "--graph", "c5.txt", "--s", "1", "--t", "1", "--budget", "1",
    ];
    let out = forbid(dir.path(), &args);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(status_line(&out)["status"], "unknown");
}

#[test]
fn graph_formats_are_detected() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["graph6", "edgelist", "json"] {
        let file = format!("j.{format}");
        let out = forbid(
            dir.path(),
            &["jumble", "--l", "2", "--seed", "4", "--format", format, "--out", &file],
        );
        assert_eq!(out.status.code(), Some(0));
        let chic = forbid(dir.path(), &["chic", "--graph", &file, "--lmax", "3"]);
        assert_eq!(chic.status.code(), Some(0), "{format}");
    }
    let g6 = fs::read_to_string(dir.path().join("j.graph6")).unwrap();
    let out = forbid(dir.path(), &["jumble", "--l", "2", "--seed", "4"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), g6);
}

#[test]
fn jumble_pipeline_embeds_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let out = forbid(dir.path(), &["jumble", "--l", "2", "--seed", "9", "--out", "j.g6"]);
    assert_eq!(out.status.code(), Some(0));
    let meta = read_json(&dir.path().join("j.g6.meta.json"));
    assert_eq!(meta["tool"], "forbid");
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["seed"], 9);
    assert_eq!(meta["config"]["l"], 2);

    let args = [
        "certify",
        "jumble",
        "--graph",
        "j.g6",
        "--pattern",
        "j.g6.meta.json",
        "--budget",
        "1000000",
    ];
    let out = forbid(dir.path(), &[&args[..], &["--out", "cert.json"]].concat());
    let cert = read_json(&dir.path().join("cert.json"));
    assert_eq!(cert["budget"], 1_000_000);
    let claims: Vec<&str> = cert["data"]["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["claim"].as_str().unwrap())
        .collect();
    assert_eq!(claims, ["S1", "S2"]);
    let expected = match cert["data"]["status"].as_str().unwrap() {
        "verified" => 0,
        "refuted" => 1,
        _ => 2,
    };
    assert_eq!(out.status.code(), Some(expected));
}

#[test]
fn build_and_certify_from_system() {
    let dir = tempfile::tempdir().unwrap();
    let out = forbid(
        dir.path(),
        &["partitions", "--l", "9", "--k", "3", "--seed", "1", "--out", "sys.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let out = forbid(
        dir.path(),
        &["build", "eps", "--system", "sys.json", "--seed", "1", "--out", "eps.g6"],
    );
    assert_eq!(out.status.code(), Some(0));
    let out = forbid(
        dir.path(),
        &[
            "certify",
            "eps",
            "--graph",
            "eps.g6",
            "--l",
            "9",
            "--log",
            "eps.g6.meta.json",
            "--out",
            "c.json",
        ],
    );
    let bundle = read_json(&dir.path().join("c.json"));
    let certs = bundle["data"]["certificates"].as_array().unwrap();
    assert_eq!(certs[0]["claim"], "EPS1");
    assert_eq!(certs[0]["status"], "verified");
    assert_eq!(certs[1]["status"], "verified");
    assert!(out.status.code().unwrap() <= 2);
}

#[test]
fn artifacts_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (i, jobs) in ["1", "3"].iter().enumerate() {
        let file = format!("h{i}.json");
        let args = [
            "experiment",
            "p3h",
            "--n",
            "120",
            "--trials",
            "6",
            "--seed",
            "5",
            "--jobs",
            jobs,
            "--out",
            &file,
        ];
        assert_eq!(forbid(dir.path(), &args).status.code(), Some(0));
        let sys = format!("s{i}.json");
        let args = ["partitions", "--l", "8", "--k", "4", "--seed", "2", "--out", &sys];
        assert_eq!(forbid(dir.path(), &args).status.code(), Some(0));
    }
    let read = |name: &str| fs::read(dir.path().join(name)).unwrap();
    assert_eq!(read("h0.json"), read("h1.json"));
    assert_eq!(read("s0.json"), read("s1.json"));
}

#[test]
fn reduced_and_al_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s2.txt"), "2 0\n").unwrap();
    fs::write(dir.path().join("k2.txt"), "2 1\n0 1\n").unwrap();
    fs::write(dir.path().join("c3.txt"), "3 3\n0 1\n1 2\n0 2\n").unwrap();
    let reduced = forbid(dir.path(), &["reduced", "--j", "s2.txt", "--h", "c3.txt", "--l", "2"]);
    assert_eq!(reduced.status.code(), Some(0));
    let dangerous = forbid(dir.path(), &["reduced", "--j", "k2.txt", "--h", "c3.txt", "--l", "2"]);
    assert_eq!(dangerous.status.code(), Some(1));

    fs::write(dir.path().join("e4.txt"), "4 0\n").unwrap();
    fs::write(dir.path().join("c4.txt"), "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert_eq!(
        forbid(dir.path(), &["certify", "al", "--graph", "c4.txt", "--l", "2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        forbid(dir.path(), &["certify", "al", "--graph", "e4.txt", "--l", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn usage_and_io_errors_exit_above_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = forbid(dir.path(), &["certify", "star", "--graph", "nope.g6", "--l", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(status_line(&out)["kind"], "io");

    let out = forbid(dir.path(), &["square"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(status_line(&out)["kind"], "usage");

    write_c5(dir.path());
    let out = forbid(dir.path(), &["certify", "star", "--graph", "c5.txt"]);
    assert_eq!(out.status.code(), Some(3));

    fs::write(dir.path().join("bad.txt"), "3 1\n0 7\n").unwrap();
    let out = forbid(dir.path(), &["chic", "--graph", "bad.txt"]);
    assert!(out.status.code().unwrap() > 2);
    assert_eq!(status_line(&out)["status"], "error");
}

#[test]
fn square_and_pattern_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        forbid(dir.path(), &["square", "--l", "5", "--out", "sq.json"])
            .status
            .code(),
        Some(0)
    );
    let sq = read_json(&dir.path().join("sq.json"));
    assert_eq!(sq["data"]["rows"].as_array().unwrap().len(), 5);
    assert_eq!(
        forbid(dir.path(), &["pattern", "--l", "3", "--out", "p.json"])
            .status
            .code(),
        Some(0)
    );
    let p = read_json(&dir.path().join("p.json"));
    assert_eq!(p["data"]["squares"].as_array().unwrap().len(), 3);
    assert!(!dir.path().join("sq.json.meta.json").exists());
}
