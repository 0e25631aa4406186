use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphon-band"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .env("GRAPHON_BAND_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn text(out: &Output) -> String {
    format!("{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
}

#[test]
fn laws_exit_zero_and_write_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["laws", "--trials", "40"], "2");
    assert_eq!(code(&out), 0, "{}", text(&out));
    assert!(dir.path().join("laws_report.json").exists());
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["bound", "--trials", "0"], "1");
    assert_eq!(code(&out), 2, "{}", text(&out));
    assert!(text(&out).contains("trials"));

    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"trials": 5, "pattern_specs": []}"#).unwrap();
    let out = run(dir.path(), &["bound", "--config", cfg.to_str().unwrap()], "1");
    assert_eq!(code(&out), 2, "{}", text(&out));

    fs::write(&cfg, r#"{"trails": 5}"#).unwrap();
    let out = run(dir.path(), &["laws", "--config", cfg.to_str().unwrap()], "1");
    assert_eq!(code(&out), 2, "{}", text(&out));

    let out = run(dir.path(), &["laws", "--config", "/nonexistent/cfg.json"], "1");
    assert_eq!(code(&out), 2, "{}", text(&out));
}

#[test]
fn guard_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["bound", "--trials", "2", "--pattern", "k14"], "1");
    assert_eq!(code(&out), 3, "{}", text(&out));
    assert!(text(&out).contains("budget"));
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"seed": 9, "trials": 3, "k_range": [2, 3], "pattern_specs": ["k2", "1-2,2-3"], "n_sequence": [10, 20]}"#,
    )
    .unwrap();
    let out = run(dir.path(), &["--config", cfg.to_str().unwrap(), "bound", "--trials", "7"], "1");
    assert_eq!(code(&out), 0, "{}", text(&out));
    let csv = fs::read_to_string(dir.path().join("bound_sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 8);
    for line in csv.lines().skip(1) {
        let k: usize = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((2..=3).contains(&k));
    }
}

#[test]
fn converge_and_cutnorm_produce_output() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    fs::write(&w, r#"{"breakpoints": [0, 0.5, 1], "values": [[0.9, 0.3], [0.3, 0.9]]}"#).unwrap();
    let out = run(
        dir.path(),
        &["converge", "--graphon", w.to_str().unwrap(), "--pattern", "k2", "--n-sequence", "10,30"],
        "2",
    );
    assert_eq!(code(&out), 0, "{}", text(&out));
    let csv = fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "pattern,n,estimate,std_error,method");
    let limit = csv.lines().last().unwrap();
    assert!(limit.starts_with("k2,limit,"), "{limit}");
    let value: f64 = limit.split(',').nth(2).unwrap().parse().unwrap();
    assert!((value - 0.6).abs() < 1e-12);

    let u = dir.path().join("u.json");
    fs::write(&u, r#"{"breakpoints": [0, 0.25, 1], "values": [[0.9, 0.3], [0.3, 0.9]]}"#).unwrap();
    let out = run(dir.path(), &["cutnorm", w.to_str().unwrap()], "1");
    assert_eq!(code(&out), 0, "{}", text(&out));
    let l1: f64 = text(&out)
        .lines()
        .find_map(|l| l.strip_prefix("l1"))
        .map(|v| v.trim().parse().unwrap())
        .unwrap();
    assert!((l1 - 0.6).abs() < 1e-12);
    let out = run(dir.path(), &["cutnorm", w.to_str().unwrap(), u.to_str().unwrap()], "1");
    assert_eq!(code(&out), 0, "{}", text(&out));
    assert!(text(&out).contains("blocks 3"));

    fs::write(&u, r#"{"breakpoints": [0, 1], "values": [[0.2, 0.3]]}"#).unwrap();
    let out = run(dir.path(), &["cutnorm", u.to_str().unwrap()], "1");
    assert_eq!(code(&out), 2, "{}", text(&out));
}

#[test]
fn thread_count_does_not_change_output() {
    let produce = |threads: &str| {
        let dir = tempfile::tempdir().unwrap();
        for cmd in [&["laws", "--trials", "60"][..], &["bound", "--trials", "120"], &["converge", "--n-sequence", "15,30"]] {
            let out = run(dir.path(), cmd, threads);
            assert_eq!(code(&out), 0, "{}", text(&out));
        }
        ["laws_report.json", "bound_sweep.csv", "convergence.csv"].map(|f| fs::read(dir.path().join(f)).unwrap())
    };
    assert_eq!(produce("1"), produce("4"));
}
