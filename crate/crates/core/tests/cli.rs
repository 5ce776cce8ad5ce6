use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use propertime::scenario::parse_json;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_propertime"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let s = scenario("verify.scenario");
    for out in [&a, &b] {
        let o = run(&[
            "verify",
            s.to_str().unwrap(),
            "--seed",
            "42",
            "--quiet",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    let report = parse_json(std::str::from_utf8(&a).unwrap()).unwrap();
    assert_eq!(report.seed, 42);
    assert!(report.passed);
    assert!(report.timings.is_empty());
    let mut names: Vec<_> = report.checks.iter().map(|c| c.name.clone()).collect();
    let sorted = {
        let mut s = names.clone();
        s.sort();
        s
    };
    assert_eq!(names, sorted);
    names.dedup();
    assert_eq!(names.len(), report.checks.len());
}

#[test]
fn seed_changes_randomized_families() {
    let s = scenario("verify.scenario");
    let a = run(&["verify", s.to_str().unwrap(), "--seed", "1", "--quiet"]);
    let b = run(&["verify", s.to_str().unwrap(), "--seed", "2", "--quiet"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn propagate_csv_matches_width_law() {
    let s = scenario("spreading.scenario");
    let o = run(&[
        "propagate",
        s.to_str().unwrap(),
        "--format",
        "csv",
        "--quiet",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("t,norm,mean_x,mean_p,width,width_oracle")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        let exact = (1.0 + (r[0] / 2.0).powi(2)).sqrt();
        assert!((r[4] - exact).abs() / exact < 1e-6);
    }
}

#[test]
fn frame_reports_tanh_series() {
    let s = scenario("tanh_frame.scenario");
    let o = run(&["frame", s.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let report = parse_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    let t = report.samples.column("t").unwrap();
    let ts = report.samples.column("proper_time").unwrap();
    for (t, ts) in t.iter().zip(&ts) {
        let exact = 2.0 * (t / 2.0).tanh().atan();
        assert!((ts - exact).abs() < 1e-9);
    }
    assert_eq!(report.settings["resolved.quadrature"], "simpson:256");
}

#[test]
fn sampled_trajectory_records_interpolation() {
    let s = scenario("turnaround.scenario");
    let o = run(&["frame", s.to_str().unwrap(), "--quiet"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let report = parse_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(report.settings["resolved.interpolation"], "cubic_hermite");
    assert_eq!(report.samples.rows.len(), 5);
}

#[test]
fn kind_mismatch_is_a_usage_error() {
    let s = scenario("spreading.scenario");
    let o = run(&["verify", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_scenarios_fail_fast() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let bad = write(
        dir.path(),
        "bad.scenario",
        "[scenario]\nname = bad\nkind = propagate\n[grid]\nn = 64\nx_min = -8\nx_max = 8\n\
         [particle]\nmass = -1\n[propagator]\ndt = 0.1\n",
    );
    let o = run(&[
        "propagate",
        bad.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("line 9") && err.contains("particle.mass"),
        "{err}"
    );
    assert!(!out.exists());

    let missing = write(
        dir.path(),
        "missing.scenario",
        "[scenario]\nname = m\nkind = frame\n[particle]\nmass = 1\n[trajectory]\npath = gone.txt\n",
    );
    let o = run(&[
        "frame",
        missing.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gone.txt"));
    assert!(!out.exists());

    let fast = write(dir.path(), "fast.txt", "0 0\n1 0.5\n2 1.01\n");
    assert!(fast.exists());
    let superluminal = write(
        dir.path(),
        "fast.scenario",
        "[scenario]\nname = f\nkind = frame\n[particle]\nmass = 1\n[trajectory]\npath = fast.txt\n",
    );
    let o = run(&["frame", superluminal.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = run(&["frame", dir.path().join("nope.scenario").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "coarse.scenario",
        "[scenario]\nname = coarse\nkind = frame\n[particle]\nmass = 1\n\
         [trajectory]\nsource = uniform_acceleration\nacceleration = 1\nhorizon = 2\n\
         [quadrature]\nrule = trapezoid\npanels = 4\ntolerance = 1e-9\n",
    );
    let o = run(&["frame", s.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    let report = parse_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!(!report.passed);
    let failed: Vec<_> = report.failed_checks().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["proper_time_gudermannian"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    let s = scenario("verify.scenario");
    assert_eq!(
        run(&["verify", s.to_str().unwrap(), "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn timings_only_on_request() {
    let s = scenario("tanh_frame.scenario");
    let o = run(&["frame", s.to_str().unwrap(), "--quiet", "--timings"]);
    let report = parse_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!(report.timings.iter().any(|t| t.label == "total"));
}
