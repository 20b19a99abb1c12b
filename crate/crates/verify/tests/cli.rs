use std::path::Path;
use std::process::{Command, Output};

use turan_core::Status;
use turan_verify::parse_report;

fn verify(args: &[&str], envs: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_verify"));
    cmd.args(args)
        .env_remove("TURAN_VERIFY_CONFIG")
        .env("SOURCE_DATE_EPOCH", "0");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn list_suites_names_every_suite() {
    let out = verify(&["list-suites"], &[]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["lemmas", "theorem1", "bessel", "kummer", "chain", "conjecture"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing:\n{text}");
    }
}

#[test]
fn conjecture_outside_hypotheses_is_flagged_not_failed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.toml",
        "[suites.conjecture.grid]\nm = [0, 3]\nmu = [\"-1/2\", \"1\"]\nalpha = [\"1/4\"]\nbeta = [\"1\"]\n",
    );
    let out = verify(&["conjecture", "--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out.stdout).unwrap();
    assert_eq!(report.summary.hypothesis_violation, 4);
    assert_eq!(report.summary.fail, 0);
    assert!(report
        .results
        .iter()
        .filter(|r| r.status == Status::HypothesisViolation)
        .all(|r| r.params["mu"].to_string() == "-1/2"));
}

#[test]
fn config_from_environment_and_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "k.toml",
        "[run]\nsuites = [\"kummer\"]\n[suites.kummer.grid]\na = [2.0]\nb = [0.5, 3.0]\nx = [1.0]\n",
    );
    let out_path = dir.path().join("r.csv");
    let out = verify(
        &["run", "--format", "csv", "--out", out_path.to_str().unwrap()],
        &[("TURAN_VERIFY_CONFIG", &cfg)],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check_id,params,status,margin"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(
        rows.iter().all(|r| r.starts_with("kummer.") && r.contains(",pass,")),
        "{text}"
    );
}

#[test]
fn tight_tolerance_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "t.toml", "[settings.tolerances]\nresidual = 1e-300\n");
    let out = verify(&["run", "--suite", "kummer", "--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    let report = parse_report(&out.stdout).unwrap();
    assert!(report.summary.fail > 0);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let unknown_key = write(dir.path(), "u.toml", "[settings]\nmax_pts = 3\n");
    let capped = write(dir.path(), "c.toml", "[settings]\nmax_points = 10\n");
    let step = write(
        dir.path(),
        "s.toml",
        "[suites.kummer.grid]\nx = { min = 1.0, max = 2.0, step = 0.0 }\n",
    );
    let missing = dir.path().join("nope.toml");
    for args in [
        vec!["run"],
        vec!["run", "--suite", "nope"],
        vec!["run", "--suite", "lemmas", "--config", unknown_key.to_str().unwrap()],
        vec!["run", "--suite", "lemmas", "--config", capped.to_str().unwrap()],
        vec!["run", "--suite", "kummer", "--config", step.to_str().unwrap()],
        vec!["run", "--suite", "kummer", "--config", missing.to_str().unwrap()],
        vec!["run", "--suite", "kummer", "--jobs", "0"],
    ] {
        let out = verify(&args, &[]);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn parallel_output_matches_serial() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "p.toml", "[suites.lemmas.grid]\nm = [0, 5, 9]\n");
    let cfg = cfg.to_str().unwrap();
    let serial = verify(
        &["run", "--suite", "lemmas,remainder", "--config", cfg, "--jobs", "1"],
        &[],
    );
    let parallel = verify(
        &[
            "run",
            "--suite",
            "remainder",
            "--suite",
            "lemmas",
            "--config",
            cfg,
            "--jobs",
            "4",
        ],
        &[],
    );
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
    let report = parse_report(&serial.stdout).unwrap();
    assert_eq!(report.suite, "lemmas+remainder");
    assert_eq!(report.timestamp, "1970-01-01T00:00:00Z");
}
