//! Golden-file and end-to-end tests of the `fkin` binary.
//!
//! Set `FKIN_BLESS=1` to rewrite the expected outputs from the current build.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn fkin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fkin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn configs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "conf"))
        .collect();
    v.sort();
    v
}

fn expected_path(conf: &Path) -> PathBuf {
    let text = fs::read_to_string(conf).unwrap();
    let json = text
        .lines()
        .any(|l| l.split('#').next().unwrap().replace(' ', "") == "format=json");
    conf.with_extension(if json { "json" } else { "csv" })
}

#[test]
fn golden_outputs_regenerate_exactly() {
    let bless = std::env::var_os("FKIN_BLESS").is_some();
    let confs = configs();
    assert!(confs.len() >= 8, "golden configs missing");
    for conf in confs {
        let out = fkin(&["--config", conf.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}: {}",
            conf.display(),
            String::from_utf8_lossy(&out.stderr)
        );
        let expected = expected_path(&conf);
        if bless {
            fs::write(&expected, &out.stdout).unwrap();
            continue;
        }
        let want = fs::read(&expected).unwrap_or_else(|_| panic!("missing golden file {}", expected.display()));
        assert!(
            out.stdout == want,
            "{} differs from {}",
            conf.display(),
            expected.display()
        );
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["solve_g1", "oracle_thm2"] {
        let conf = golden_dir().join(format!("{name}.conf"));
        let mut outputs = Vec::new();
        for i in 0..2 {
            let path = dir.path().join(format!("{name}-{i}.csv"));
            let out = fkin(&["--config", conf.to_str().unwrap(), "--out", path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0));
            assert!(out.stdout.is_empty());
            outputs.push(fs::read(&path).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{name}");
    }
}

/// Data rows of a CSV file as (header, rows of strings).
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn solve_golden_matches_volterra_oracle() {
    let (h1, solve) = read_csv(&golden_dir().join("solve_g1.csv"));
    let (h2, cmp) = read_csv(&golden_dir().join("oracle_thm1.csv"));
    assert_eq!(h1, ["t", "N", "status"]);
    assert_eq!(h2[2], "oracle");
    assert_eq!(solve.len(), 128);
    for (s, c) in solve.iter().zip(&cmp) {
        assert_eq!(s[0], c[0]);
        let n: f64 = s[1].parse().unwrap();
        let o: f64 = c[2].parse().unwrap();
        assert!(((n - o) / o).abs() <= 5e-4, "t={} N={n} oracle={o}", s[0]);
    }
}

#[test]
fn csv_round_trips_core_values_exactly() {
    use fkin_core::bessel_family::KBesselParams;
    use fkin_core::curve::TimeGrid;
    use fkin_core::kinetic::{curve, KineticProblem, Variant};
    let (_, rows) = read_csv(&golden_dir().join("solve_g1.csv"));
    let p = KBesselParams::new(1.0, -1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
    let prob = KineticProblem::new(1.0, 1.0, 1.0, p, Variant::Thm1).unwrap();
    let c = curve(&prob, &TimeGrid::new(2.0, 128).unwrap(), Default::default());
    for (row, (t, n, _)) in rows.iter().zip(c.iter()) {
        assert_eq!(row[0].parse::<f64>().unwrap().to_bits(), t.to_bits());
        assert_eq!(row[1].parse::<f64>().unwrap().to_bits(), n.to_bits());
    }
}

#[test]
fn eval_exp_identity() {
    let out = fkin(&[
        "--command",
        "eval",
        "--function",
        "ml",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--z",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().last().unwrap();
    let v: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - std::f64::consts::E).abs() <= 1e-12);
    assert!(row.ends_with(",converged"));
}

#[test]
fn flags_override_config_values() {
    let conf = golden_dir().join("eval_ml_one.conf");
    let out = fkin(&["--config", conf.to_str().unwrap(), "--alpha=1", "--z", "-1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# alpha = 1\n"));
    let v: f64 = text.lines().last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - (-1f64).exp()).abs() < 1e-15);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "command = eval\nfunction = gamma_k\nx = 1\nk = 0\n").unwrap();
    let out = fkin(&["--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k > 0"));

    fs::write(&bad, "command = eval\nfunction = gamma\nx 5\n").unwrap();
    let out = fkin(&["--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(fkin(&["--bogus"]).status.code(), Some(1));
    assert_eq!(fkin(&["--help"]).status.code(), Some(0));

    // a comparison held to an unreachable tolerance
    let conf = golden_dir().join("oracle_thm1.conf");
    let out = fkin(&[
        "--config",
        conf.to_str().unwrap(),
        "--tol",
        "1e-15",
        "--steps",
        "16",
        "--oracle_log2_inv_h",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("# within_tolerance = false"));
}
