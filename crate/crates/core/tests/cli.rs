use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_cdiv");

fn cdiv(args: &[&str]) -> (i32, String) {
    let Output { status, stdout, .. } = Command::new(BIN).args(args).output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap())
}

#[test]
fn verify_grid_only() {
    let (code, out) = cdiv(&["verify", "--grid", "3", "--random", "0"]);
    assert_eq!(code, 0);
    let division_lines: Vec<&str> = out.lines().filter(|l| l.starts_with("divide_")).collect();
    assert_eq!(division_lines.len(), 3);
    assert!(division_lines.iter().all(|l| l.contains("2352 cases")));

    let (code, out) = cdiv(&["verify", "--grid", "1", "--random", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("72 cases"));
}

#[test]
fn verify_rejects_empty_grid() {
    assert_eq!(cdiv(&["verify", "--grid", "0"]).0, 2);
    assert_eq!(cdiv(&["verify", "--grid", "-1"]).0, 2);
}

#[test]
fn count_contract() {
    let (code, out) = cdiv(&["count", "--alg", "fast", "--expect"]);
    assert_eq!(code, 0);
    assert!(out.contains("measured mul=3 add=6 square=2 div=2"));
    assert!(out.contains("match"));
    let (code, out) = cdiv(&["count", "--alg", "naive", "--expect"]);
    assert_eq!(code, 0);
    assert!(out.contains("measured mul=4 add=3 square=2 div=2"));
    for alg in ["mul_schoolbook", "gauss_mul", "prepared"] {
        assert_eq!(cdiv(&["count", "--alg", alg, "--expect"]).0, 0, "{alg}");
    }
    assert_eq!(cdiv(&["count", "--alg", "bogus"]).0, 2);
    assert_eq!(cdiv(&["count"]).0, 2);
}

#[test]
fn audit_contract() {
    let (code, out) = cdiv(&["audit"]);
    assert_eq!(code, 0);
    assert!(out
        .lines()
        .any(|l| l.starts_with("corrected-A") && l.matches("PASS").count() == 2));
    assert!(out
        .lines()
        .any(|l| l.starts_with("corrected-B") && l.matches("PASS").count() == 2));
    assert!(out
        .lines()
        .any(|l| l.starts_with("printed ") && l.contains("FAIL")));
    assert!(out.contains("witness a=(1,1) x=(1,1): printed gives (1, 2), schoolbook gives (1, 0)"));
    assert!(out.contains("witness composed entry (2,2)"));
    assert!(out.contains("variant,cases,compose_pass,apply_pass,first_mismatch"));
    assert!(out.contains("corrected-A,2352,true,true,"));
    assert!(out
        .lines()
        .any(|l| l.starts_with("printed,2352,false,false,")));
}

#[test]
fn sweep_writes_rows_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("s.csv");
    let p2 = dir.path().join("s2.csv");
    for p in [&p1, &p2] {
        let (code, out) = cdiv(&[
            "sweep",
            "--alg",
            "fast",
            "--dist",
            "wellscaled",
            "--n",
            "1000",
            "--seed",
            "7",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("fast on wellscaled: 1000 records"));
    }
    let text = std::fs::read_to_string(&p1).unwrap();
    assert_eq!(text.lines().count(), 1001);
    assert!(text.starts_with(
        "a_re,a_im,x_re,x_im,alg,y_re,y_im,ref_re,ref_im,relerr_re,relerr_im,ulp_re,ulp_im,flags\n"
    ));
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());

    // a different seed gives different samples
    let p3 = dir.path().join("s3.csv");
    cdiv(&[
        "sweep",
        "--alg",
        "fast",
        "--dist",
        "wellscaled",
        "--n",
        "1000",
        "--seed",
        "8",
        "--out",
        p3.to_str().unwrap(),
    ]);
    assert_ne!(std::fs::read(&p1).unwrap(), std::fs::read(&p3).unwrap());
}

#[test]
fn sweep_extreme_naive_reports_overflow() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("e.csv");
    let (code, out) = cdiv(&[
        "sweep",
        "--alg",
        "naive",
        "--dist",
        "extreme",
        "--n",
        "100",
        "--seed",
        "7",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let overflow: usize = out
        .split("overflow=")
        .nth(1)
        .and_then(|s| s.split_whitespace().next())
        .and_then(|s| s.parse().ok())
        .unwrap();
    assert!(overflow > 0, "{out}");
}

#[test]
fn sweep_usage_errors() {
    assert_eq!(
        cdiv(&[
            "sweep",
            "--alg",
            "fast",
            "--dist",
            "grid",
            "--out",
            "/nonexistent-dir/x.csv"
        ])
        .0,
        2
    );
    assert_eq!(
        cdiv(&["sweep", "--alg", "fast", "--dist", "sideways", "--out", "x.csv"]).0,
        2
    );
    assert_eq!(cdiv(&["sweep", "--alg", "fast", "--dist", "grid"]).0, 2);
    assert_eq!(
        cdiv(&[
            "sweep",
            "--alg",
            "fast",
            "--dist",
            "wellscaled",
            "--n",
            "0",
            "--out",
            "x.csv"
        ])
        .0,
        2
    );
}

#[test]
fn bench_rows() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.csv");
    let (code, out) = cdiv(&[
        "bench",
        "--batch",
        "1000",
        "--reps",
        "3",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("checksums agree"));
    let text = std::fs::read_to_string(&p).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(text.lines().next(), Some("alg,rep,ns_per_op"));
    assert_eq!(rows.len(), 12);
    for row in rows {
        let ns: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(ns > 0.0);
    }
    assert_eq!(
        cdiv(&[
            "bench",
            "--batch",
            "10",
            "--reps",
            "1",
            "--out",
            "/nonexistent-dir/b.csv"
        ])
        .0,
        2
    );
}
