use std::process::Command;

fn weilrep(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_weilrep")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn run_writes_certificates_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout) =
        weilrep(&["run", "--q", "3", "--n", "2", "--t", "2", "--claims", "commutant-eq,main-theorem", "--out", out]);
    assert_eq!(code, 0, "{stdout}");
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("commutant-eq.json")).unwrap()).unwrap();
    assert_eq!(cert["schema"], 1);
    assert_eq!(cert["verdict"], "true");
    assert_eq!(cert["witnesses"]["orbits_on_V2"], 8);
    assert_eq!(cert["witnesses"]["predicted"], 8);
    let csv = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("claim,q,n,t,disc,verdict,dims,runtime_ms"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(&cfg, "q = 5\nn = 1\nt = 1\nclaims = counterexample\n").unwrap();
    let out = dir.path().join("certs");
    let (code, _) = weilrep(&["run", "--config", cfg.to_str().unwrap(), "--q", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("counterexample.json")).unwrap()).unwrap();
    assert_eq!(cert["context"]["q"], 3);
    assert_eq!(cert["dims"], serde_json::json!([27, 8]));
}

#[test]
fn guard_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout) = weilrep(&["run", "--claims", "fixed-space", "--guard-dim", "10", "--out", out]);
    assert_eq!(code, 0);
    assert!(stdout.contains("skipped: size guard"));
    assert_eq!(weilrep(&["run", "--q", "6", "--out", out]).0, 2);
    assert_eq!(weilrep(&["run", "--claims", "no-such-claim", "--out", out]).0, 2);
}

#[test]
fn listings() {
    let (code, stdout) = weilrep(&["list-claims"]);
    assert_eq!(code, 0);
    assert!(stdout.lines().any(|l| l.starts_with("main-theorem") && l.contains("span of tensor power CSS codes")));
    let (_, iso) = weilrep(&["isotropic", "--q", "5", "--t", "3"]);
    // x^2 + y^2 + z^2 over F_5: 24 nonzero isotropic vectors, 6 lines.
    assert_eq!(iso.lines().count(), 6);
    assert!(iso.lines().all(|l| l.split(',').count() == 3));
    let (_, codes) = weilrep(&["codes", "--q", "3", "--n", "1", "--t", "2", "--disc", "nonsquare", "--k", "1"]);
    for line in codes.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!((v["dim"].as_u64(), v["rank"].as_u64()), (Some(1), Some(0)));
    }
    assert_eq!(codes.lines().count(), 2);
}
