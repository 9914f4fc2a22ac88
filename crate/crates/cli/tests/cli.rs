use std::path::PathBuf;
use std::process::{Command, Output};

fn pmsign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmsign"))
        .args(args)
        .output()
        .expect("run pmsign")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn check_reports_admissibility() {
    let ok = pmsign(&["check", "+++++++-"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "admissible");

    let bad = pmsign(&["check", "++-+"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(
        stdout(&bad).starts_with("not admissible"),
        "{}",
        stdout(&bad)
    );
}

#[test]
fn table2_counts() {
    let out = pmsign(&["table2", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "a_4 990, orbits 24");
}

#[test]
fn verify_shipped_certificate() {
    let out = pmsign(&["verify", "--cert", &data("sigma_star_prime.json")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "verified");
}

#[test]
fn json_output() {
    let out = pmsign(&["--format", "json", "table2", "--n", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["admissible"], 38);
    assert_eq!(v["orbits"], 5);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(pmsign(&["bogus"]).status.code(), Some(2));
    assert_eq!(pmsign(&["enumerate"]).status.code(), Some(2));
}

#[test]
fn invalid_input_exits_with_one() {
    let out = pmsign(&["check", "+x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn search_certificate_round_trips_through_verify() {
    let dir = std::env::temp_dir().join(format!("pmsign-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("cert.json");
    let cert = cert.to_str().unwrap();
    let out = pmsign(&["--out", cert, "search", "++++++--", "--attempts", "1000"]);
    assert!(out.status.success());
    let verified = pmsign(&["verify", "--cert", cert]);
    assert!(verified.status.success());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["--seed", "7", "search", "+++++---", "--attempts", "500"][..],
        &["--jobs", "2", "sweep", "--n", "3", "--attempts", "200"][..],
        &["orbits", "--n", "4"][..],
    ] {
        let a = pmsign(args);
        let b = pmsign(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
