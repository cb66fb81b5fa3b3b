use std::path::PathBuf;
use std::process::{Command, Output};

use kummer_core::families::{builtin_cubic_over_eisenstein, frobenius_family, tower_spec_to_json};
use kummer_core::kummer::{compute_certificate, validate_setup};
use kummer_core::schema::{certificate_from_json, certificate_to_json};
use proptest::prelude::*;

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(args)
        .output()
        .unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kummer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn tower_builtin_cubic_is_valid() {
    let spec = scratch(
        "cubic.json",
        &tower_spec_to_json(&builtin_cubic_over_eisenstein()),
    );
    let out = kummer(&["tower", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("spectrum_complete: true"));
}

#[test]
fn tower_with_identity_sigma_is_rejected() {
    let input = builtin_cubic_over_eisenstein();
    let text = tower_spec_to_json(&input).replace(
        r#""sigma_image": [
    [
      "-2",
      "0"
    ],
    [
      "0",
      "0"
    ],
    [
      "1",
      "0"
    ]
  ]"#,
        r#""sigma_image": [["0", "0"], ["1", "0"], ["0", "0"]]"#,
    );
    assert!(
        text.contains(r#"[["0", "0"], ["1", "0"], ["0", "0"]]"#),
        "{text}"
    );
    let spec = scratch("identity.json", &text);
    let out = kummer(&["tower", spec.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("AutomorphismOrderMismatch"));
}

#[test]
fn missing_and_empty_files_are_parse_errors() {
    let out = kummer(&["tower", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(3));
    let empty = scratch("empty.json", "");
    assert_eq!(
        kummer(&["tower", empty.to_str().unwrap()]).status.code(),
        Some(3)
    );
    assert_eq!(
        kummer(&["verify", empty.to_str().unwrap()]).status.code(),
        Some(3)
    );
    assert_eq!(kummer(&["finite", "--p", "x"]).status.code(), Some(3));
}

#[test]
fn finite_out_then_verify() {
    let dir = scratch("placeholder", "");
    let cert = dir.with_file_name("finite-13-4.json");
    let out = kummer(&[
        "finite",
        "--p",
        "13",
        "--n",
        "4",
        "--format",
        "json",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let verified = kummer(&["verify", cert.to_str().unwrap()]);
    assert_eq!(verified.status.code(), Some(0));
    assert_eq!(stdout(&verified).trim(), "certificate holds");

    // Replace c with a different residue.
    let text = std::fs::read_to_string(&cert).unwrap();
    let c_line = text
        .lines()
        .find(|l| l.trim_start().starts_with("\"c\""))
        .unwrap();
    let tampered = text.replacen(c_line, "    \"c\": \"7\",", 1);
    assert_ne!(tampered, text);
    let bad = scratch("tampered.json", &tampered);
    let out = kummer(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("x^n = c"), "{}", stdout(&out));
}

#[test]
fn finite_rejections() {
    assert_eq!(
        kummer(&["finite", "--p", "5", "--n", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        kummer(&["finite", "--p", "6", "--n", "1"]).status.code(),
        Some(1)
    );
    let out = kummer(&["finite", "--p", "5", "--n", "2", "--modulus", "-1,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        kummer(&["finite", "--p", "5", "--n", "2", "--modulus", "a,b"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn selftest_exit_codes() {
    assert_eq!(kummer(&["selftest", "--max-p", "2"]).status.code(), Some(1));
    let out = kummer(&["selftest", "--max-p", "13", "--max-n", "4", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("failed 0"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(kummer(&["--help"]).status.code(), Some(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificate_json_round_trips(idx in 0usize..32) {
        let cases = kummer_core::cli::selftest_cases(50, 8);
        let (p, n) = cases[idx % cases.len()];
        let ctx = validate_setup(frobenius_family(p, n, None).unwrap()).unwrap();
        let cert = compute_certificate(&ctx).unwrap();
        let text = certificate_to_json(&cert);
        let back = certificate_from_json(&text).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(certificate_to_json(&back), text);
    }
}
