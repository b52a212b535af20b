use std::process::{Command, Output};

fn dquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dquot"))
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn hilbert_series_text() {
    let out = dquot(&["hilbert", "--in", "fixtures/sklyanin.json", "--dmax", "4"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 4 10 20 35");
}

#[test]
fn json_output_parses() {
    let out = dquot(&[
        "--format",
        "json",
        "check-superpotential",
        "--in",
        "fixtures/staff_drop_r1.json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.trim_start().starts_with('{'));
    assert!(text.contains("\"superpotential\": true"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        dquot(&[
            "check-superpotential",
            "--in",
            "fixtures/generic_quartic.json"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        dquot(&["hilbert", "--in", "fixtures/malformed.json", "--dmax", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dquot(&[
            "sklyanin",
            "--alpha",
            "2",
            "--beta",
            "3",
            "--gamma",
            "z^2",
            "--check",
            "potential"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(dquot(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn mckay_d8() {
    let out = dquot(&["mckay", "--input", "fixtures/d8.json"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("^tw"));
}
