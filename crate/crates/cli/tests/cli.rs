//! End-to-end checks of the binary: flags, formats, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn unitri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitri"))
        .args(args)
        .env_remove("UNITRI_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/transfer")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn enumerate_irr_gl2_2_has_three_rows() {
    let out = unitri(&[
        "enumerate",
        "--n",
        "2",
        "--q",
        "2",
        "--kind",
        "irr",
        "--format",
        "tsv",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert_eq!(body.lines().count(), 4, "header plus three rows:\n{body}");
}

#[test]
fn enumerate_classes_gu2_2_has_nine_rows() {
    // pinned by the matrix oracle in the core tests
    let out = unitri(&[
        "enumerate",
        "--n",
        "2",
        "--q",
        "2",
        "--twisted",
        "--kind",
        "classes",
        "--format",
        "tsv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 10);
}

#[test]
fn enumerate_ell_filter_shrinks_the_list() {
    let all = unitri(&[
        "enumerate",
        "--n",
        "2",
        "--q",
        "4",
        "--kind",
        "classes",
        "--format",
        "tsv",
    ]);
    let filtered = unitri(&[
        "enumerate",
        "--n",
        "2",
        "--q",
        "4",
        "--kind",
        "classes",
        "--format",
        "tsv",
        "--ell",
        "3",
        "--ell-prime-only",
    ]);
    assert!(all.status.success() && filtered.status.success());
    let all_rows = stdout(&all).lines().count();
    let filtered_rows = stdout(&filtered).lines().count();
    assert!(filtered_rows < all_rows, "{filtered_rows} vs {all_rows}");
}

#[test]
fn ell_prime_only_without_ell_is_a_config_error() {
    let out = unitri(&[
        "enumerate",
        "--n",
        "2",
        "--q",
        "4",
        "--kind",
        "classes",
        "--ell-prime-only",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_group_parameters_exit_2() {
    for args in [
        vec!["enumerate", "--n", "1", "--q", "2", "--kind", "irr"],
        vec!["enumerate", "--n", "2", "--q", "6", "--kind", "irr"],
        vec!["stable-basic-set", "--n", "2", "--q", "4", "--ell", "2"],
        vec!["stable-basic-set", "--n", "2", "--q", "4"],
    ] {
        let out = unitri(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn width_guard_exits_3() {
    let out = unitri(&[
        "enumerate",
        "--n",
        "40",
        "--q",
        "8",
        "--kind",
        "classes",
        "--max-bits",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn stable_basic_set_json_is_well_formed() {
    let out = unitri(&[
        "stable-basic-set",
        "--n",
        "3",
        "--q",
        "4",
        "--ell",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["spec"]["n"], 3);
    assert_eq!(report["summary"]["replacements_performed"], 1);
    assert_eq!(report["counting_identity"]["pass"], true);
    assert_eq!(report["stability"]["pass"], true);
    assert!(report["replacements"].as_array().unwrap().len() == 7);
}

#[test]
fn verify_small_grid_passes() {
    let out = unitri(&[
        "verify", "--n", "2", "--q", "2,3", "--ell", "2,3", "--format", "tsv",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // 2 q-values × both twists × valid ell choices: q=2 keeps ell=3, q=3 keeps ell=2
    assert_eq!(stdout(&out).lines().count(), 1 + 4);
}

#[test]
fn verify_empty_grid_exits_2() {
    let out = unitri(&["verify", "--n", "2", "--q", "2", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transfer_identity_fixture_echoes_theta() {
    let out = unitri(&[
        "transfer",
        "--input",
        &fixture("identity_1x1.json"),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["theta"][0]["brauer"], "y0");
    assert_eq!(report["theta"][0]["ordinary"], "x0");
    assert_eq!(report["unitriangular"]["pass"], true);
}

#[test]
fn transfer_h_violation_exits_4_with_diagnostic() {
    let out = unitri(&["transfer", "--input", &fixture("split2_h_violation.json")]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("hypothesis (H)"), "{err}");
    assert!(err.contains("multiple"), "{err}");
}

#[test]
fn transfer_inconsistent_data_exits_4() {
    for name in ["inconsistent_fiber.json", "not_unitriangular.json"] {
        let out = unitri(&["transfer", "--input", &fixture(name)]);
        assert_eq!(out.status.code(), Some(4), "{name}");
    }
}

#[test]
fn transfer_equivariance_failure_exits_4() {
    let out = unitri(&[
        "transfer",
        "--input",
        &fixture("equivariance_fail.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["extra_action"]["pass"], false);
}

#[test]
fn transfer_malformed_json_exits_2() {
    let dir = std::env::temp_dir().join("unitri-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = unitri(&["transfer", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_dir_env_is_honoured() {
    let dir = std::env::temp_dir().join(format!("unitri-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_unitri"))
        .args([
            "enumerate",
            "--n",
            "2",
            "--q",
            "2",
            "--kind",
            "irr",
            "--format",
            "tsv",
        ])
        .env("UNITRI_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.join("enumerate.tsv")).unwrap();
    assert_eq!(written.lines().count(), 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn byte_identical_across_runs_and_thread_counts() {
    let args = [
        "verify", "--n", "2,3", "--q", "2,3,4", "--ell", "2,3", "--format", "json",
    ];
    let first = unitri(&args);
    let second = unitri(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let mut one = args.to_vec();
    one.extend(["--threads", "1"]);
    let mut four = args.to_vec();
    four.extend(["--threads", "4"]);
    assert_eq!(unitri(&one).stdout, unitri(&four).stdout);
    assert_eq!(unitri(&one).stdout, first.stdout);
}
