use std::path::Path;
use std::process::Command;

use veronese::cli::{run, EXIT_CONFIG, EXIT_FAILURE, EXIT_OK};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_veronese"))
}

fn run_to(path: &Path, args: &[&str]) -> (i32, String) {
    let mut full = vec!["veronese"];
    full.extend_from_slice(args);
    full.extend(["--out", path.to_str().unwrap()]);
    let code = run(full);
    (code, std::fs::read_to_string(path).unwrap_or_default())
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = bin().args(["verify", "--model-N", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check,max_residual,tolerance,pass\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")), "{text}");
}

#[test]
fn perturbed_projector_fails_verification() {
    let out = bin().args(["verify", "--model-N", "4", "--perturb", "1e-3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_FAILURE));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("sigma.euler_lagrange,") && l.ends_with(",false")));
    assert!(String::from_utf8(out.stderr).unwrap().contains("FAIL sigma.euler_lagrange"));
}

#[test]
fn config_errors_exit_two() {
    let out = bin().args(["verify", "--model-N", "41"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
    assert!(String::from_utf8(out.stderr).unwrap().contains("N exceeds supported maximum"));
    for args in [
        &["table", "--model-N", "2", "--k", "3"][..],
        &["verify", "--format", "xml"],
        &["frobnicate"],
        &["mesh", "--k", "0,1"],
    ] {
        assert_eq!(bin().args(args).output().unwrap().status.code(), Some(EXIT_CONFIG), "{args:?}");
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "--model-N", "2"][..],
        &["table", "--model-N", "2", "--quad-radial", "32", "--quad-azimuthal", "32"],
    ] {
        let (a_code, a) = run_to(&dir.path().join("a"), args);
        let (b_code, b) = run_to(&dir.path().join("b"), args);
        assert_eq!((a_code, b_code), (EXIT_OK, EXIT_OK));
        assert_eq!(a, b);
    }
    let (_, seed_a) = run_to(
        &dir.path().join("c"),
        &["verify", "--model-N", "2", "--seed", "1", "--format", "json"],
    );
    let (_, seed_b) = run_to(
        &dir.path().join("d"),
        &["verify", "--model-N", "2", "--seed", "2", "--format", "json"],
    );
    assert_ne!(seed_a, seed_b);
}

#[test]
fn table_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        &dir.path().join("t.json"),
        &[
            "table",
            "--model-N",
            "2",
            "--quad-radial",
            "32",
            "--quad-azimuthal",
            "32",
            "--format",
            "json",
        ],
    );
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["meta"]["command"], "table");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["N"], 2);
    assert_eq!(rows[2]["Q_closed"].as_f64().unwrap(), -2.0);
    let action = rows[1]["action_closed"].as_f64().unwrap();
    assert_eq!(action, 4.0 * std::f64::consts::PI);
    assert!(text.contains("1.2566370614359172e1"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\nmodel-N = 3\nk = 1\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let (code, text) = run_to(&dir.path().join("a"), &["verify", "--config", cfg]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["meta"]["N"], 3);
    let (code, text) = run_to(
        &dir.path().join("b"),
        &["verify", "--config", cfg, "--model-N", "2", "--format", "csv"],
    );
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("check,"));

    std::fs::write(dir.path().join("bad.cfg"), "colour = blue\n").unwrap();
    let (code, _) = run_to(
        &dir.path().join("c"),
        &["verify", "--config", dir.path().join("bad.cfg").to_str().unwrap()],
    );
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn mesh_has_one_row_per_node() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        &dir.path().join("m.csv"),
        &["mesh", "--model-N", "1", "--n-r", "10", "--n-phi", "10"],
    );
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    assert_eq!(lines[0], "xi1,xi2,coord_000,coord_001,coord_002,g12,gauss_K,mean_H_norm");
    assert!(lines.iter().all(|l| l.split(',').count() == 8));
    assert!(!text.contains('\r'));
}

#[test]
fn integrals_report_every_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        &dir.path().join("i.csv"),
        &[
            "integrals",
            "--model-N",
            "2",
            "--k",
            "1",
            "--quad-radial",
            "64",
            "--quad-azimuthal",
            "32",
        ],
    );
    assert_eq!(code, EXIT_OK, "{text}");
    for name in ["action", "willmore", "top_charge", "euler_char", "area"] {
        assert!(
            text.lines().any(|l| l.starts_with(&format!("1,{name},")) && l.ends_with(",true")),
            "{name}: {text}"
        );
    }
}
