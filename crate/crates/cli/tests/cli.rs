//! End-to-end runs of the `solwave` binary: exit codes, artifact layout,
//! determinism, and flag/file precedence.

use std::path::Path;
use std::process::{Command, Output};

fn solwave(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solwave"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn solve_writes_artifacts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = solwave(
        dir.path(),
        &["solve", "--backend", "wb", "--symbol", "bdw", "--q", "1e-2", "--out", "run"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let run = dir.path().join("run");
    for file in ["manifest.json", "wave.csv", "spectrum.csv"] {
        assert!(run.join(file).exists(), "{file} missing");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(run.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["schema"], 1);
    assert_eq!(manifest["backend"], "wb");
    assert!(manifest["lambda"].as_f64().unwrap() > 1.0);
    assert_eq!(manifest["penalty_active"], false);
    // wave.csv has the four reconstructed columns
    let wave = std::fs::read_to_string(run.join("wave.csv")).unwrap();
    assert!(wave.starts_with("x,w,u,eta\n"));
}

#[test]
fn identical_config_and_seed_reproduce_byte_identical_summaries() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a", "b"] {
        let out = solwave(
            dir.path(),
            &["solve", "--q", "1e-2", "--seed", "7", "--out", name],
        );
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    }
    let a = std::fs::read(dir.path().join("a/manifest.json")).unwrap();
    let b = std::fs::read(dir.path().join("b/manifest.json")).unwrap();
    assert_eq!(a, b, "summaries differ between identical runs");
    let a = std::fs::read(dir.path().join("a/wave.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b/wave.csv")).unwrap();
    assert_eq!(a, b, "wave exports differ between identical runs");
}

#[test]
fn negative_q_is_a_config_error_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = solwave(dir.path(), &["solve", "--q", "-1"]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("q must be positive"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn too_small_ball_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    // R^2 = q/100 cannot even hold |w|_L2^2 = 2q
    let out = solwave(
        dir.path(),
        &["solve", "--q", "1e-3", "--r-sq-over-q", "0.01", "--out", "run"],
    );
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
}

#[test]
fn sweep_emits_aggregate_with_speed_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let out = solwave(
        dir.path(),
        &["sweep", "--q-ladder", "1e-4,1e-3,1e-2", "--out", "sweep"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let agg = std::fs::read_to_string(dir.path().join("sweep/aggregate.csv")).unwrap();
    let lines: Vec<&str> = agg.lines().collect();
    assert_eq!(
        lines[0],
        "q,lambda,energy,h1sq_over_q,lw_ratio_defect,lw_distance,grid_n,grid_p"
    );
    assert_eq!(lines.len(), 4);
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("sweep/manifest.json")).unwrap(),
    )
    .unwrap();
    let exponent = manifest["fitted_speed_exponent"].as_f64().unwrap();
    assert!(
        (exponent - 2.0 / 3.0).abs() < 0.1,
        "fitted exponent {exponent}"
    );
    for rung in ["q00", "q01", "q02"] {
        assert!(dir.path().join("sweep").join(rung).join("wave.csv").exists());
    }
}

#[test]
fn ladder_crossing_the_ceiling_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let out = solwave(dir.path(), &["sweep", "--q-ladder", "1e-3,1e-2,1e-1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("ceiling"), "stderr: {}", stderr(&out));
}

#[test]
fn single_rung_ladder_matches_solve_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = solwave(dir.path(), &["sweep", "--q-ladder", "1e-2", "--out", "sw"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let out = solwave(dir.path(), &["solve", "--q", "1e-2", "--out", "sv"]);
    assert_eq!(code(&out), 0);
    let a: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("sw/q00/manifest.json")).unwrap(),
    )
    .unwrap();
    let b: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("sv/manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(a["lambda"], b["lambda"]);
    assert_eq!(a["iterations"], b["iterations"]);
}

#[test]
fn validate_passes_for_builtin_symbols() {
    let dir = tempfile::tempdir().unwrap();
    let out = solwave(dir.path(), &["validate", "--symbol", "bdw", "--out", "val"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let bundle: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("val/validation.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(bundle["pass"], true);
    assert_eq!(bundle["suites"].as_array().unwrap().len(), 4);
}

#[test]
fn validate_periodization_trend_over_selected_periods() {
    let dir = tempfile::tempdir().unwrap();
    let out = solwave(
        dir.path(),
        &["validate", "--suite", "periodization", "--P", "32,64,128", "--out", "val"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(stdout.contains("[PASS] periodization"), "stdout: {stdout}");
}

fn write_skewed_table(path: &Path) {
    // tanh(k)/k plus an odd perturbation: symmetrization cancels it exactly,
    // so the repaired table is admissible while the raw one is not even
    let mut text = String::from("k,m\n");
    for i in 0..=2000 {
        let k = -10.0 + 20.0 * (i as f64) / 2000.0;
        let ka: f64 = k;
        let m = ka.abs().max(1e-8).tanh() / ka.abs().max(1e-8) + 1e-4 * k / (1.0 + k * k);
        text.push_str(&format!("{k},{m}\n"));
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn skewed_symbol_table_is_repaired_unless_strict() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("skewed.csv");
    write_skewed_table(&table);
    // default policy: symmetrize with a warning and validate the repair
    let out = solwave(
        dir.path(),
        &["validate", "--symbol", "skewed.csv", "--suite", "symbol", "--out", "v1"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("symmetrized"), "stderr: {}", stderr(&out));
    // strict policy: refuse the table
    let out = solwave(
        dir.path(),
        &["validate", "--symbol", "skewed.csv", "--strict"],
    );
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
}

#[test]
fn flags_override_config_file_fields() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("cfg.json"),
        r#"{"backend": "wb", "symbol": "bdw", "q": 1e-3, "out_dir": "from_file"}"#,
    )
    .unwrap();
    let out = solwave(
        dir.path(),
        &["solve", "--config", "cfg.json", "--q", "1e-2", "--out", "from_flag"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(dir.path().join("from_flag/manifest.json").exists());
    assert!(!dir.path().join("from_file").exists());
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("from_flag/manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["q"].as_f64().unwrap(), 1e-2);
}

#[test]
fn unknown_config_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cfg.json"), r#"{"qq": 1e-3}"#).unwrap();
    let out = solwave(dir.path(), &["solve", "--config", "cfg.json"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("qq"), "stderr: {}", stderr(&out));
}

#[test]
fn scalar_backend_solves_the_default_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = solwave(
        dir.path(),
        &["solve", "--backend", "scalar", "--symbol", "whitham", "--q", "1e-2", "--out", "run"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("run/manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["backend"], "scalar");
    let nu = manifest["lambda"].as_f64().unwrap();
    assert!(nu > 1.0, "nu = {nu}");
    // for the scalar backend the multiplier is the speed itself
    assert_eq!(manifest["c"], manifest["lambda"]);
    let wave = std::fs::read_to_string(dir.path().join("run/wave.csv")).unwrap();
    assert!(wave.starts_with("x,w\n"));
}
