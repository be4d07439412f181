use assert_cmd::Command;
use predicates::prelude::*;

fn ptspin() -> Command {
    Command::cargo_bin("ptspin").expect("binary builds")
}

fn data_rows(stdout: &str) -> Vec<Vec<String>> {
    stdout
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1) // header row
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn evolve_respects_conservation_contract() {
    let out = ptspin()
        .args(["evolve", "--model", "ddm", "--kappa", "1.0", "--t-end", "50", "--stride", "1"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    let rows = data_rows(&text);
    assert!(rows.len() > 40);
    for row in &rows {
        let residual: f64 = row[4].parse().unwrap();
        assert!(residual < 1e-9, "norm drift {residual}");
    }
}

#[test]
fn malformed_flag_exits_2_without_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    ptspin()
        .args(["evolve", "--model", "ddm", "--no-such-flag"])
        .arg("--output")
        .arg(&path)
        .assert()
        .code(2);
    assert!(!path.exists(), "usage error must not leave an output file");
}

#[test]
fn usage_error_after_parse_exits_2_without_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    // waveguide has no closed-form gap reference: rejected before any work
    ptspin()
        .args(["gap-sweep", "--model", "waveguide"])
        .arg("--output")
        .arg(&path)
        .assert()
        .code(2)
        .stderr(predicate::str::starts_with("error:"));
    assert!(!path.exists());
}

#[test]
fn identical_config_gives_byte_identical_output() {
    let run = || {
        ptspin()
            .args([
                "symmetry-check",
                "--model",
                "waveguide",
                "--kappa",
                "0.4",
                "--spin",
                "5",
                "--n-states",
                "50",
                "--seed",
                "42",
                "--threads",
                "2",
            ])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone()
    };
    assert_eq!(run(), run());
}

#[test]
fn config_file_merges_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"model": "ddm", "kappa": 3.0, "kappa_min": 3.0,
        "kappa_max": 3.0, "kappa_steps": 1}"#)
        .unwrap();
    // config alone: kappa = 3 is deep in the PT-broken phase
    let out = ptspin()
        .args(["phase-diagram", "--config"])
        .arg(&cfg)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let rows = data_rows(&String::from_utf8(out).unwrap());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2], "FPTB");

    // flag overrides the swept range back into the symmetric phase
    let out = ptspin()
        .args(["phase-diagram", "--config"])
        .arg(&cfg)
        .args(["--kappa-min", "1.0", "--kappa-max", "1.0"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let rows = data_rows(&String::from_utf8(out).unwrap());
    assert_eq!(rows[0][2], "PT");
}

#[test]
fn phase_labels_match_library_classification() {
    for kappa in [1.0, 1.8, 2.5] {
        let model = ptspin::meanfield::MeanFieldModel::Ddm { g: 2.0, omega: 1.0, kappa };
        let expected = ptspin::stability::phase_classify(&model).unwrap().phase;
        let out = ptspin()
            .args([
                "phase-diagram",
                "--model",
                "ddm",
                "--kappa-min",
                &kappa.to_string(),
                "--kappa-max",
                &kappa.to_string(),
                "--kappa-steps",
                "1",
            ])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone();
        let rows = data_rows(&String::from_utf8(out).unwrap());
        assert_eq!(rows[0][2], expected.as_str(), "kappa = {kappa}");
    }
}

#[test]
fn json_output_carries_provenance() {
    let out = ptspin()
        .args(["pt-demo", "--g", "1.0", "--gamma", "1.0", "--format", "json"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(doc["rows"][0][6], "exceptional_point");
}

#[test]
fn csv_floats_use_17_significant_digits() {
    let out = ptspin()
        .args(["pt-demo", "--g", "1.0", "--gamma", "0.5"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    // sqrt(3)/2 printed to full precision
    assert!(text.contains("8.6602540378443860e-1"), "{text}");
}
