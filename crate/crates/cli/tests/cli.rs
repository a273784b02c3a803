//! End-to-end tests of the `waveguide` binary: exit codes, output formats,
//! determinism across runs and worker counts, and byte-level golden-file
//! regression for the standard figure datasets.
//!
//! Regenerate the golden files with
//! `GOLDEN_BLESS=1 cargo test -p waveguide-cli --test cli`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_waveguide")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("WAVEGUIDE_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap().to_string();
    full.push("--output");
    full.push(&path_str);
    let out = run_in(dir, &full);
    assert!(
        out.status.success(),
        "command failed: {args:?}\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    std::fs::read(&path).expect("output file written")
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["trajectory", "--kind", "magnetic", "--a0", "1", "--k", "-2", "--E", "0.5", "--output", "x.csv"],
    );
    assert_eq!(out.status.code(), Some(3), "forbidden regime");
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("|E| < |k|") && msg.contains("|k + a0|"), "message names the inequalities: {msg}");

    let out = run_in(
        dir.path(),
        &["wavefunction", "--kind", "electric", "--v0", "4", "--k", "2.5", "--level", "99", "--output", "x.csv"],
    );
    assert_eq!(out.status.code(), Some(4), "level out of range");

    let out = run_in(
        dir.path(),
        &["transmission", "--kind", "magnetic", "--a0", "4", "--k", "1", "--sweep", "alpha", "--steps", "1", "--output", "x.csv"],
    );
    assert_eq!(out.status.code(), Some(2), "degenerate grid");

    let out = run_in(
        dir.path(),
        &["transmission", "--kind", "magnetic", "--v0", "4", "--k", "1", "--sweep", "alpha", "--output", "x.csv"],
    );
    assert_eq!(out.status.code(), Some(2), "strength flag mismatch");

    let out = run_in(dir.path(), &["no-such-command"]);
    assert_eq!(out.status.code(), Some(2), "clap usage error");

    // boundary configuration |E| = |k| is a regime error, not a crash
    let out = run_in(
        dir.path(),
        &["trajectory", "--kind", "electric", "--v0", "1", "--k", "1", "--E", "1", "--output", "x.csv"],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn runs_are_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "bound-spectrum", "--kind", "magnetic", "--a0", "4", "--k", "-3",
        "--curves", "k", "--sweep-min", "-5", "--sweep-max", "-0.5", "--sweep-steps", "40",
    ];
    let first = run_to(dir.path(), "a.csv", &args);
    let second = run_to(dir.path(), "b.csv", &args);
    assert_eq!(first, second, "same flags, same bytes");

    let mut with_jobs: Vec<&str> = args.to_vec();
    with_jobs.extend(["--jobs", "4"]);
    let parallel = run_to(dir.path(), "c.csv", &with_jobs);
    assert_eq!(first, parallel, "worker count must not change the output");
}

#[test]
fn csv_shape_and_precision() {
    let dir = tempfile::tempdir().unwrap();
    let bytes = run_to(
        dir.path(),
        "spec.csv",
        &["bound-spectrum", "--kind", "electric", "--v0", "4", "--k", "2.5"],
    );
    let text = String::from_utf8(bytes).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "level,E,character,exterior_decay");
    assert_eq!(lines.len(), 5, "header plus four levels");
    // full-precision float fields: 16 digits after the point
    let e_field = lines[1].split(',').nth(1).unwrap();
    let mantissa = e_field.split('e').next().unwrap();
    assert_eq!(mantissa.split('.').nth(1).unwrap().len(), 16, "{e_field}");
}

#[test]
fn json_envelope_carries_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let bytes = run_to(
        dir.path(),
        "wf.json",
        &["wavefunction", "--kind", "magnetic", "--a0", "4", "--k", "-3", "--level", "1", "--points", "41", "--format", "json"],
    );
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["command"], "wavefunction");
    assert_eq!(v["flags"]["well"]["a0"], 4.0);
    assert!(v["units"].as_str().unwrap().contains("hbar = v_F = 1"));
    assert_eq!(v["notes"]["character"], "edge");
    assert_eq!(v["columns"].as_array().unwrap().len(), 5);
    assert_eq!(v["rows"].as_array().unwrap().len(), 41);
    assert!(v["version"].is_string());
}

#[test]
fn output_dir_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let outdir = dir.path().join("env-target");
    std::fs::create_dir(&outdir).unwrap();
    let out = Command::new(bin())
        .args(["bound-spectrum", "--kind", "electric", "--v0", "4", "--k", "2.5", "--output", "levels.csv"])
        .current_dir(dir.path())
        .env("WAVEGUIDE_OUT_DIR", &outdir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(outdir.join("levels.csv").exists(), "file lands in WAVEGUIDE_OUT_DIR");
    assert!(!dir.path().join("levels.csv").exists());
}

/// Figure datasets frozen as golden files. One entry per reference curve
/// family; grids kept small so the files stay reviewable.
const GOLDEN: &[(&str, &[&str])] = &[
    (
        "transmission_alpha_magnetic_k1_a04.csv",
        &["transmission", "--kind", "magnetic", "--a0", "4", "--k", "1", "--sweep", "alpha",
          "--alpha-min", "0.02", "--alpha-max", "1.55", "--steps", "60"],
    ),
    (
        "transmission_energy_magnetic_k1_a04.csv",
        &["transmission", "--kind", "magnetic", "--a0", "4", "--k", "1", "--sweep", "E",
          "--e-min", "1.05", "--e-max", "12", "--steps", "80"],
    ),
    (
        "transmission_alpha_electric_k1_v08.csv",
        &["transmission", "--kind", "electric", "--v0", "8", "--k", "1", "--sweep", "alpha",
          "--alpha-min", "0.02", "--alpha-max", "1.55", "--steps", "60"],
    ),
    (
        "transmission_energy_electric_k1_v08.csv",
        &["transmission", "--kind", "electric", "--v0", "8", "--k", "1", "--sweep", "E",
          "--e-min", "1.05", "--e-max", "12", "--steps", "80"],
    ),
    (
        "spectral_k_magnetic_a04.csv",
        &["bound-spectrum", "--kind", "magnetic", "--a0", "4", "--k", "-3", "--curves", "k",
          "--sweep-min", "-6", "--sweep-max", "-0.05", "--sweep-steps", "80"],
    ),
    (
        "spectral_strength_magnetic_km3.csv",
        &["bound-spectrum", "--kind", "magnetic", "--k", "-3", "--curves", "strength",
          "--sweep-min", "0.1", "--sweep-max", "8", "--sweep-steps", "80"],
    ),
    (
        "spectral_k_electric_v04.csv",
        &["bound-spectrum", "--kind", "electric", "--v0", "4", "--k", "2.5", "--curves", "k",
          "--sweep-min", "-6", "--sweep-max", "6", "--sweep-steps", "97"],
    ),
    (
        "spectral_strength_electric_k25.csv",
        &["bound-spectrum", "--kind", "electric", "--k", "2.5", "--curves", "strength",
          "--sweep-min", "-6", "--sweep-max", "6", "--sweep-steps", "97"],
    ),
    (
        "join_magnetic_a04.csv",
        &["bound-spectrum", "--kind", "magnetic", "--a0", "4", "--k", "-3", "--curves", "k",
          "--join-resonances", "--sweep-min", "-6", "--sweep-max", "-0.05", "--sweep-steps", "80",
          "--n-max", "5"],
    ),
    (
        "join_electric_v04.csv",
        &["bound-spectrum", "--kind", "electric", "--v0", "4", "--k", "2.5", "--curves", "k",
          "--join-resonances", "--sweep-min", "0.05", "--sweep-max", "6", "--sweep-steps", "80",
          "--n-max", "5"],
    ),
    (
        "classical_regions_electric_v01.csv",
        &["classical-regions", "--kind", "electric", "--v0", "1", "--plane", "E-k",
          "--e-min", "-3", "--e-max", "3", "--e-steps", "41",
          "--param-min", "-3", "--param-max", "3", "--param-steps", "41"],
    ),
    (
        "classical_regions_magnetic_km2.csv",
        &["classical-regions", "--kind", "magnetic", "--k", "-2", "--plane", "E-a0",
          "--e-min", "-3", "--e-max", "3", "--e-steps", "41",
          "--param-min", "0", "--param-max", "6", "--param-steps", "41"],
    ),
    (
        "wavefunction_magnetic_edge.csv",
        &["wavefunction", "--kind", "magnetic", "--a0", "4", "--k", "-3", "--level", "1",
          "--points", "241"],
    ),
    (
        "wavefunction_electric_ground.csv",
        &["wavefunction", "--kind", "electric", "--v0", "4", "--k", "2.5", "--level", "0",
          "--points", "241"],
    ),
    (
        "trajectory_magnetic_bound.csv",
        &["trajectory", "--kind", "magnetic", "--a0", "1", "--k", "-2", "--E", "1.5",
          "--max-length", "12"],
    ),
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn golden_figure_datasets() {
    let bless = std::env::var_os("GOLDEN_BLESS").is_some();
    let dir = tempfile::tempdir().unwrap();
    if bless {
        std::fs::create_dir_all(golden_dir()).unwrap();
    }
    for (name, args) in GOLDEN {
        let bytes = run_to(dir.path(), name, args);
        let golden_path = golden_dir().join(name);
        if bless {
            std::fs::write(&golden_path, &bytes).unwrap();
            continue;
        }
        let expected = std::fs::read(&golden_path)
            .unwrap_or_else(|_| panic!("missing golden file {name}; run with GOLDEN_BLESS=1"));
        assert_eq!(bytes, expected, "dataset {name} drifted from its golden file");
    }
}
