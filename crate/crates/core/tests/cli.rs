use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use burgers_levy::driver::{read_csv, run_experiment, ExperimentConfig, Subcommand};
use burgers_levy::{LevyParams, Error};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_burgers-levy"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn small() -> ExperimentConfig {
    ExperimentConfig { n: 1025, n_rep: 100, ..ExperimentConfig::default() }
}

#[test]
fn simulate_zero_sigma_gives_zero_rows() {
    let dir = tempfile::tempdir().unwrap();
    let st = bin()
        .args(["simulate", "--family", "brownian", "--sigma", "0", "--n", "101", "--L", "2", "--seed", "9"])
        .arg("--out-dir")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(st.success());
    let t = read_csv(&dir.path().join("path.csv")).unwrap();
    assert_eq!(t.rows.len(), 101);
    assert!(t.floats("psi").unwrap().iter().all(|&v| v == 0.0));
    let meta = t.meta.unwrap();
    assert!(meta.starts_with("burgers-levy v0.1.0 config_hash="), "{meta}");
    assert!(meta.ends_with("seed=9"));
    assert!(read_csv(&dir.path().join("jumps.csv")).unwrap().rows.is_empty());
}

#[test]
fn jump_up_fixture_gives_one_shock() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("shocks")
        .arg("--path")
        .arg(fixture("jump_up.csv"))
        .arg("--jumps")
        .arg(fixture("jump_up_jumps.csv"))
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t = read_csv(&dir.path().join("shocks.csv")).unwrap();
    let ba = t.column("boundary_affected").unwrap();
    let inner: Vec<usize> = (0..t.rows.len()).filter(|&i| t.rows[i][ba] == "false").collect();
    assert_eq!(inner.len(), 1);
    let v = t.floats("velocity").unwrap()[inner[0]];
    assert!((v + 0.5).abs() <= 1e-6, "velocity {v}");
}

#[test]
fn identical_config_is_byte_identical() {
    let mut cfg = small();
    cfg.params = LevyParams::Stable { alpha: 1.5, beta: 0.0, scale: 1.0 };
    cfg.h_list = vec![1.0 / 16.0, 1.0 / 32.0];
    cfg.n_rep = 100;
    cfg.n_mc = 1000;
    for cmd in Subcommand::ALL {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let fa = run_experiment(&cfg, cmd, a.path()).unwrap();
        let fb = run_experiment(&cfg, cmd, b.path()).unwrap();
        assert_eq!(fa.files.len(), fb.files.len());
        for (x, y) in fa.files.iter().zip(&fb.files) {
            assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap(), "{cmd}: {}", x.display());
        }
    }
}

#[test]
fn solve_tables_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small();
    run_experiment(&cfg, Subcommand::Solve, dir.path()).unwrap();
    let path = burgers_levy::sample_path(cfg.params, cfg.grid().unwrap(), cfg.seed).unwrap();
    let sol = burgers_levy::solve(&path, cfg.t).unwrap();
    let v = read_csv(&dir.path().join("vertices.csv")).unwrap();
    assert_eq!(v.floats("y").unwrap(), sol.majorant.ys);
    assert_eq!(v.floats("c_bar").unwrap(), sol.majorant.vs);
    assert_eq!(v.floats("x_lo").unwrap(), sol.x_lo);
    assert_eq!(v.floats("x_hi").unwrap(), sol.x_hi);
    let s = read_csv(&dir.path().join("samples.csv")).unwrap();
    for (x, a) in s.floats("x").unwrap().into_iter().zip(s.floats("a").unwrap()) {
        assert_eq!(sol.evaluate(x).unwrap().a, a);
    }
    let text = fs::read_to_string(dir.path().join("effective_config.json")).unwrap();
    assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
}

#[test]
fn regen_json_and_replicates() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small();
    cfg.params = LevyParams::Stable { alpha: 1.5, beta: 0.0, scale: 1.0 };
    run_experiment(&cfg, Subcommand::Regen, dir.path()).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("regen.json")).unwrap()).unwrap();
    let p = json["independence"]["p_value"].as_f64().unwrap();
    assert!(p > 0.0 && p <= 1.0);
    let reps = read_csv(&dir.path().join("replicates.csv")).unwrap();
    let ids: Vec<f64> = reps.floats("replicate").unwrap();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(ids.len() as u64, json["independence"]["replicates"].as_u64().unwrap());
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["simulate", "--family", "stable", "--alpha", "3"]).arg("--out-dir").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "config");

    let cfg_path = dir.path().join("c.json");
    fs::write(&cfg_path, "{ not json").unwrap();
    let out = bin().arg("solve").arg("--config").arg(&cfg_path).arg("--out-dir").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let mut cfg = small();
    cfg.n_rep = 10;
    assert!(matches!(run_experiment(&cfg, Subcommand::Regen, dir.path()), Err(Error::Parameter(_))));
    assert_eq!(Error::Parameter(String::new()).exit_code(), 3);

    let out = bin()
        .arg("solve")
        .arg("--path")
        .arg(dir.path().join("missing.csv"))
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(6));
}
