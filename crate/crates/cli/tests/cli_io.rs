//! End-to-end checks of the command surface: row counts, determinism of
//! emitted bytes, seed override, manifest completeness, and the config
//! error paths, exercised both in-process and through the built binary.

use std::path::Path;
use std::process::Command;

use actuation_cli::commands::{cmd_run, cmd_sweep};
use actuation_core::{ModelKind, ScenarioConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_actuation"))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn one_generation_run_emits_two_rows_per_group() {
    let dir = tempfile::tempdir().unwrap();
    let single = ScenarioConfig { seed: 5, m: 20, n: 10, t: 1, ..Default::default() };
    cmd_run(&single, &dir.path().join("single"), None).unwrap();
    let text = String::from_utf8(read(&dir.path().join("single"), "trajectory.csv")).unwrap();
    assert_eq!(text.lines().count(), 3, "header + t=0 + t=1:\n{text}");

    let two = ScenarioConfig { model: ModelKind::M1Contact, ..single };
    cmd_run(&two, &dir.path().join("two"), None).unwrap();
    let text = String::from_utf8(read(&dir.path().join("two"), "trajectory.csv")).unwrap();
    assert_eq!(text.lines().count(), 5, "header + 2 rows x 2 generations:\n{text}");
}

#[test]
fn rerun_with_same_seed_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ScenarioConfig { seed: 11, m: 40, n: 20, t: 5, ..Default::default() };
    cmd_run(&cfg, &dir.path().join("x"), Some(2)).unwrap();
    cmd_run(&cfg, &dir.path().join("y"), Some(2)).unwrap();
    for name in ["trajectory.csv", "samples.csv", "config.echo.toml"] {
        assert_eq!(
            read(&dir.path().join("x"), name),
            read(&dir.path().join("y"), name),
            "{name} differs between identical runs"
        );
    }
}

fn sweep_toml(seed: u64) -> String {
    format!(
        "t_max = 30\nreplicates = 2\n\n[base]\nseed = {seed}\nM = 40\nn = 20\n\n\
         [[axes]]\nparam = \"lambda\"\nvalues = [0.0, 2.0]\n"
    )
}

#[test]
fn sweep_bytes_do_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    for (sub, workers) in [("w1", "1"), ("w4", "4")] {
        let config = dir.path().join("sweep.toml");
        std::fs::write(&config, sweep_toml(3)).unwrap();
        let status = bin()
            .args(["sweep", "--config"])
            .arg(&config)
            .arg("--out-dir")
            .arg(dir.path().join(sub))
            .env("ACTUATION_WORKERS", workers)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        read(&dir.path().join("w1"), "sweep.csv"),
        read(&dir.path().join("w4"), "sweep.csv"),
        "sweep.csv differs across worker counts"
    );
    assert_eq!(
        read(&dir.path().join("w1"), "heatmap.svg"),
        read(&dir.path().join("w4"), "heatmap.svg")
    );
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "seed = 1\nM = 30\nn = 10\nT = 3\n").unwrap();
    for (sub, seed) in [("a", "7"), ("b", "7"), ("c", "8")] {
        let status = bin()
            .args(["run", "--config"])
            .arg(&config)
            .args(["--seed", seed, "--out-dir"])
            .arg(dir.path().join(sub))
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = read(&dir.path().join("a"), "trajectory.csv");
    assert_eq!(a, read(&dir.path().join("b"), "trajectory.csv"));
    assert_ne!(a, read(&dir.path().join("c"), "trajectory.csv"));
    // the echo records the effective seed, so the run can be reproduced
    let echo = String::from_utf8(read(&dir.path().join("a"), "config.echo.toml")).unwrap();
    assert!(echo.contains("seed = 7"), "{echo}");
}

#[test]
fn manifest_lists_every_written_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    std::fs::write(&config, sweep_toml(9)).unwrap();
    let out = dir.path().join("out");
    let status =
        bin().args(["sweep", "--config"]).arg(&config).arg("--out-dir").arg(&out).status().unwrap();
    assert!(status.success());

    let manifest: toml::Table =
        String::from_utf8(read(&out, "manifest.toml")).unwrap().parse().unwrap();
    let listed: Vec<&str> =
        manifest["outputs"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    for name in &listed {
        assert!(out.join(name).exists(), "manifest lists missing file {name}");
    }
    // and nothing on disk goes unlisted (manifest.toml itself aside)
    for entry in std::fs::read_dir(&out).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(
            name == "manifest.toml" || listed.contains(&name.as_str()),
            "unlisted file {name}"
        );
    }
    assert_eq!(manifest["kind"].as_str(), Some("sweep"));
    assert_eq!(manifest["root_seed"].as_integer(), Some(9));
    assert!(manifest["finished_unix"].as_integer() >= manifest["started_unix"].as_integer());
}

#[test]
fn mismatched_command_and_config_kind_fail() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("run.toml");
    std::fs::write(&scenario, "seed = 1\n").unwrap();
    let sweep = dir.path().join("sweep.toml");
    std::fs::write(&sweep, sweep_toml(1)).unwrap();

    let out = bin().args(["sweep", "--config"]).arg(&scenario).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("scenario config"));

    let out = bin().args(["run", "--config"]).arg(&sweep).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep config"));
}

#[test]
fn bad_config_paths_and_keys_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run", "--config"])
        .arg(dir.path().join("missing.toml"))
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.toml"));

    let config = dir.path().join("typo.toml");
    std::fs::write(&config, "seed = 1\nlamda = 2.0\n").unwrap();
    let out = bin().args(["run", "--config"]).arg(&config).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("lamda"));

    let out = bin().args(["replicate", "fig7"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig7"));
}

#[test]
fn invalid_worker_env_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "seed = 1\nM = 10\nn = 5\nT = 1\n").unwrap();
    let out = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(dir.path().join("o"))
        .env("ACTUATION_WORKERS", "lots")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("ACTUATION_WORKERS"));
}

#[test]
fn replicate_preset_writes_panel_files() {
    let dir = tempfile::tempdir().unwrap();
    // fig8 is the fastest multi-panel preset (T=50), still a real model run;
    // shrink nothing, just check the artifact layout
    let out = dir.path().join("fig8");
    let status = bin()
        .args(["replicate", "fig8", "--seed", "6", "--out-dir"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest: toml::Table =
        String::from_utf8(read(&out, "manifest.toml")).unwrap().parse().unwrap();
    let listed = manifest["outputs"].as_array().unwrap();
    // 4 panels x (trajectory + config echo)
    assert_eq!(listed.len(), 8);
    assert!(out.join("fig8_ap0.05_bp0.005.trajectory.csv").exists());
    let echo =
        String::from_utf8(read(&out, "fig8_ap0.05_bp0.005.config.toml")).unwrap();
    assert!(echo.contains("model = \"m1\"") || echo.contains("model = \"contact\""), "{echo}");
}

#[test]
fn sweep_replicates_flag_overrides_spec() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    std::fs::write(&config, sweep_toml(4)).unwrap();
    let out = dir.path().join("out");
    let status = bin()
        .args(["sweep", "--config"])
        .arg(&config)
        .args(["--replicates", "3", "--out-dir"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let table = String::from_utf8(read(&out, "sweep.csv")).unwrap();
    assert_eq!(table.lines().count(), 7); // header + 2 cells x 3 replicates
}
