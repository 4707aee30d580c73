//! The three commands behind the CLI surface. Each writes its artifacts
//! atomically into the output directory and finishes with a manifest listing
//! every file it produced.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use actuation_core::{
    run_sweep, run_with_options, RunOptions, ScenarioConfig, SweepSpec,
};
use serde::Serialize;

use crate::config::{echo_scenario, echo_sweep};
use crate::error::{io_err, Result};
use crate::heatmap::render_heatmap;
use crate::output::{atomic_write, samples_csv, sweep_csv, trajectory_csv};
use crate::presets::{preset_runs, PresetRun};

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    version: &'a str,
    kind: &'a str,
    root_seed: u64,
    started_unix: u64,
    finished_unix: u64,
    outputs: &'a [String],
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).expect("clock after 1970").as_secs()
}

/// Collects written files and closes out by writing `manifest.toml`.
struct OutDir {
    dir: PathBuf,
    files: Vec<String>,
    started_unix: u64,
}

impl OutDir {
    fn create(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
        Ok(OutDir { dir: dir.to_path_buf(), files: Vec::new(), started_unix: now_unix() })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        atomic_write(&self.dir.join(name), bytes)?;
        self.files.push(name.to_string());
        Ok(())
    }

    fn finish(mut self, kind: &str, root_seed: u64) -> Result<Vec<PathBuf>> {
        let manifest = Manifest {
            version: env!("CARGO_PKG_VERSION"),
            kind,
            root_seed,
            started_unix: self.started_unix,
            finished_unix: now_unix(),
            outputs: &self.files,
        };
        let text = toml::to_string(&manifest).expect("manifest serializes");
        atomic_write(&self.dir.join("manifest.toml"), text.as_bytes())?;
        self.files.push("manifest.toml".to_string());
        Ok(self.files.iter().map(|f| self.dir.join(f)).collect())
    }
}

/// Run one scenario for its configured generation count and emit the
/// trajectory (plus per-agent samples every `emit_samples` generations when
/// requested).
pub fn cmd_run(
    cfg: &ScenarioConfig,
    out_dir: &Path,
    emit_samples: Option<u32>,
) -> Result<Vec<PathBuf>> {
    let mut out = OutDir::create(out_dir)?;
    let opts = RunOptions { sample_every: emit_samples, stop_when_stable: None, t_max: None };
    let traj = run_with_options(cfg, &opts)?;
    out.write("trajectory.csv", &trajectory_csv(&traj.summaries))?;
    if emit_samples.is_some() {
        out.write("samples.csv", &samples_csv(&traj.samples))?;
    }
    out.write("config.echo.toml", echo_scenario(cfg).as_bytes())?;
    out.finish("run", cfg.seed)
}

/// Run a parameter grid and emit its table and heatmap.
pub fn cmd_sweep(
    spec: &SweepSpec,
    out_dir: &Path,
    workers: Option<usize>,
) -> Result<Vec<PathBuf>> {
    let mut out = OutDir::create(out_dir)?;
    let cells = run_sweep(spec, workers)?;
    out.write("sweep.csv", &sweep_csv(spec, &cells))?;
    out.write("heatmap.svg", render_heatmap(spec, &cells).as_bytes())?;
    out.write("config.echo.toml", echo_sweep(spec).as_bytes())?;
    out.finish("sweep", spec.base.seed)
}

/// Run every panel of a figure preset. `replicates` overrides the replicate
/// count of sweep-style panels.
pub fn cmd_replicate(
    figure: &str,
    seed: u64,
    out_dir: &Path,
    workers: Option<usize>,
    replicates: Option<usize>,
) -> Result<Vec<PathBuf>> {
    let runs = preset_runs(figure, seed)?;
    let mut out = OutDir::create(out_dir)?;
    for named in &runs {
        match &named.run {
            PresetRun::Scenario(cfg) => {
                let opts = RunOptions::default();
                let traj = run_with_options(cfg, &opts)?;
                out.write(
                    &format!("{}.trajectory.csv", named.name),
                    &trajectory_csv(&traj.summaries),
                )?;
                out.write(&format!("{}.config.toml", named.name), echo_scenario(cfg).as_bytes())?;
            }
            PresetRun::Sweep(spec) => {
                let spec = match replicates {
                    Some(r) => SweepSpec { replicates: r, ..spec.clone() },
                    None => spec.clone(),
                };
                let cells = run_sweep(&spec, workers)?;
                out.write(&format!("{}.sweep.csv", named.name), &sweep_csv(&spec, &cells))?;
                out.write(
                    &format!("{}.heatmap.svg", named.name),
                    render_heatmap(&spec, &cells).as_bytes(),
                )?;
                out.write(&format!("{}.config.toml", named.name), echo_sweep(&spec).as_bytes())?;
            }
        }
    }
    out.finish("replicate", seed)
}
