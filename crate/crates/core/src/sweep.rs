//! Parameter-grid execution, stable-state detection, and bifurcation
//! extraction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{run_with_options, RunOptions, StableRule};
use crate::error::{Result, SimError};
use crate::population::GenerationSummary;
use crate::rng::derive_run_seed;
use crate::scenarios::ScenarioConfig;

fn d_t_max() -> u32 {
    2500
}
fn d_replicates() -> usize {
    1
}
fn d_window() -> u32 {
    50
}
fn d_delta() -> f64 {
    0.5
}

/// One sweep axis: a parameter name (config-file spelling) and the values it
/// takes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub param: String,
    pub values: Vec<f64>,
}

/// A 1- or 2-dimensional parameter grid over a base scenario. Every
/// (cell, replicate) gets its own seed derived from the base seed, so cells
/// are independent and schedule-invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: ScenarioConfig,
    pub axes: Vec<Axis>,
    /// Generation cap per cell (overrides the base config's T).
    #[serde(default = "d_t_max")]
    pub t_max: u32,
    /// Independent seeds per cell.
    #[serde(default = "d_replicates")]
    pub replicates: usize,
    /// Stability window in generations.
    #[serde(default = "d_window")]
    pub window: u32,
    /// Stability threshold in Hz.
    #[serde(default = "d_delta")]
    pub delta: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(SimError::Config(format!(
                "a sweep needs 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        for axis in &self.axes {
            if axis.values.is_empty() {
                return Err(SimError::Config(format!("axis \"{}\" has no values", axis.param)));
            }
            if axis.values.iter().any(|v| !v.is_finite()) {
                return Err(SimError::Config(format!(
                    "axis \"{}\" has a non-finite value",
                    axis.param
                )));
            }
            // probe the name so bad axes fail before any cell runs
            self.base.clone().set_param(&axis.param, axis.values[0])?;
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(SimError::Config(format!(
                "both axes name the same parameter \"{}\"",
                self.axes[0].param
            )));
        }
        if self.replicates == 0 {
            return Err(SimError::Config("replicates must be at least 1".into()));
        }
        if self.window == 0 {
            return Err(SimError::Config("window must be at least 1".into()));
        }
        if !self.delta.is_finite() || self.delta <= 0.0 {
            return Err(SimError::Config(format!("delta must be positive, got {}", self.delta)));
        }
        if self.t_max == 0 {
            return Err(SimError::Config("t_max must be at least 1".into()));
        }
        Ok(())
    }

    pub fn n_cells(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// Axis values of one cell in row-major order (first axis outermost).
    pub fn cell_values(&self, index: usize) -> Vec<(String, f64)> {
        let inner = if self.axes.len() == 2 { self.axes[1].values.len() } else { 1 };
        let mut out = Vec::with_capacity(self.axes.len());
        out.push((self.axes[0].param.clone(), self.axes[0].values[index / inner]));
        if self.axes.len() == 2 {
            out.push((self.axes[1].param.clone(), self.axes[1].values[index % inner]));
        }
        out
    }

    /// Base config with this cell's axis values applied and the replicate's
    /// derived seed installed.
    pub fn cell_config(&self, index: usize, replicate: usize) -> Result<ScenarioConfig> {
        let values = self.cell_values(index);
        let mut cfg = self.base.clone();
        for (name, value) in &values {
            cfg.set_param(name, *value)?;
        }
        cfg.seed = derive_run_seed(self.base.seed, index as u64, replicate as u64);
        cfg.validate().map_err(|e| {
            let desc: Vec<String> =
                values.iter().map(|(n, v)| format!("{n}={v}")).collect();
            SimError::Config(format!("sweep cell {index} ({}): {e}", desc.join(", ")))
        })?;
        Ok(cfg)
    }
}

/// Outcome of one (cell, replicate) run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateOutcome {
    pub replicate: usize,
    pub seed: u64,
    pub final_mean_overall: f64,
    pub final_mean_a: f64,
    pub final_mean_b: Option<f64>,
    /// Generation where the stability rule fired; None means the cell ran to
    /// t_max without stabilizing.
    pub converged_at: Option<u32>,
}

/// One grid point with all its replicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub index: usize,
    pub values: Vec<(String, f64)>,
    pub outcomes: Vec<ReplicateOutcome>,
}

impl SweepCell {
    /// Median across replicates of the final overall mean.
    pub fn median_final(&self) -> f64 {
        let mut finals: Vec<f64> =
            self.outcomes.iter().map(|o| o.final_mean_overall).collect();
        finals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = finals.len();
        if n % 2 == 1 {
            finals[n / 2]
        } else {
            0.5 * (finals[n / 2 - 1] + finals[n / 2])
        }
    }

    /// Max minus min of the final overall mean across replicates.
    pub fn dispersion(&self) -> f64 {
        let finals = self.outcomes.iter().map(|o| o.final_mean_overall);
        let max = finals.clone().fold(f64::NEG_INFINITY, f64::max);
        let min = finals.fold(f64::INFINITY, f64::min);
        max - min
    }
}

pub(crate) fn stable_at(traj: &[GenerationSummary], t: usize, window: u32, delta: f64) -> bool {
    let w = window as usize;
    t >= w && t < traj.len() && (traj[t].overall.mean_c - traj[t - w].overall.mean_c).abs() < delta
}

/// Earliest generation `t >= window` at which the whole-population mean
/// moved less than `delta` over the preceding `window` generations; None if
/// that never happens in the trajectory.
pub fn detect_stable(traj: &[GenerationSummary], window: u32, delta: f64) -> Option<u32> {
    let w = window as usize;
    (w..traj.len()).find(|&t| stable_at(traj, t, window, delta)).map(|t| traj[t].generation)
}

/// Run every (cell, replicate) of the grid, in parallel when workers permit.
/// `workers` bounds the thread count (None or Some(0) = one thread per
/// core). Output order is row-major by axes regardless of scheduling, and
/// every outcome depends only on (spec, cell, replicate).
pub fn run_sweep(spec: &SweepSpec, workers: Option<usize>) -> Result<Vec<SweepCell>> {
    spec.validate()?;
    let n_cells = spec.n_cells();
    // surface any invalid derived config before spending time on runs
    for index in 0..n_cells {
        spec.cell_config(index, 0)?;
    }
    let jobs: Vec<(usize, usize)> = (0..n_cells)
        .flat_map(|cell| (0..spec.replicates).map(move |rep| (cell, rep)))
        .collect();
    let opts = RunOptions {
        sample_every: None,
        stop_when_stable: Some(StableRule { window: spec.window, delta: spec.delta }),
        t_max: Some(spec.t_max),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| SimError::Config(format!("thread pool: {e}")))?;
    let outcomes: Result<Vec<(usize, ReplicateOutcome)>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(cell, rep)| {
                let cfg = spec.cell_config(cell, rep)?;
                let traj = run_with_options(&cfg, &opts)?;
                let last = traj.summaries.last().expect("at least the initial summary");
                Ok((
                    cell,
                    ReplicateOutcome {
                        replicate: rep,
                        seed: cfg.seed,
                        final_mean_overall: last.overall.mean_c,
                        final_mean_a: last.group_a.mean_c,
                        final_mean_b: last.group_b.map(|g| g.mean_c),
                        converged_at: traj.converged_at,
                    },
                ))
            })
            .collect()
    });
    let mut cells: Vec<SweepCell> = (0..n_cells)
        .map(|index| SweepCell {
            index,
            values: spec.cell_values(index),
            outcomes: Vec::with_capacity(spec.replicates),
        })
        .collect();
    for (cell, outcome) in outcomes? {
        cells[cell].outcomes.push(outcome);
    }
    for cell in &mut cells {
        cell.outcomes.sort_by_key(|o| o.replicate);
    }
    Ok(cells)
}

/// All pairs of cells adjacent along `axis` whose median final means differ
/// by more than `jump` Hz. Pairs are (lower index, higher index) in
/// row-major cell numbering.
pub fn find_bifurcation(
    spec: &SweepSpec,
    cells: &[SweepCell],
    axis: &str,
    jump: f64,
) -> Result<Vec<(usize, usize)>> {
    let which = spec
        .axes
        .iter()
        .position(|a| a.param == axis)
        .ok_or_else(|| SimError::Argument(format!("no sweep axis named \"{axis}\"")))?;
    if cells.len() != spec.n_cells() {
        return Err(SimError::Argument(format!(
            "grid has {} cells but spec defines {}",
            cells.len(),
            spec.n_cells()
        )));
    }
    let len0 = spec.axes[0].values.len();
    let len1 = if spec.axes.len() == 2 { spec.axes[1].values.len() } else { 1 };
    let mut pairs = Vec::new();
    if which == 0 {
        for i in 0..len0 - 1 {
            for j in 0..len1 {
                pairs.push((i * len1 + j, (i + 1) * len1 + j));
            }
        }
    } else {
        for i in 0..len0 {
            for j in 0..len1 - 1 {
                pairs.push((i * len1 + j, i * len1 + j + 1));
            }
        }
    }
    Ok(pairs
        .into_iter()
        .filter(|&(lo, hi)| (cells[lo].median_final() - cells[hi].median_final()).abs() > jump)
        .collect())
}
