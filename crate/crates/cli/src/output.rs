//! CSV serialization and atomic file writes. Floats are written with Rust's
//! shortest round-trip formatting; groups absent from a run produce no rows
//! (trajectories) or empty fields (sweeps).

use std::path::Path;

use actuation_core::{Agent, GenerationSummary, GroupStats, SweepCell, SweepSpec};

use crate::error::{io_err, Result};

/// Write via a temp file in the same directory plus rename, so readers never
/// observe a half-written file.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    std::fs::write(tmp, bytes).map_err(io_err(tmp))?;
    std::fs::rename(tmp, path).map_err(io_err(path))
}

fn f(x: f64) -> String {
    x.to_string()
}

fn finish(writer: csv::Writer<Vec<u8>>) -> Vec<u8> {
    writer.into_inner().expect("in-memory csv writer cannot fail")
}

fn stats_row(w: &mut csv::Writer<Vec<u8>>, generation: u32, group: &str, s: &GroupStats) {
    w.write_record([
        generation.to_string(),
        group.to_string(),
        f(s.mean_c),
        f(s.sd_c),
        f(s.q05),
        f(s.q95),
    ])
    .expect("in-memory csv writer cannot fail");
}

pub fn trajectory_csv(traj: &[GenerationSummary]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["generation", "group", "mean_c", "sd_c", "q05", "q95"]).unwrap();
    for s in traj {
        stats_row(&mut w, s.generation, "A", &s.group_a);
        if let Some(b) = &s.group_b {
            stats_row(&mut w, s.generation, "B", b);
        }
    }
    finish(w)
}

pub fn samples_csv(samples: &[(u32, Vec<Agent>)]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["generation", "group", "c"]).unwrap();
    for (generation, agents) in samples {
        for agent in agents {
            w.write_record([generation.to_string(), agent.group.to_string(), f(agent.c)])
                .unwrap();
        }
    }
    finish(w)
}

pub fn sweep_csv(spec: &SweepSpec, cells: &[SweepCell]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = spec.axes.iter().map(|a| a.param.clone()).collect();
    header.extend(
        ["replicate", "final_mean_c_overall", "final_mean_c_A", "final_mean_c_B", "converged_at"]
            .map(String::from),
    );
    w.write_record(&header).unwrap();
    for cell in cells {
        for outcome in &cell.outcomes {
            let mut row: Vec<String> = cell.values.iter().map(|(_, v)| f(*v)).collect();
            row.push(outcome.replicate.to_string());
            row.push(f(outcome.final_mean_overall));
            row.push(f(outcome.final_mean_a));
            row.push(outcome.final_mean_b.map(f).unwrap_or_default());
            row.push(outcome.converged_at.map(|t| t.to_string()).unwrap_or_default());
            w.write_record(&row).unwrap();
        }
    }
    finish(w)
}
