//! Agents, population snapshots, and per-generation summary statistics.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    A,
    B,
}

impl Group {
    pub fn other(self) -> Group {
        match self {
            Group::A => Group::B,
            Group::B => Group::A,
        }
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Group::A => f.write_str("A"),
            Group::B => f.write_str("B"),
        }
    }
}

/// One speaker/learner: the mean of their contextual variant, their group,
/// and their individual social weight (1 outside the individual-weight
/// model).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Agent {
    pub c: f64,
    pub group: Group,
    pub w_m: f64,
}

/// Immutable snapshot of one generation. Agents are stored with all of group
/// A first, then group B, so group membership is a pair of slices.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationState {
    generation: u32,
    agents: Vec<Agent>,
    n_a: usize,
}

impl PopulationState {
    pub fn new(generation: u32, agents: Vec<Agent>, n_a: usize) -> Result<Self> {
        if agents.is_empty() {
            return Err(SimError::Argument("population must be nonempty".into()));
        }
        if n_a == 0 || n_a > agents.len() {
            return Err(SimError::Argument(format!(
                "group A block size {n_a} invalid for population of {}",
                agents.len()
            )));
        }
        let block_ok = agents[..n_a].iter().all(|a| a.group == Group::A)
            && agents[n_a..].iter().all(|a| a.group == Group::B);
        if !block_ok {
            return Err(SimError::Argument("agents must be grouped A-block then B-block".into()));
        }
        Ok(PopulationState { generation, agents, n_a })
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn size(&self) -> usize {
        self.agents.len()
    }

    pub fn is_two_group(&self) -> bool {
        self.n_a < self.agents.len()
    }

    pub fn group(&self, g: Group) -> &[Agent] {
        match g {
            Group::A => &self.agents[..self.n_a],
            Group::B => &self.agents[self.n_a..],
        }
    }

    /// `(own, other)` agent slices from a learner's point of view.
    pub fn group_slices(&self, learner: Group) -> (&[Agent], &[Agent]) {
        (self.group(learner), self.group(learner.other()))
    }
}

/// Summary statistics of one set of `c` values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupStats {
    pub mean_c: f64,
    pub sd_c: f64,
    pub q05: f64,
    pub q95: f64,
    pub count: usize,
}

impl GroupStats {
    pub fn from_values(values: &[f64]) -> GroupStats {
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("c values are finite"));
        GroupStats {
            mean_c: mean(values),
            sd_c: sample_sd(values),
            q05: quantile(&sorted, 0.05),
            q95: quantile(&sorted, 0.95),
            count: values.len(),
        }
    }
}

/// Per-generation statistics: the whole population plus each group present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationSummary {
    pub generation: u32,
    pub overall: GroupStats,
    pub group_a: GroupStats,
    pub group_b: Option<GroupStats>,
}

pub fn summarize(pop: &PopulationState) -> GenerationSummary {
    let all: Vec<f64> = pop.agents().iter().map(|a| a.c).collect();
    let a: Vec<f64> = pop.group(Group::A).iter().map(|a| a.c).collect();
    let b: Vec<f64> = pop.group(Group::B).iter().map(|a| a.c).collect();
    GenerationSummary {
        generation: pop.generation(),
        overall: GroupStats::from_values(&all),
        group_a: GroupStats::from_values(&a),
        group_b: if b.is_empty() { None } else { Some(GroupStats::from_values(&b)) },
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two
/// values.
pub fn sample_sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// Linear-interpolation quantile (R type 7) of already-sorted data.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&p));
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}
