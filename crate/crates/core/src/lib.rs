//! Simulation core for population-level vowel change.
//!
//! A population of agents each carries a phoneme target `c` in F1 space.
//! Every generation, fresh learners draw productions from randomly chosen
//! teachers and fit their own target by maximum a posteriori estimation
//! under a configurable prior. The crate provides the estimator
//! ([`MapSolver`]), the generation loop ([`run_trajectory`],
//! [`run_with_options`]), model variants covering cross-group contact and
//! three kinds of weighted transmission ([`ModelKind`]), and parameter-grid
//! sweeps with stable-state detection ([`run_sweep`], [`detect_stable`]).

pub mod engine;
pub mod error;
pub mod learner;
pub mod lexicon;
pub mod population;
pub mod prior;
pub mod rng;
pub mod scenarios;
pub mod sweep;

pub use engine::{
    learn_one, produce_token, run_trajectory, run_with_options, sample_teacher, step_generation,
    RunOptions, StableRule, Trajectory,
};
pub use error::{Result, SimError};
pub use learner::{
    map_estimate, posterior_log_density, MapSolver, TokenBatch, GRID_POINTS, MAP_TOL_HZ,
};
pub use lexicon::{
    LexiconParams, DEFAULT_MU_A, DEFAULT_MU_I, DEFAULT_SIGMA, DOMAIN_MARGIN_HZ,
};
pub use population::{
    summarize, Agent, GenerationSummary, Group, GroupStats, PopulationState,
};
pub use prior::{prior_log_density, PriorFamily, PriorSpec};
pub use rng::{derive_run_seed, group_root_seed, stream_rng, StreamKind, GROUP_B_SEED_SALT};
pub use scenarios::{
    assign_individual_weights, build_token_weight_rule, group_weight, init_population,
    variant_weight, InitDist, ModelKind, ScenarioConfig, WeightRule, EARLY_WEIGHT_GENERATIONS,
};
pub use sweep::{
    detect_stable, find_bifurcation, run_sweep, Axis, ReplicateOutcome, SweepCell, SweepSpec,
};
