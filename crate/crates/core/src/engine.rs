//! Token production, teacher sampling, and generation-by-generation
//! evolution of the population.
//!
//! Every learner in generation t+1 draws n tokens, each from an
//! independently chosen random teacher of generation t, and estimates its
//! own `c` by weighted MAP. The generation boundary is a hard barrier:
//! learners only ever see the frozen previous generation.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Result, SimError};
use crate::learner::{MapSolver, TokenBatch};
use crate::population::{summarize, Agent, GenerationSummary, Group, PopulationState};
use crate::rng::{group_root_seed, stream_rng, StreamKind};
use crate::scenarios::{
    assign_individual_weights, build_token_weight_rule, init_population, ModelKind,
    ScenarioConfig,
};
use crate::sweep::stable_at;

/// One draw from a teacher's production distribution `N(c - lambda,
/// sigma_a^2)`: the production bias shifts every token toward the
/// coarticulated end.
pub fn produce_token(teacher: &Agent, lambda: f64, sigma_a: f64, rng: &mut impl Rng) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    teacher.c - lambda + sigma_a * z
}

/// Teacher for one token: with probability `cross_prob` a uniform draw (with
/// replacement) from the other group, otherwise from the learner's own
/// group.
///
/// The Bernoulli is drawn even when `cross_prob` is 0 so that contact and
/// no-contact runs consume identical stream positions; that is what makes a
/// no-contact group replay exactly as an isolated single-group run.
pub fn sample_teacher<'p>(
    pop: &'p PopulationState,
    learner_group: Group,
    cross_prob: f64,
    rng: &mut impl Rng,
) -> Result<&'p Agent> {
    let (own, other) = pop.group_slices(learner_group);
    if cross_prob > 0.0 && other.is_empty() {
        return Err(SimError::Config(format!(
            "cross-group probability {cross_prob} set but group {} is empty",
            learner_group.other()
        )));
    }
    if own.is_empty() {
        return Err(SimError::Argument(format!(
            "no agents in learner group {learner_group}"
        )));
    }
    let cross = rng.random_bool(cross_prob);
    let pool = if cross { other } else { own };
    Ok(&pool[rng.random_range(0..pool.len())])
}

/// One learner's outcome: draw n (teacher, token) pairs, attach the model's
/// weights, and MAP-estimate `c`. Builds a throwaway solver; inside a run
/// use [`learn_one_with`] and a shared solver.
pub fn learn_one(
    pop: &PopulationState,
    learner_group: Group,
    cfg: &ScenarioConfig,
    rng: &mut impl Rng,
) -> Result<f64> {
    let solver = MapSolver::new(cfg.prior_spec(), cfg.lexicon())?;
    learn_one_with(&solver, pop, learner_group, cfg, rng)
}

pub fn learn_one_with(
    solver: &MapSolver,
    pop: &PopulationState,
    learner_group: Group,
    cfg: &ScenarioConfig,
    rng: &mut impl Rng,
) -> Result<f64> {
    let rule = build_token_weight_rule(cfg);
    let cross_prob = cfg.cross_prob_for(learner_group);
    let mut tokens = Vec::with_capacity(cfg.n);
    for _ in 0..cfg.n {
        let teacher = sample_teacher(pop, learner_group, cross_prob, rng)?;
        let y = produce_token(teacher, cfg.lambda, cfg.sigma_a, rng);
        let w = rule.weight(y, teacher, learner_group);
        tokens.push((y, w));
    }
    let batch = TokenBatch::new(tokens, cfg.sigma_a)?;
    Ok(solver.estimate(&batch))
}

/// Produce generation t+1 from generation t. Group sizes and tags are
/// preserved; each learner runs on its own (generation, index) random
/// stream, so results do not depend on iteration order. The
/// individual-weight model assigns fresh teacher weights to the new
/// generation.
pub fn step_generation(
    pop: &PopulationState,
    cfg: &ScenarioConfig,
    solver: &MapSolver,
    root_seed: u64,
) -> Result<PopulationState> {
    let next_gen = pop.generation() + 1;
    let n_a = pop.group(Group::A).len();
    let mut agents = Vec::with_capacity(pop.size());
    for group in [Group::A, Group::B] {
        let count = pop.group(group).len();
        let seed = group_root_seed(root_seed, group);
        for i in 0..count {
            let mut rng = stream_rng(seed, StreamKind::Learner, next_gen, i as u32);
            let c = learn_one_with(solver, pop, group, cfg, &mut rng)?;
            agents.push(Agent { c, group, w_m: 1.0 });
        }
    }
    if cfg.model == ModelKind::M4IndividualWeight {
        let cs: Vec<f64> = agents.iter().map(|a| a.c).collect();
        let mut wrng = stream_rng(root_seed, StreamKind::TeacherWeights, next_gen, 0);
        let ws = assign_individual_weights(&cs, cfg.rho, cfg.w_max, next_gen, &cfg.lexicon(), &mut wrng);
        for (agent, w) in agents.iter_mut().zip(ws) {
            agent.w_m = w;
        }
    }
    PopulationState::new(next_gen, agents, n_a)
}

/// Early-stop rule: finish once the overall mean has moved less than
/// `delta` Hz over the last `window` generations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableRule {
    pub window: u32,
    pub delta: f64,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Record full per-agent states at generation 0 and every k-th
    /// generation thereafter.
    pub sample_every: Option<u32>,
    /// Early-stop on stability; used by sweeps.
    pub stop_when_stable: Option<StableRule>,
    /// Generation cap overriding the config's T.
    pub t_max: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    /// One summary per simulated generation, starting at generation 0.
    pub summaries: Vec<GenerationSummary>,
    /// (generation, agents) snapshots when sampling was requested.
    pub samples: Vec<(u32, Vec<Agent>)>,
    /// Generation at which the stable-stop rule fired, if it did.
    pub converged_at: Option<u32>,
}

/// Run a whole scenario for its configured generation budget. Deterministic
/// in (config, seed).
pub fn run_trajectory(cfg: &ScenarioConfig) -> Result<Vec<GenerationSummary>> {
    Ok(run_with_options(cfg, &RunOptions::default())?.summaries)
}

pub fn run_with_options(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<Trajectory> {
    cfg.validate()?;
    if let Some(rule) = opts.stop_when_stable {
        if rule.window == 0 {
            return Err(SimError::Config("stability window must be at least 1".into()));
        }
        if !rule.delta.is_finite() || rule.delta <= 0.0 {
            return Err(SimError::Config(format!(
                "stability delta must be positive, got {}",
                rule.delta
            )));
        }
    }
    if let Some(k) = opts.sample_every {
        if k == 0 {
            return Err(SimError::Config("sample_every must be at least 1".into()));
        }
    }
    let solver = MapSolver::new(cfg.prior_spec(), cfg.lexicon())?;
    let t_end = opts.t_max.unwrap_or(cfg.t);

    let mut pop = init_population(cfg)?;
    let mut summaries = Vec::with_capacity(t_end as usize + 1);
    summaries.push(summarize(&pop));
    let mut samples = Vec::new();
    if opts.sample_every.is_some() {
        samples.push((0, pop.agents().to_vec()));
    }
    let mut converged_at = None;
    for t in 1..=t_end {
        pop = step_generation(&pop, cfg, &solver, cfg.seed)?;
        summaries.push(summarize(&pop));
        if let Some(k) = opts.sample_every {
            if t % k == 0 {
                samples.push((t, pop.agents().to_vec()));
            }
        }
        if let Some(rule) = opts.stop_when_stable {
            if stable_at(&summaries, t as usize, rule.window, rule.delta) {
                converged_at = Some(t);
                break;
            }
        }
    }
    Ok(Trajectory { summaries, samples, converged_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prior::PriorFamily;

    fn flat_cfg() -> ScenarioConfig {
        ScenarioConfig {
            seed: 42,
            prior: PriorFamily::Flat,
            lambda: 0.0,
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn produce_token_lambda_coupling() {
        // identical streams, lambda 2 vs 0: every draw differs by exactly -2
        let teacher = Agent { c: 720.0, group: Group::A, w_m: 1.0 };
        let mut r1 = stream_rng(5, StreamKind::Learner, 1, 0);
        let mut r2 = stream_rng(5, StreamKind::Learner, 1, 0);
        for _ in 0..100 {
            let y2 = produce_token(&teacher, 2.0, 50.0, &mut r1);
            let y0 = produce_token(&teacher, 0.0, 50.0, &mut r2);
            assert_eq!(y2 - y0, -2.0);
        }
    }

    #[test]
    fn produce_token_degenerate_sigma() {
        let teacher = Agent { c: 651.0, group: Group::A, w_m: 1.0 };
        let mut rng = stream_rng(5, StreamKind::Learner, 1, 0);
        let y = produce_token(&teacher, 0.0, 1e-12, &mut rng);
        assert!((y - 651.0).abs() < 1e-9);
    }

    #[test]
    fn sample_teacher_respects_cross_prob_extremes() {
        let agents = vec![
            Agent { c: 700.0, group: Group::A, w_m: 1.0 },
            Agent { c: 710.0, group: Group::A, w_m: 1.0 },
            Agent { c: 540.0, group: Group::B, w_m: 1.0 },
        ];
        let pop = PopulationState::new(0, agents, 2).unwrap();
        let mut rng = stream_rng(9, StreamKind::Learner, 1, 0);
        for _ in 0..50 {
            let t = sample_teacher(&pop, Group::A, 0.0, &mut rng).unwrap();
            assert_eq!(t.group, Group::A);
            let t = sample_teacher(&pop, Group::A, 1.0, &mut rng).unwrap();
            assert_eq!(t.group, Group::B);
        }
    }

    #[test]
    fn sample_teacher_cross_fraction() {
        let mut agents = vec![Agent { c: 700.0, group: Group::A, w_m: 1.0 }; 50];
        agents.extend(vec![Agent { c: 540.0, group: Group::B, w_m: 1.0 }; 50]);
        let pop = PopulationState::new(0, agents, 50).unwrap();
        let mut rng = stream_rng(9, StreamKind::Learner, 2, 0);
        let n = 100_000;
        let mut cross = 0usize;
        for _ in 0..n {
            if sample_teacher(&pop, Group::A, 0.05, &mut rng).unwrap().group == Group::B {
                cross += 1;
            }
        }
        let frac = cross as f64 / n as f64;
        assert!((frac - 0.05).abs() < 0.005, "cross fraction {frac}");
    }

    #[test]
    fn sample_teacher_missing_other_group_errors() {
        let agents = vec![Agent { c: 700.0, group: Group::A, w_m: 1.0 }; 4];
        let pop = PopulationState::new(0, agents, 4).unwrap();
        let mut rng = stream_rng(9, StreamKind::Learner, 1, 0);
        assert!(sample_teacher(&pop, Group::A, 0.1, &mut rng).is_err());
        assert!(sample_teacher(&pop, Group::A, 0.0, &mut rng).is_ok());
    }

    #[test]
    fn learn_one_single_token_flat_returns_token() {
        let agents = vec![Agent { c: 650.0, group: Group::A, w_m: 1.0 }; 3];
        let pop = PopulationState::new(0, agents, 3).unwrap();
        let cfg = ScenarioConfig { n: 1, ..flat_cfg() };
        let mut rng = stream_rng(3, StreamKind::Learner, 1, 0);
        let c = learn_one(&pop, Group::A, &cfg, &mut rng).unwrap();
        let mut replay = stream_rng(3, StreamKind::Learner, 1, 0);
        let _: bool = replay.random_bool(0.0);
        let _ = replay.random_range(0..3usize);
        let teacher = Agent { c: 650.0, group: Group::A, w_m: 1.0 };
        let y = produce_token(&teacher, 0.0, 50.0, &mut replay);
        assert_eq!(c, y.clamp(530.5, 729.5));
    }

    #[test]
    fn step_preserves_sizes_and_groups() {
        let cfg = ScenarioConfig {
            model: ModelKind::M1Contact,
            m: 20,
            n: 10,
            seed: 11,
            prior: PriorFamily::Flat,
            ..ScenarioConfig::default()
        };
        let solver = MapSolver::new(cfg.prior_spec(), cfg.lexicon()).unwrap();
        let pop = init_population(&cfg).unwrap();
        let next = step_generation(&pop, &cfg, &solver, cfg.seed).unwrap();
        assert_eq!(next.size(), 20);
        assert_eq!(next.group(Group::A).len(), 10);
        assert_eq!(next.group(Group::B).len(), 10);
        assert_eq!(next.generation(), 1);
    }

    #[test]
    fn run_zero_generations_returns_initial_summary() {
        let cfg = ScenarioConfig { t: 0, ..flat_cfg() };
        let summaries = run_trajectory(&cfg).unwrap();
        assert_eq!(summaries.len(), 1);
        assert_eq!(summaries[0].generation, 0);
    }

    #[test]
    fn trajectories_are_deterministic() {
        let cfg = ScenarioConfig { m: 50, n: 20, t: 5, ..flat_cfg() };
        let a = run_trajectory(&cfg).unwrap();
        let b = run_trajectory(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn learned_values_stay_in_domain() {
        let cfg = ScenarioConfig {
            m: 60,
            n: 5,
            t: 4,
            lambda: 4.0,
            a: 0.01,
            seed: 77,
            ..ScenarioConfig::default()
        };
        let opts = RunOptions { sample_every: Some(1), ..RunOptions::default() };
        let traj = run_with_options(&cfg, &opts).unwrap();
        for (_, agents) in &traj.samples {
            for agent in agents {
                assert!(agent.c >= 530.5 && agent.c <= 729.5, "c {}", agent.c);
            }
        }
    }

    #[test]
    fn sampling_records_requested_generations() {
        let cfg = ScenarioConfig { m: 30, n: 5, t: 6, ..flat_cfg() };
        let opts = RunOptions { sample_every: Some(3), ..RunOptions::default() };
        let traj = run_with_options(&cfg, &opts).unwrap();
        let gens: Vec<u32> = traj.samples.iter().map(|(t, _)| *t).collect();
        assert_eq!(gens, vec![0, 3, 6]);
    }

    #[test]
    fn stable_stop_halts_early() {
        // tiny sd and no bias: the flat-prior population barely moves, so a
        // loose rule fires as soon as the window is full
        let cfg = ScenarioConfig { m: 40, n: 50, t: 500, ..flat_cfg() };
        let opts = RunOptions {
            stop_when_stable: Some(StableRule { window: 5, delta: 10.0 }),
            ..RunOptions::default()
        };
        let traj = run_with_options(&cfg, &opts).unwrap();
        assert_eq!(traj.converged_at, Some(5));
        assert_eq!(traj.summaries.len(), 6);
    }
}
