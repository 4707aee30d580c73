//! Model kinds, run configuration, initial conditions, and the social-weight
//! rules that distinguish the five models.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Result, SimError};
use crate::lexicon::{LexiconParams, DEFAULT_MU_A, DEFAULT_MU_I, DEFAULT_SIGMA};
use crate::population::{Agent, Group, PopulationState};
use crate::prior::{PriorFamily, PriorSpec};
use crate::rng::{group_root_seed, stream_rng, StreamKind};

/// Generations (inclusive) during which individual social weights are a
/// blend of the deterministic coarticulation ramp and uniform noise, before
/// the rank-copula assignment takes over.
pub const EARLY_WEIGHT_GENERATIONS: u32 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// Production bias only: one population, unweighted tokens.
    #[serde(rename = "m0", alias = "bias")]
    M0Bias,
    /// Two groups exchanging tokens with probabilities aProb/bProb.
    #[serde(rename = "m1", alias = "contact")]
    M1Contact,
    /// Tokens weighted by how coarticulated they sound.
    #[serde(rename = "m2", alias = "variant_weight")]
    M2VariantWeight,
    /// Cross-group tokens scaled by per-group weights.
    #[serde(rename = "m3", alias = "group_weight")]
    M3GroupWeight,
    /// Each teacher carries an individual social weight correlated with
    /// their own coarticulation.
    #[serde(rename = "m4", alias = "individual_weight")]
    M4IndividualWeight,
}

impl ModelKind {
    pub fn is_two_group(self) -> bool {
        matches!(self, ModelKind::M1Contact | ModelKind::M3GroupWeight)
    }
}

/// Normal initial distribution of `c` for one group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitDist {
    pub mean: f64,
    pub sd: f64,
}

fn d_model() -> ModelKind {
    ModelKind::M0Bias
}
fn d_m() -> usize {
    500
}
fn d_n() -> usize {
    100
}
fn d_t() -> u32 {
    100
}
fn d_zero() -> f64 {
    0.0
}
fn d_one() -> f64 {
    1.0
}
fn d_prior() -> PriorFamily {
    PriorFamily::Endpoint
}
fn d_a() -> f64 {
    0.02
}
fn d_tau() -> f64 {
    50.0
}
fn d_mu_a() -> f64 {
    DEFAULT_MU_A
}
fn d_mu_i() -> f64 {
    DEFAULT_MU_I
}
fn d_sigma() -> f64 {
    DEFAULT_SIGMA
}
fn d_init_a() -> InitDist {
    InitDist { mean: DEFAULT_MU_A - 10.0, sd: 10.0 }
}
fn d_init_b() -> InitDist {
    InitDist { mean: DEFAULT_MU_I + 10.0, sd: 10.0 }
}

/// Full parameterization of one run. Every field except `seed` has the
/// standard default, so a minimal config is just a seed. Fields irrelevant to
/// the chosen model are still validated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "d_model")]
    pub model: ModelKind,
    pub seed: u64,
    /// Population size; split in half for two-group models.
    #[serde(rename = "M", default = "d_m")]
    pub m: usize,
    /// Tokens per learner.
    #[serde(default = "d_n")]
    pub n: usize,
    /// Generation budget.
    #[serde(rename = "T", default = "d_t")]
    pub t: u32,
    /// Production bias in Hz; productions are shifted by -lambda.
    #[serde(default = "d_zero")]
    pub lambda: f64,
    #[serde(default = "d_prior")]
    pub prior: PriorFamily,
    /// Endpoint-prior strength.
    #[serde(default = "d_a")]
    pub a: f64,
    /// Gaussian-prior SD in Hz.
    #[serde(default = "d_tau")]
    pub tau: f64,
    #[serde(default = "d_mu_a")]
    pub mu_a: f64,
    #[serde(default = "d_mu_i")]
    pub mu_i: f64,
    #[serde(default = "d_sigma")]
    pub sigma_a: f64,
    #[serde(default = "d_sigma")]
    pub sigma_i: f64,
    /// Initial c distribution for group A (the only group in single-group
    /// models).
    #[serde(default = "d_init_a")]
    pub init_a: InitDist,
    #[serde(default = "d_init_b")]
    pub init_b: InitDist,
    /// Probability that a group-B learner hears a group-A teacher.
    #[serde(rename = "aProb", default = "d_zero")]
    pub a_prob: f64,
    /// Probability that a group-A learner hears a group-B teacher.
    #[serde(rename = "bProb", default = "d_zero")]
    pub b_prob: f64,
    /// Variant-weight reference: weight of a fully coarticulated token.
    #[serde(default = "d_one")]
    pub w: f64,
    /// Weight of group-A tokens for a group-B learner.
    #[serde(rename = "aWeight", default = "d_one")]
    pub a_weight: f64,
    /// Weight of group-B tokens for a group-A learner.
    #[serde(rename = "bWeight", default = "d_one")]
    pub b_weight: f64,
    /// Individual-weight rank correlation with coarticulation.
    #[serde(default = "d_zero")]
    pub rho: f64,
    /// Individual-weight ceiling.
    #[serde(default = "d_one")]
    pub w_max: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            model: d_model(),
            seed: 0,
            m: d_m(),
            n: d_n(),
            t: d_t(),
            lambda: 0.0,
            prior: d_prior(),
            a: d_a(),
            tau: d_tau(),
            mu_a: d_mu_a(),
            mu_i: d_mu_i(),
            sigma_a: d_sigma(),
            sigma_i: d_sigma(),
            init_a: d_init_a(),
            init_b: d_init_b(),
            a_prob: 0.0,
            b_prob: 0.0,
            w: 1.0,
            a_weight: 1.0,
            b_weight: 1.0,
            rho: 0.0,
            w_max: 1.0,
        }
    }
}

impl ScenarioConfig {
    pub fn lexicon(&self) -> LexiconParams {
        LexiconParams {
            mu_a: self.mu_a,
            mu_i: self.mu_i,
            sigma_a: self.sigma_a,
            sigma_i: self.sigma_i,
        }
    }

    pub fn prior_spec(&self) -> PriorSpec {
        PriorSpec { family: self.prior, a: self.a, tau: self.tau }
    }

    /// `(group A size, group B size)`.
    pub fn group_sizes(&self) -> (usize, usize) {
        if self.model.is_two_group() {
            (self.m / 2, self.m / 2)
        } else {
            (self.m, 0)
        }
    }

    /// Probability that a learner of `group` hears the other group on any
    /// one token. Zero for single-group models.
    pub fn cross_prob_for(&self, group: Group) -> f64 {
        if !self.model.is_two_group() {
            return 0.0;
        }
        match group {
            Group::A => self.b_prob,
            Group::B => self.a_prob,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(SimError::Config("M must be at least 1".into()));
        }
        if self.model.is_two_group() && (self.m < 2 || self.m % 2 != 0) {
            return Err(SimError::Config(format!(
                "two-group models need an even M of at least 2, got {}",
                self.m
            )));
        }
        if self.n == 0 {
            return Err(SimError::Config("n must be at least 1".into()));
        }
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(SimError::Config(format!(
                "lambda must be finite and nonnegative, got {}",
                self.lambda
            )));
        }
        self.lexicon().validate()?;
        self.prior_spec().validate()?;
        for (name, init) in [("init_a", self.init_a), ("init_b", self.init_b)] {
            if !init.mean.is_finite() {
                return Err(SimError::Config(format!("{name}.mean must be finite")));
            }
            if !init.sd.is_finite() || init.sd <= 0.0 {
                return Err(SimError::Config(format!(
                    "{name}.sd must be positive, got {}",
                    init.sd
                )));
            }
        }
        for (name, p) in [("aProb", self.a_prob), ("bProb", self.b_prob)] {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(SimError::Config(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        if !self.w.is_finite() || self.w < 1.0 {
            return Err(SimError::Config(format!("w must be at least 1, got {}", self.w)));
        }
        for (name, wt) in [("aWeight", self.a_weight), ("bWeight", self.b_weight)] {
            if !wt.is_finite() || !(0.0..=1.0).contains(&wt) {
                return Err(SimError::Config(format!("{name} must lie in [0, 1], got {wt}")));
            }
        }
        if !self.rho.is_finite() || !(0.0..=1.0).contains(&self.rho) {
            return Err(SimError::Config(format!("rho must lie in [0, 1], got {}", self.rho)));
        }
        if !self.w_max.is_finite() || self.w_max < 1.0 {
            return Err(SimError::Config(format!("w_max must be at least 1, got {}", self.w_max)));
        }
        Ok(())
    }

    /// Set a parameter by its config-file name; the numeric fields here are
    /// the ones sweeps may use as axes.
    pub fn set_param(&mut self, name: &str, value: f64) -> Result<()> {
        match name {
            "lambda" => self.lambda = value,
            "a" => self.a = value,
            "tau" => self.tau = value,
            "aProb" => self.a_prob = value,
            "bProb" => self.b_prob = value,
            "w" => self.w = value,
            "aWeight" => self.a_weight = value,
            "bWeight" => self.b_weight = value,
            "rho" => self.rho = value,
            "w_max" => self.w_max = value,
            other => {
                return Err(SimError::Config(format!(
                    "unknown sweep parameter \"{other}\" (expected one of lambda, a, tau, \
                     aProb, bProb, w, aWeight, bWeight, rho, w_max)"
                )));
            }
        }
        Ok(())
    }
}

/// Draw the initial population: each agent's `c` comes from its group's
/// initial normal, clamped to the search domain. Group blocks are A then B;
/// the individual-weight model also assigns generation-0 weights.
pub fn init_population(cfg: &ScenarioConfig) -> Result<PopulationState> {
    cfg.validate()?;
    let lex = cfg.lexicon();
    let (n_a, n_b) = cfg.group_sizes();
    let mut agents = Vec::with_capacity(cfg.m);
    for (group, count, init) in [(Group::A, n_a, cfg.init_a), (Group::B, n_b, cfg.init_b)] {
        let seed = group_root_seed(cfg.seed, group);
        for i in 0..count {
            let mut rng = stream_rng(seed, StreamKind::Init, 0, i as u32);
            let z: f64 = rng.sample(StandardNormal);
            let c = lex.clamp_to_domain(init.mean + init.sd * z);
            agents.push(Agent { c, group, w_m: 1.0 });
        }
    }
    if cfg.model == ModelKind::M4IndividualWeight {
        let cs: Vec<f64> = agents.iter().map(|a| a.c).collect();
        let mut wrng = stream_rng(cfg.seed, StreamKind::TeacherWeights, 0, 0);
        let ws = assign_individual_weights(&cs, cfg.rho, cfg.w_max, 0, &lex, &mut wrng);
        for (agent, w) in agents.iter_mut().zip(ws) {
            agent.w_m = w;
        }
    }
    PopulationState::new(0, agents, n_a)
}

/// Weight of one token under the variant-weight model: 1 at `mu_a`, `w` at
/// `mu_i`, linear in between, clamped outside.
pub fn variant_weight(y: f64, w: f64, lex: &LexiconParams) -> f64 {
    1.0 + (w - 1.0) * ((lex.mu_a - y) / lex.span()).clamp(0.0, 1.0)
}

/// Weight of one token under the group-weight model: own-group tokens count
/// fully; cross-group tokens are scaled by the sending group's weight.
pub fn group_weight(teacher_group: Group, learner_group: Group, a_weight: f64, b_weight: f64) -> f64 {
    if teacher_group == learner_group {
        1.0
    } else {
        match teacher_group {
            Group::A => a_weight,
            Group::B => b_weight,
        }
    }
}

/// Individual social weights for a whole generation of teachers.
///
/// After the early generations, weights follow a Gaussian copula over the
/// coarticulation ranks: the score `mu_a - c_m` is rank-transformed to
/// `v_m`, `z'_m = rho * inverse_cdf(v_m) + sqrt(1 - rho^2) * noise`, and
/// `w_m = 1 + (w_max - 1) * cdf(z'_m)`, giving rank correlation controlled
/// by `rho` with every weight inside `[1, w_max]`. During the first
/// [`EARLY_WEIGHT_GENERATIONS`] generations, weights are instead an even
/// blend of the deterministic coarticulation ramp and a uniform draw from
/// `[1, w_max]`. Ties in `c` get distinct ranks in index order.
pub fn assign_individual_weights(
    c_values: &[f64],
    rho: f64,
    w_max: f64,
    generation: u32,
    lex: &LexiconParams,
    rng: &mut impl Rng,
) -> Vec<f64> {
    let m = c_values.len();
    if generation <= EARLY_WEIGHT_GENERATIONS {
        return c_values
            .iter()
            .map(|&c| {
                let ramp = 1.0 + (w_max - 1.0) * ((lex.mu_a - c) / lex.span()).clamp(0.0, 1.0);
                let noise = rng.random_range(1.0..=w_max);
                0.5 * ramp + 0.5 * noise
            })
            .collect();
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        let si = lex.mu_a - c_values[i];
        let sj = lex.mu_a - c_values[j];
        si.partial_cmp(&sj).expect("c values are finite")
    });
    let mut rank = vec![0usize; m];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let std_normal = Normal::new(0.0, 1.0).expect("standard normal");
    let noise_scale = (1.0 - rho * rho).max(0.0).sqrt();
    (0..m)
        .map(|i| {
            let v = (rank[i] as f64 + 0.5) / m as f64;
            let z = std_normal.inverse_cdf(v);
            let noise: f64 = rng.sample(StandardNormal);
            1.0 + (w_max - 1.0) * std_normal.cdf(rho * z + noise_scale * noise)
        })
        .collect()
}

/// How each model turns a token into a weight.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRule {
    Uniform,
    Variant { w: f64, lex: LexiconParams },
    Group { a_weight: f64, b_weight: f64 },
    Individual,
}

impl WeightRule {
    pub fn weight(&self, y: f64, teacher: &Agent, learner_group: Group) -> f64 {
        match self {
            WeightRule::Uniform => 1.0,
            WeightRule::Variant { w, lex } => variant_weight(y, *w, lex),
            WeightRule::Group { a_weight, b_weight } => {
                group_weight(teacher.group, learner_group, *a_weight, *b_weight)
            }
            WeightRule::Individual => teacher.w_m,
        }
    }
}

/// Dispatch over model kinds; infallible because the kind is a closed enum
/// (unknown kinds are rejected at config parse time).
pub fn build_token_weight_rule(cfg: &ScenarioConfig) -> WeightRule {
    match cfg.model {
        ModelKind::M0Bias | ModelKind::M1Contact => WeightRule::Uniform,
        ModelKind::M2VariantWeight => WeightRule::Variant { w: cfg.w, lex: cfg.lexicon() },
        ModelKind::M3GroupWeight => {
            WeightRule::Group { a_weight: cfg.a_weight, b_weight: cfg.b_weight }
        }
        ModelKind::M4IndividualWeight => WeightRule::Individual,
    }
}
