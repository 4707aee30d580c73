//! Weighted MAP estimation of the contextual-variant mean `c`.
//!
//! Learners see a batch of (F1, weight) tokens and pick the `c` maximizing
//! weighted Gaussian log likelihood plus the prior. With the endpoint prior
//! the posterior can be bimodal (an interior mode near the data mean and a
//! spike against a domain edge), so the maximizer scans a fixed grid first
//! and only then refines locally.

use crate::error::{Result, SimError};
use crate::lexicon::LexiconParams;
use crate::prior::{log_density_unchecked, prior_log_density, PriorFamily, PriorSpec};

/// Coarse grid points scanned across the domain before refinement.
pub const GRID_POINTS: usize = 2048;

/// Bracket width at which golden-section refinement stops, in Hz.
pub const MAP_TOL_HZ: f64 = 1e-3;

/// One learner's training data: `(y, w)` token pairs plus the production SD
/// assumed by the learner.
///
/// Weights are ordinarily at least 1. The group-weight model scales
/// cross-group tokens by factors down to 0, so construction accepts any
/// finite nonnegative weights as long as their sum is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenBatch {
    tokens: Vec<(f64, f64)>,
    sigma: f64,
    w_sum: f64,
    w_mean: f64,
    spread: f64,
}

impl TokenBatch {
    pub fn new(tokens: Vec<(f64, f64)>, sigma: f64) -> Result<Self> {
        if tokens.is_empty() {
            return Err(SimError::Argument("token batch is empty".into()));
        }
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(SimError::Argument(format!("sigma must be positive, got {sigma}")));
        }
        let mut w_sum = 0.0;
        let mut wy_sum = 0.0;
        for &(y, w) in &tokens {
            if !y.is_finite() {
                return Err(SimError::Argument(format!("token value must be finite, got {y}")));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(SimError::Argument(format!(
                    "token weight must be finite and nonnegative, got {w}"
                )));
            }
            w_sum += w;
            wy_sum += w * y;
        }
        if w_sum <= 0.0 {
            return Err(SimError::Argument("all token weights are zero".into()));
        }
        let w_mean = wy_sum / w_sum;
        let spread: f64 = tokens.iter().map(|&(y, w)| w * (y - w_mean) * (y - w_mean)).sum();
        Ok(TokenBatch { tokens, sigma, w_sum, w_mean, spread })
    }

    pub fn tokens(&self) -> &[(f64, f64)] {
        &self.tokens
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn weighted_mean(&self) -> f64 {
        self.w_mean
    }

    pub fn weight_sum(&self) -> f64 {
        self.w_sum
    }
}

/// `-Σ w_i (y_i - c)^2 / (2 sigma^2) + log prior(c)`, computed by direct
/// summation. Batches are validated at construction, so the only failure mode
/// is `c` outside the prior's domain.
pub fn posterior_log_density(
    c: f64,
    batch: &TokenBatch,
    prior: &PriorSpec,
    lex: &LexiconParams,
) -> Result<f64> {
    let p = prior_log_density(c, prior, lex)?;
    let inv = 1.0 / (2.0 * batch.sigma * batch.sigma);
    let quad: f64 = batch.tokens.iter().map(|&(y, w)| w * (y - c) * (y - c)).sum();
    Ok(-quad * inv + p)
}

/// Global maximizer of the posterior over the clamped domain.
///
/// Construction validates the prior and lexicon and caches the prior's grid
/// values, so per-batch estimation touches the prior formula only inside the
/// refinement brackets.
#[derive(Debug, Clone)]
pub struct MapSolver {
    prior: PriorSpec,
    lex: LexiconParams,
    lo: f64,
    hi: f64,
    grid: Vec<f64>,
    grid_prior: Vec<f64>,
}

impl MapSolver {
    pub fn new(prior: PriorSpec, lex: LexiconParams) -> Result<Self> {
        prior.validate()?;
        lex.validate()?;
        let (lo, hi) = lex.domain();
        let step = (hi - lo) / (GRID_POINTS - 1) as f64;
        let grid: Vec<f64> = (0..GRID_POINTS)
            .map(|k| if k == GRID_POINTS - 1 { hi } else { lo + k as f64 * step })
            .collect();
        let grid_prior = grid.iter().map(|&c| log_density_unchecked(c, &prior, &lex)).collect();
        Ok(MapSolver { prior, lex, lo, hi, grid, grid_prior })
    }

    pub fn prior(&self) -> &PriorSpec {
        &self.prior
    }

    pub fn lexicon(&self) -> &LexiconParams {
        &self.lex
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// MAP estimate for one batch, to within [`MAP_TOL_HZ`].
    pub fn estimate(&self, batch: &TokenBatch) -> f64 {
        // With a flat prior the posterior is a single weighted quadratic, so
        // the maximizer is the weighted mean itself, clamped to the domain.
        if self.prior.family == PriorFamily::Flat {
            return batch.weighted_mean().clamp(self.lo, self.hi);
        }

        // The posterior equals shape(c) up to a constant, which is all the
        // argmax needs.
        let scale = batch.weight_sum() / (2.0 * batch.sigma() * batch.sigma());
        let m = batch.weighted_mean();
        let shape =
            |c: f64| log_density_unchecked(c, &self.prior, &self.lex) - scale * (c - m) * (c - m);

        let mut best_k = 0;
        let mut best_v = f64::NEG_INFINITY;
        for k in 0..GRID_POINTS {
            let d = self.grid[k] - m;
            let v = self.grid_prior[k] - scale * d * d;
            if v > best_v {
                best_v = v;
                best_k = k;
            }
        }

        let bracket_lo = self.grid[best_k.saturating_sub(1)];
        let bracket_hi = self.grid[(best_k + 1).min(GRID_POINTS - 1)];
        let mut best = golden_max(&shape, bracket_lo, bracket_hi, MAP_TOL_HZ);

        // The endpoint prior's edge spikes can hide a competing mode whose
        // grid sample narrowly loses the coarse scan; refining both edge
        // cells as well makes the basin choice exact.
        if self.prior.family == PriorFamily::Endpoint && GRID_POINTS >= 2 {
            for (a, b) in [
                (self.grid[0], self.grid[1]),
                (self.grid[GRID_POINTS - 2], self.grid[GRID_POINTS - 1]),
            ] {
                let cand = golden_max(&shape, a, b, MAP_TOL_HZ);
                if cand.1 > best.1 {
                    best = cand;
                }
            }
        }
        best.0
    }
}

/// Convenience wrapper building a one-shot solver.
pub fn map_estimate(batch: &TokenBatch, prior: &PriorSpec, lex: &LexiconParams) -> Result<f64> {
    Ok(MapSolver::new(*prior, *lex)?.estimate(batch))
}

/// Golden-section maximization on `[a, b]`, also comparing the bracket
/// endpoints (the posterior's edge spikes peak exactly on the boundary).
/// Returns the best `(x, f(x))` seen.
fn golden_max(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut best = (a, f(a));
    let fb = f(b);
    if fb > best.1 {
        best = (b, fb);
    }
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        let (x, v) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}
