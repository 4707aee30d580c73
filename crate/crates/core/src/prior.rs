//! Priors over the contextual-variant mean `c`.
//!
//! The interesting one is the endpoint (categoricity) prior: a U-shaped
//! density that prefers `c` near either category mean, i.e. either no
//! coarticulation or full coarticulation, with strength growing as `a`
//! shrinks below 1.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::lexicon::LexiconParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PriorFamily {
    Flat,
    Gaussian,
    Endpoint,
}

/// Which bias a learner brings to estimating `c`.
///
/// `a` only matters for the endpoint family, `tau` only for the gaussian
/// family; both are carried (and validated) regardless so configs can switch
/// family without losing values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    pub family: PriorFamily,
    /// Endpoint-bias strength; smaller is stronger, 1 is flat.
    pub a: f64,
    /// SD in Hz of the gaussian family centered on `mu_a`.
    pub tau: f64,
}

impl PriorSpec {
    pub fn flat() -> Self {
        PriorSpec { family: PriorFamily::Flat, a: 1.0, tau: 1.0 }
    }

    pub fn endpoint(a: f64) -> Self {
        PriorSpec { family: PriorFamily::Endpoint, a, tau: 1.0 }
    }

    pub fn gaussian(tau: f64) -> Self {
        PriorSpec { family: PriorFamily::Gaussian, a: 1.0, tau }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || self.a <= 0.0 {
            return Err(SimError::Config(format!("a must be positive and finite, got {}", self.a)));
        }
        if !self.tau.is_finite() || self.tau <= 0.0 {
            return Err(SimError::Config(format!(
                "tau must be positive and finite, got {}",
                self.tau
            )));
        }
        Ok(())
    }
}

/// Unnormalized log density of the prior at `c`.
///
/// Flat is 0 everywhere; gaussian is `-(c - mu_a)^2 / (2 tau^2)`; endpoint is
/// `(a - 1) * [ln u + ln(1 - u)]` with `u = (c - mu_i) / (mu_a - mu_i)`.
/// The endpoint density diverges at the category means, so it is only defined
/// on the clamped domain and anything outside is a domain error.
pub fn prior_log_density(c: f64, prior: &PriorSpec, lex: &LexiconParams) -> Result<f64> {
    if !c.is_finite() {
        return Err(SimError::Domain(format!("c must be finite, got {c}")));
    }
    if prior.family == PriorFamily::Endpoint && !lex.in_domain(c) {
        let (lo, hi) = lex.domain();
        return Err(SimError::Domain(format!(
            "c = {c} outside the clamped domain [{lo}, {hi}] for the endpoint prior"
        )));
    }
    Ok(log_density_unchecked(c, prior, lex))
}

/// Same density without the domain checks; callers guarantee `c` is finite
/// and, for the endpoint family, inside the clamped domain.
pub(crate) fn log_density_unchecked(c: f64, prior: &PriorSpec, lex: &LexiconParams) -> f64 {
    match prior.family {
        PriorFamily::Flat => 0.0,
        PriorFamily::Gaussian => {
            let d = c - lex.mu_a;
            -d * d / (2.0 * prior.tau * prior.tau)
        }
        PriorFamily::Endpoint => {
            let u = (c - lex.mu_i) / lex.span();
            (prior.a - 1.0) * (u.ln() + (1.0 - u).ln())
        }
    }
}
