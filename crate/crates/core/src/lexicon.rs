//! Fixed vowel-category parameters shared by every agent.
//!
//! The two anchor categories /a/ and /i/ never change; only the contextual
//! variant's mean `c` evolves, constrained to lie between them.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Margin in Hz by which the search domain for `c` stays inside
/// `(mu_i, mu_a)`. The endpoint prior diverges at the category means, so all
/// estimation is restricted to `[mu_i + margin, mu_a - margin]`.
pub const DOMAIN_MARGIN_HZ: f64 = 0.5;

pub const DEFAULT_MU_A: f64 = 730.0;
pub const DEFAULT_MU_I: f64 = 530.0;
pub const DEFAULT_SIGMA: f64 = 50.0;

/// Category means and spreads in Hz of F1. `mu_a` is the F1 mean of /a/,
/// `mu_i` the F1 mean of /i/; lower F1 is more /i/-like.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LexiconParams {
    pub mu_a: f64,
    pub mu_i: f64,
    /// Production SD of /a/ and of the contextual variant.
    pub sigma_a: f64,
    pub sigma_i: f64,
}

impl Default for LexiconParams {
    fn default() -> Self {
        LexiconParams {
            mu_a: DEFAULT_MU_A,
            mu_i: DEFAULT_MU_I,
            sigma_a: DEFAULT_SIGMA,
            sigma_i: DEFAULT_SIGMA,
        }
    }
}

impl LexiconParams {
    pub fn new(mu_a: f64, mu_i: f64, sigma_a: f64, sigma_i: f64) -> Result<Self> {
        let lex = LexiconParams { mu_a, mu_i, sigma_a, sigma_i };
        lex.validate()?;
        Ok(lex)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mu_a", self.mu_a),
            ("mu_i", self.mu_i),
            ("sigma_a", self.sigma_a),
            ("sigma_i", self.sigma_i),
        ] {
            if !v.is_finite() {
                return Err(SimError::Config(format!("{name} must be finite, got {v}")));
            }
        }
        if self.mu_i >= self.mu_a {
            return Err(SimError::Config(format!(
                "mu_i ({}) must be below mu_a ({})",
                self.mu_i, self.mu_a
            )));
        }
        if self.mu_a - self.mu_i <= 2.0 * DOMAIN_MARGIN_HZ {
            return Err(SimError::Config(format!(
                "mu_a - mu_i ({}) leaves no room inside the {} Hz domain margin",
                self.mu_a - self.mu_i,
                DOMAIN_MARGIN_HZ
            )));
        }
        if self.sigma_a <= 0.0 {
            return Err(SimError::Config(format!("sigma_a must be positive, got {}", self.sigma_a)));
        }
        if self.sigma_i <= 0.0 {
            return Err(SimError::Config(format!("sigma_i must be positive, got {}", self.sigma_i)));
        }
        Ok(())
    }

    /// Inclusive search interval for `c`.
    pub fn domain(&self) -> (f64, f64) {
        (self.mu_i + DOMAIN_MARGIN_HZ, self.mu_a - DOMAIN_MARGIN_HZ)
    }

    pub fn span(&self) -> f64 {
        self.mu_a - self.mu_i
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.mu_a + self.mu_i)
    }

    pub fn in_domain(&self, c: f64) -> bool {
        let (lo, hi) = self.domain();
        c >= lo && c <= hi
    }

    pub fn clamp_to_domain(&self, c: f64) -> f64 {
        let (lo, hi) = self.domain();
        c.clamp(lo, hi)
    }
}
