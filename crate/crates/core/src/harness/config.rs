use serde::{Deserialize, Serialize};

use crate::error::{MeanError, Result};

/// Settings shared by every property check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: u64,
    /// Largest index-set size drawn by the generators.
    pub max_n: usize,
    /// Relative tolerance for equalities.
    pub rel_tol: f64,
    /// Additive slack for inequalities, scaled by `max(1, |lhs|, |rhs|)`.
    pub slack: f64,
    /// Restrict generators to strictly positive weights and surjective maps.
    pub positive_weights_only: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 42,
            trials: 1000,
            max_n: 8,
            rel_tol: 1e-9,
            slack: 1e-12,
            positive_weights_only: false,
        }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        CheckConfig {
            seed,
            ..CheckConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(MeanError::Evaluation(format!("invalid check config: {m}")));
        if self.trials == 0 {
            return bad("trials must be >= 1");
        }
        if self.max_n == 0 {
            return bad("max_n must be >= 1");
        }
        if self.rel_tol.is_nan() || self.slack.is_nan() || self.rel_tol <= 0.0 || self.slack <= 0.0 {
            return bad("tolerances must be positive");
        }
        Ok(())
    }
}
