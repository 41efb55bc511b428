//! Black-box mean systems: built-in power means and DSL-defined candidates.

use crate::dsl::{eval_mean_expr, parse_mean_expr, MeanExpr};
use crate::error::{MeanError, Result};
use crate::exponent::Exponent;
use crate::power_mean::power_mean;
use crate::vectors::{uniform, SignedVector, ValueVector, Weighting};

/// A system of means: one function `Δ_n × ℝ₊ⁿ → ℝ₊` for every `n ≥ 1`.
///
/// Implementations must be deterministic and return a finite nonnegative
/// value or an error.
pub trait MeanSystem: Send + Sync {
    fn evaluate(&self, w: &Weighting, x: &ValueVector) -> Result<f64>;

    fn label(&self) -> String;

    /// When true the system is only defined on strictly positive weights.
    fn positivity_only(&self) -> bool {
        false
    }
}

impl<T: MeanSystem + ?Sized> MeanSystem for &T {
    fn evaluate(&self, w: &Weighting, x: &ValueVector) -> Result<f64> {
        (**self).evaluate(w, x)
    }

    fn label(&self) -> String {
        (**self).label()
    }

    fn positivity_only(&self) -> bool {
        (**self).positivity_only()
    }
}

impl<T: MeanSystem + ?Sized> MeanSystem for Box<T> {
    fn evaluate(&self, w: &Weighting, x: &ValueVector) -> Result<f64> {
        (**self).evaluate(w, x)
    }

    fn label(&self) -> String {
        (**self).label()
    }

    fn positivity_only(&self) -> bool {
        (**self).positivity_only()
    }
}

fn check_positive(w: &Weighting) -> Result<()> {
    if w.is_strictly_positive() {
        Ok(())
    } else {
        Err(MeanError::InvalidWeighting(
            "system is restricted to strictly positive weights".into(),
        ))
    }
}

/// The built-in `M_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerMeanSystem {
    p: Exponent,
    positive_only: bool,
}

impl PowerMeanSystem {
    pub fn new(p: Exponent) -> Self {
        PowerMeanSystem {
            p,
            positive_only: false,
        }
    }

    /// The restriction of `M_p` to strictly positive weightings.
    pub fn positively_weighted(p: Exponent) -> Self {
        PowerMeanSystem {
            p,
            positive_only: true,
        }
    }

    pub fn exponent(&self) -> Exponent {
        self.p
    }
}

/// Shorthand for [`PowerMeanSystem::new`].
pub fn builtin_power_mean_system(p: Exponent) -> PowerMeanSystem {
    PowerMeanSystem::new(p)
}

impl MeanSystem for PowerMeanSystem {
    fn evaluate(&self, w: &Weighting, x: &ValueVector) -> Result<f64> {
        if self.positive_only {
            check_positive(w)?;
        }
        power_mean(self.p, w, x)
    }

    fn label(&self) -> String {
        format!("M_{}", self.p)
    }

    fn positivity_only(&self) -> bool {
        self.positive_only
    }
}

/// A system defined by a DSL formula. Zero weights are not filtered out, so
/// formulas that ignore the zero-weight property are visible to the checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DslSystem {
    source: String,
    expr: MeanExpr,
    positive_only: bool,
}

impl DslSystem {
    pub fn parse(source: &str) -> Result<Self> {
        Ok(DslSystem {
            source: source.to_string(),
            expr: parse_mean_expr(source)?,
            positive_only: false,
        })
    }

    pub fn with_positive_weights(mut self, on: bool) -> Self {
        self.positive_only = on;
        self
    }

    pub fn expr(&self) -> &MeanExpr {
        &self.expr
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl MeanSystem for DslSystem {
    fn evaluate(&self, w: &Weighting, x: &ValueVector) -> Result<f64> {
        if self.positive_only {
            check_positive(w)?;
        }
        let v = eval_mean_expr(&self.expr, w, x)?;
        if v < 0.0 {
            return Err(MeanError::Evaluation(format!("mean evaluated to negative value {v}")));
        }
        // normalise -0.0
        Ok(v + 0.0)
    }

    fn label(&self) -> String {
        format!("dsl:{}", self.source)
    }

    fn positivity_only(&self) -> bool {
        self.positive_only
    }
}

/// The norm induced by a mean system: `‖x‖ = n^{1/p} M(u_n, |x|)`, with the
/// empty vector sent to 0.
pub fn norm_from_mean<M: MeanSystem + ?Sized>(m: &M, p: Exponent, x: &SignedVector) -> Result<f64> {
    if !p.is_norm_order() {
        return Err(MeanError::ExponentOutOfRange(format!(
            "norm_from_mean needs p in [1, inf], got {p}"
        )));
    }
    let Some(abs) = x.abs() else {
        return Ok(0.0);
    };
    let n = abs.len();
    let mean = m.evaluate(&uniform(n)?, &abs)?;
    Ok((n as f64).powf(p.reciprocal()) * mean)
}
