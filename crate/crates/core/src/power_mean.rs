//! Weighted power means `M_p(w, x)` and p-norms `‖x‖_q`.

use crate::dd::Dd;
use crate::error::{MeanError, Result};
use crate::exponent::Exponent;
use crate::vectors::{SignedVector, ValueVector, Weighting};

/// Largest `|p · ln x_i|` for which the direct power sum is used.
const DIRECT_LOG_RANGE: f64 = 600.0;

/// Weighted power mean of order `p`, restricted to the support of `w`.
///
/// * `p = 0`: `∏ x_i^{w_i}`
/// * finite `p ≠ 0`: `(Σ w_i x_i^p)^{1/p}`; for `p < 0` a zero entry on the
///   support gives 0
/// * `p = ±∞`: max / min over `{i : w_i > 0}`
///
/// For `|p| ≥ 1` with every `|p · ln x_i| ≤ 600` the power sum is formed
/// directly. Everything else goes through a double-double log-domain
/// evaluation anchored at the extreme supported entry, which stays accurate
/// for entries spanning the whole double range and for `p` near zero.
pub fn power_mean(p: Exponent, w: &Weighting, x: &ValueVector) -> Result<f64> {
    if w.len() != x.len() {
        return Err(MeanError::LengthMismatch {
            expected: w.len(),
            found: x.len(),
        });
    }
    let xs = x.entries();
    let ws = w.entries();
    let support: Vec<usize> = w.support().collect();
    // weights sum to 1, so the support is never empty
    let lo = support.iter().map(|&i| xs[i]).fold(f64::INFINITY, f64::min);
    let hi = support.iter().map(|&i| xs[i]).fold(0.0, f64::max);

    let value = match p {
        Exponent::PosInf => return Ok(hi),
        Exponent::NegInf => return Ok(lo),
        Exponent::Zero => {
            if lo == 0.0 {
                return Ok(0.0);
            }
            let log_mean = support
                .iter()
                .fold(Dd::ZERO, |acc, &i| acc + Dd::from_f64(xs[i]).ln().mul_f64(ws[i]));
            log_mean.exp().to_f64()
        }
        Exponent::Finite(p) => {
            if hi == 0.0 || (p < 0.0 && lo == 0.0) {
                return Ok(0.0);
            }
            let direct = p.abs() >= 1.0
                && support
                    .iter()
                    .filter(|&&i| xs[i] > 0.0)
                    .all(|&i| (p * xs[i].ln()).abs() <= DIRECT_LOG_RANGE);
            if direct {
                let sum: f64 = support.iter().map(|&i| ws[i] * xs[i].powf(p)).sum();
                sum.powf(1.0 / p)
            } else {
                log_domain_mean(p, ws, xs, &support, if p > 0.0 { hi } else { lo })
            }
        }
    };
    Ok(value.clamp(lo, hi))
}

/// `anchor · exp(ln(Σ w_i (x_i/anchor)^p) / p)` in double-double. The anchor
/// is the supported max (p > 0) or min (p < 0), so every exponent
/// `p · ln(x_i/anchor)` is ≤ 0 and the anchor's own term is `w_anchor`.
fn log_domain_mean(p: f64, ws: &[f64], xs: &[f64], support: &[usize], anchor: f64) -> f64 {
    let ln_anchor = Dd::from_f64(anchor).ln();
    let sum = support
        .iter()
        .filter(|&&i| xs[i] > 0.0)
        .fold(Dd::ZERO, |acc, &i| {
            let z = (Dd::from_f64(xs[i]).ln() - ln_anchor).mul_f64(p);
            acc + z.exp().mul_f64(ws[i])
        });
    let log_mean = ln_anchor + sum.ln() / Dd::from_f64(p);
    log_mean.exp().to_f64()
}

/// The p-norm `‖x‖_q` for `q ∈ [1, ∞]`; the empty vector has norm 0.
///
/// Terms are scaled by `max |x_i|` and summed in ascending order, so the
/// result depends only on the multiset of nonzero `|x_i|`.
pub fn p_norm(q: Exponent, x: &SignedVector) -> Result<f64> {
    if !q.is_norm_order() {
        return Err(MeanError::ExponentOutOfRange(format!(
            "p-norm needs q in [1, inf], got {q}"
        )));
    }
    let mut mags: Vec<f64> = x
        .entries()
        .iter()
        .map(|v| v.abs())
        .filter(|v| *v > 0.0)
        .collect();
    let Some(&scale) = mags.iter().max_by(|a, b| a.total_cmp(b)) else {
        return Ok(0.0);
    };
    let Exponent::Finite(q) = q else {
        return Ok(scale);
    };
    mags.sort_by(|a, b| a.total_cmp(b));
    let sum: f64 = mags.iter().map(|v| (v / scale).powf(q)).sum();
    Ok(scale * sum.powf(1.0 / q))
}
