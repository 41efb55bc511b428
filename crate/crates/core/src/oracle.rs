//! Arbitrary-precision reference evaluator for power means.
//!
//! Evaluates the textbook formulas literally in `precision_bits`-bit binary
//! floating point: no rescaling, no log-domain rewriting. It exists to give
//! tests an independent ground truth for [`crate::power_mean`].

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::error::{MeanError, Result};
use crate::exponent::Exponent;
use crate::vectors::{ValueVector, Weighting};

const RM: RoundingMode = RoundingMode::ToEven;
// Correctly rounded `pow` retries forever on exact results such as 4^{1/2};
// the working precision is far beyond a double, so skip final rounding.
const RM_POW: RoundingMode = RoundingMode::None;

fn big(v: f64, prec: usize) -> BigFloat {
    BigFloat::from_f64(v, prec)
}

fn to_f64(v: &BigFloat) -> Result<f64> {
    if v.is_zero() {
        return Ok(0.0);
    }
    v.to_string()
        .parse::<f64>()
        .map_err(|e| MeanError::Evaluation(format!("oracle result {v} not representable: {e}")))
}

/// `M_p(w, x)` evaluated with `precision_bits` bits of working precision and
/// rounded to the nearest double at the end.
pub fn power_mean_oracle(
    p: Exponent,
    w: &Weighting,
    x: &ValueVector,
    precision_bits: usize,
) -> Result<f64> {
    if w.len() != x.len() {
        return Err(MeanError::LengthMismatch {
            expected: w.len(),
            found: x.len(),
        });
    }
    let prec = precision_bits.max(64);
    let pairs: Vec<(f64, f64)> = w
        .entries()
        .iter()
        .zip(x.entries())
        .filter(|(wi, _)| **wi > 0.0)
        .map(|(&wi, &xi)| (wi, xi))
        .collect();

    match p {
        Exponent::PosInf => Ok(pairs.iter().map(|&(_, xi)| xi).fold(0.0, f64::max)),
        Exponent::NegInf => Ok(pairs.iter().map(|&(_, xi)| xi).fold(f64::INFINITY, f64::min)),
        Exponent::Zero => {
            if pairs.iter().any(|&(_, xi)| xi == 0.0) {
                return Ok(0.0);
            }
            let mut cc = Consts::new().map_err(|e| MeanError::Evaluation(e.to_string()))?;
            let mut prod = big(1.0, prec);
            for &(wi, xi) in &pairs {
                let f = big(xi, prec).pow(&big(wi, prec), prec, RM_POW, &mut cc);
                prod = prod.mul(&f, prec, RM);
            }
            to_f64(&prod)
        }
        Exponent::Finite(p) => {
            if p < 0.0 && pairs.iter().any(|&(_, xi)| xi == 0.0) {
                return Ok(0.0);
            }
            let mut cc = Consts::new().map_err(|e| MeanError::Evaluation(e.to_string()))?;
            let bp = big(p, prec);
            let mut sum = big(0.0, prec);
            for &(wi, xi) in &pairs {
                if xi == 0.0 {
                    continue;
                }
                let term = big(xi, prec).pow(&bp, prec, RM_POW, &mut cc);
                sum = sum.add(&big(wi, prec).mul(&term, prec, RM), prec, RM);
            }
            if sum.is_zero() {
                return Ok(0.0);
            }
            let inv_p = big(1.0, prec).div(&bp, prec, RM);
            to_f64(&sum.pow(&inv_p, prec, RM_POW, &mut cc))
        }
    }
}
