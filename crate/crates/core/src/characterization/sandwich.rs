use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{MeanError, Result};
use crate::rational::DEFAULT_EXPANSION_CAP;
use crate::system::MeanSystem;
use crate::vectors::{Rational, ValueVector, Weighting};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichValues {
    /// `M(w', x)`.
    pub upper: f64,
    /// `M(w, x)`.
    pub middle: f64,
    /// `M(w'', x)`.
    pub lower: f64,
}

impl SandwichValues {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    /// `upper ≥ middle ≥ lower` up to `slack · max(1, |values|)`.
    pub fn is_ordered(&self, slack: f64) -> bool {
        let scale = 1f64.max(self.upper.abs()).max(self.lower.abs());
        self.middle - self.upper <= slack * scale && self.lower - self.middle <= slack * scale
    }
}

/// Rational weightings on the grid `ℤ/D` bracketing `w`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichResult {
    /// Mass moved toward smaller values (`w''`).
    pub w_lower: Weighting,
    /// Mass moved toward larger values (`w'`).
    pub w_upper: Weighting,
    pub delta: f64,
    /// Grid denominator `D = ⌈2/δ⌉`.
    pub denominator: u64,
    /// Numerators of `w''` over `D`.
    pub lower_numerators: Vec<u64>,
    /// Numerators of `w'` over `D`.
    pub upper_numerators: Vec<u64>,
    pub values: SandwichValues,
}

impl SandwichResult {
    /// `max(‖w − w'‖_∞, ‖w − w''‖_∞)`.
    pub fn max_deviation(&self, w: &Weighting) -> f64 {
        let dev = |v: &Weighting| {
            w.entries()
                .iter()
                .zip(v.entries())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        dev(&self.w_upper).max(dev(&self.w_lower))
    }
}

fn exact_entries(w: &Weighting) -> Vec<BigRational> {
    match w.exact() {
        Some(ex) => ex
            .iter()
            .map(|r| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
            .collect(),
        None => w
            .entries()
            .iter()
            .map(|&v| BigRational::from_float(v).expect("weights are finite"))
            .collect(),
    }
}

/// Walks `order`, rounding each running total down to the grid; whatever is
/// shaved off one coordinate lands on the next. The final total is forced
/// to 1 so the grid weights sum to exactly 1.
fn sweep(w: &[BigRational], order: &[usize], d: i64) -> Vec<i64> {
    let dd = BigRational::from_integer(BigInt::from(d));
    let mut counts = vec![0i64; w.len()];
    let mut cum = BigRational::zero();
    let mut prev = 0i64;
    for (pos, &i) in order.iter().enumerate() {
        cum += &w[i];
        let k = if pos + 1 == order.len() {
            d
        } else {
            (&cum * &dd).floor().to_integer().to_i64().unwrap_or(d).clamp(prev, d)
        };
        counts[i] = k - prev;
        prev = k;
    }
    counts
}

fn grid_weighting(counts: &[i64], d: i64) -> Result<Weighting> {
    Weighting::from_rationals(counts.iter().map(|&k| Rational::new(k, d)).collect())
}

/// Grid denominator for a given `δ`, or an error past the expansion cap.
pub fn grid_denominator(delta: f64) -> Result<u64> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(MeanError::Evaluation(format!("delta must be positive and finite, got {delta}")));
    }
    let d = (2.0 / delta).ceil();
    if d > DEFAULT_EXPANSION_CAP as f64 {
        return Err(MeanError::ExpansionOverflow {
            needed: if d.is_finite() { d as u128 } else { u128::MAX },
            cap: DEFAULT_EXPANSION_CAP,
        });
    }
    Ok(d as u64)
}

/// Rational `w' , w''` within `δ` of `w` with `M(w', x) ≥ M(w, x) ≥ M(w'', x)`
/// whenever `M` has the transfer property.
///
/// `w'` comes from sweeping coordinates in ascending order of `x` (ties by
/// index), so every rounding remainder moves onto an equal or larger value;
/// `w''` sweeps in descending order.
pub fn approx_sandwich(
    m: &dyn MeanSystem,
    w: &Weighting,
    x: &ValueVector,
    delta: f64,
) -> Result<SandwichResult> {
    if w.len() != x.len() {
        return Err(MeanError::LengthMismatch {
            expected: w.len(),
            found: x.len(),
        });
    }
    let d = grid_denominator(delta)?;
    let di = d as i64;
    let exact = exact_entries(w);
    let xs = x.entries();
    let mut asc: Vec<usize> = (0..w.len()).collect();
    asc.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]).then(a.cmp(&b)));
    let mut desc: Vec<usize> = (0..w.len()).collect();
    desc.sort_by(|&a, &b| xs[b].total_cmp(&xs[a]).then(a.cmp(&b)));

    let up = sweep(&exact, &asc, di);
    let lo = sweep(&exact, &desc, di);
    let w_upper = grid_weighting(&up, di)?;
    let w_lower = grid_weighting(&lo, di)?;
    let values = SandwichValues {
        upper: m.evaluate(&w_upper, x)?,
        middle: m.evaluate(w, x)?,
        lower: m.evaluate(&w_lower, x)?,
    };
    Ok(SandwichResult {
        w_lower,
        w_upper,
        delta,
        denominator: d,
        lower_numerators: lo.iter().map(|&k| k as u64).collect(),
        upper_numerators: up.iter().map(|&k| k as u64).collect(),
        values,
    })
}
