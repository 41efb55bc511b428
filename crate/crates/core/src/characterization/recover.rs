use rand::Rng;
use serde::Serialize;

use crate::error::{MeanError, Result};
use crate::exponent::Exponent;
use crate::harness::gen::trial_rng;
use crate::system::MeanSystem;
use crate::vectors::{ValueVector, Weighting};

/// Number of points `t = 0.1 k` on the fitting grid (plus `t = ln 2`).
pub const THETA_GRID_STEPS: usize = 30;

/// θ values at or below this count as zero.
pub const THETA_ZERO: f64 = 1e-300;

/// How far θ may stray outside `[0, 1]` before the system is rejected.
pub const THETA_RANGE_TOL: f64 = 1e-9;

/// `θ(s) = M((s, 1 − s), (1, 0))`.
pub fn theta(m: &dyn MeanSystem, s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(MeanError::Evaluation(format!("theta needs 0 < s < 1, got {s}")));
    }
    let w = Weighting::new(vec![s, 1.0 - s])?;
    let x = ValueVector::new(vec![1.0, 0.0])?;
    m.evaluate(&w, &x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryResult {
    /// `1/α̂`, infinite when `α̂ = 0`; absent on the degenerate branch.
    pub p_hat: Option<Exponent>,
    /// Least-squares slope, clamped to `[0, 1]`.
    pub alpha_hat: f64,
    /// The slope before clamping.
    pub alpha_raw: f64,
    /// `(s, θ(s))` on the fitting grid.
    pub samples: Vec<(f64, f64)>,
    /// Larger of `fit_deviation` and `law_violation`.
    pub fit_residual: f64,
    /// `max |φ(t) − α̂_raw t|` over the grid.
    pub fit_deviation: f64,
    /// `max |log θ(ss') − log θ(s) − log θ(s')|` over seeded pairs.
    pub law_violation: f64,
    pub law_pairs: usize,
    /// Every θ on the grid was zero.
    pub degenerate_zero: bool,
    /// `log(1/2) / log θ(1/2)`.
    pub single_point_p: Option<f64>,
    /// `|1/p_single − α̂|`.
    pub single_point_disagreement: Option<f64>,
}

fn checked_theta(m: &dyn MeanSystem, s: f64) -> Result<f64> {
    let th = theta(m, s)?;
    if !(-THETA_RANGE_TOL..=1.0 + THETA_RANGE_TOL).contains(&th) {
        return Err(MeanError::Evaluation(format!(
            "theta({s}) = {th} lies outside [0, 1]; the system is not monotone or not consistent"
        )));
    }
    Ok(th.clamp(0.0, 1.0))
}

fn phi(th: f64) -> f64 {
    if th <= THETA_ZERO {
        f64::INFINITY
    } else {
        -th.ln()
    }
}

/// Fits `θ(s) = s^α` on the grid and checks `θ(ss') = θ(s)θ(s')` on
/// `law_pairs` seeded pairs.
pub fn recover_exponent(m: &dyn MeanSystem, law_pairs: usize, seed: u64) -> Result<RecoveryResult> {
    let mut ts: Vec<f64> = (1..=THETA_GRID_STEPS).map(|k| 0.1 * k as f64).collect();
    ts.push(std::f64::consts::LN_2);
    let mut samples = Vec::with_capacity(ts.len());
    for &t in &ts {
        let s = if t == std::f64::consts::LN_2 { 0.5 } else { (-t).exp() };
        samples.push((s, checked_theta(m, s)?));
    }
    // the grid s was rounded, so refit against the exact -ln s
    let points: Vec<(f64, f64)> = samples.iter().map(|&(s, th)| (-s.ln(), phi(th))).collect();

    if samples.iter().all(|&(_, th)| th <= THETA_ZERO) {
        return Ok(RecoveryResult {
            p_hat: None,
            alpha_hat: 0.0,
            alpha_raw: f64::NAN,
            samples,
            fit_residual: 0.0,
            fit_deviation: 0.0,
            law_violation: 0.0,
            law_pairs: 0,
            degenerate_zero: true,
            single_point_p: None,
            single_point_disagreement: None,
        });
    }

    let finite: Vec<&(f64, f64)> = points.iter().filter(|(_, f)| f.is_finite()).collect();
    let stt: f64 = finite.iter().map(|(t, _)| t * t).sum();
    let stf: f64 = finite.iter().map(|(t, f)| t * f).sum();
    let alpha_raw = stf / stt;
    let fit_deviation = points
        .iter()
        .map(|(t, f)| (f - alpha_raw * t).abs())
        .fold(0.0, f64::max);

    let mut rng = trial_rng(seed, "recover/law", 0);
    let mut law_violation: f64 = 0.0;
    for _ in 0..law_pairs {
        let a: f64 = rng.random_range(0.05..1.5);
        let b: f64 = rng.random_range(0.05..1.5);
        let (s1, s2) = ((-a).exp(), (-b).exp());
        let lhs = phi(checked_theta(m, s1 * s2)?);
        let rhs = phi(checked_theta(m, s1)?) + phi(checked_theta(m, s2)?);
        let v = if lhs == rhs { 0.0 } else { (lhs - rhs).abs() };
        law_violation = law_violation.max(if v.is_nan() { f64::INFINITY } else { v });
    }

    let alpha_hat = if alpha_raw.is_nan() { 0.0 } else { alpha_raw.clamp(0.0, 1.0) };
    let p_hat = Some(if alpha_hat == 0.0 {
        Exponent::PosInf
    } else {
        Exponent::Finite(1.0 / alpha_hat)
    });
    let half = samples.last().expect("grid is nonempty").1;
    let single_point_p = (half > THETA_ZERO).then(|| 0.5f64.ln() / half.ln());
    let single_point_disagreement = single_point_p.map(|p| (1.0 / p - alpha_hat).abs());

    Ok(RecoveryResult {
        p_hat,
        alpha_hat,
        alpha_raw,
        samples,
        fit_residual: fit_deviation.max(law_violation),
        fit_deviation,
        law_violation,
        law_pairs,
        degenerate_zero: false,
        single_point_p,
        single_point_disagreement,
    })
}
