use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::recover::{recover_exponent, RecoveryResult};
use super::sandwich::approx_sandwich;
use crate::error::Result;
use crate::exponent::Exponent;
use crate::harness::gen;
use crate::harness::CheckConfig;
use crate::power_mean::power_mean;
use crate::rational::expand_rational;
use crate::system::MeanSystem;
use crate::vectors::{uniform, ValueVector, Weighting};

/// Step sizes for the irrational stage.
pub const SANDWICH_DELTAS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Largest common denominator in the rational stage.
pub const MAX_DENOMINATOR: u64 = 100;

/// Pairs used for the multiplicative law during recovery.
pub const DEFAULT_LAW_PAIRS: usize = 31;

const FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Uniform,
    Rational,
    Sandwich,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Counterexample,
}

/// One row of a stage's residual table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRow {
    pub trial: u64,
    pub n: usize,
    /// Only set in the sandwich stage.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageWitness {
    pub trial: u64,
    pub w: Vec<f64>,
    pub x: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// `M` on the input.
    pub observed: f64,
    /// What the stage compared it with.
    pub expected: f64,
    pub residual: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageReport {
    pub stage: Stage,
    pub passed: bool,
    pub max_residual: f64,
    pub rows: Vec<StageRow>,
    pub counterexample: Option<StageWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterizationReport {
    pub system: String,
    pub seed: u64,
    #[serde(flatten)]
    pub recovery: RecoveryResult,
    pub stages: Vec<StageReport>,
    pub verdict: Verdict,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

struct Outcome {
    rows: Vec<StageRow>,
    witness: Option<StageWitness>,
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if a == b {
        0.0
    } else if s == 0.0 || !s.is_finite() {
        f64::INFINITY
    } else {
        (a - b).abs() / s
    }
}

fn sanitize(r: f64) -> f64 {
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

struct Ctx<'a> {
    m: &'a dyn MeanSystem,
    p: Exponent,
    cfg: &'a CheckConfig,
}

fn uniform_trial(ctx: &Ctx, rng: &mut ChaCha8Rng, t: u64) -> Result<Outcome> {
    let n = gen::size(rng, 1, ctx.cfg.max_n);
    let x = ValueVector::new(gen::values(rng, n))?;
    let u = uniform(n)?;
    let observed = ctx.m.evaluate(&u, &x)?;
    let expected = power_mean(ctx.p, &u, &x)?;
    let residual = sanitize(rel(observed, expected));
    let passed = residual <= ctx.cfg.rel_tol;
    Ok(Outcome {
        rows: vec![StageRow { trial: t, n, delta: None, residual, passed }],
        witness: (!passed).then(|| StageWitness {
            trial: t,
            w: u.entries().to_vec(),
            x: x.entries().to_vec(),
            delta: None,
            observed,
            expected,
            residual,
            detail: format!("M(u_n, x) against M_{}(u_n, x)", ctx.p),
        }),
    })
}

fn random_counts(rng: &mut ChaCha8Rng, n: usize, positive: bool) -> Vec<u64> {
    let lo = if positive { n as u64 } else { 1 };
    let d = rng.random_range(lo.max(1)..=MAX_DENOMINATOR.max(lo));
    let mut counts = vec![if positive { 1 } else { 0 }; n];
    let spare = d - counts.iter().sum::<u64>();
    for _ in 0..spare {
        counts[rng.random_range(0..n)] += 1;
    }
    counts
}

fn rational_trial(ctx: &Ctx, rng: &mut ChaCha8Rng, t: u64) -> Result<Outcome> {
    let n = gen::size(rng, 1, ctx.cfg.max_n);
    let positive = ctx.cfg.positive_weights_only || ctx.m.positivity_only();
    let w = Weighting::from_counts(&random_counts(rng, n, positive))?;
    let x = ValueVector::new(gen::values(rng, n))?;
    let (u, xs) = expand_rational(&w, &x)?;
    let observed = ctx.m.evaluate(&w, &x)?;
    let expanded = ctx.m.evaluate(&u, &xs)?;
    let model = power_mean(ctx.p, &w, &x)?;
    let (r1, r2) = (sanitize(rel(observed, expanded)), sanitize(rel(observed, model)));
    let residual = r1.max(r2);
    let passed = residual <= ctx.cfg.rel_tol;
    let (expected, detail) = if r1 >= r2 {
        (expanded, "M(w, x) against M on the repeated-value expansion".to_string())
    } else {
        (model, format!("M(w, x) against M_{}(w, x)", ctx.p))
    };
    Ok(Outcome {
        rows: vec![StageRow { trial: t, n, delta: None, residual, passed }],
        witness: (!passed).then(|| StageWitness {
            trial: t,
            w: w.entries().to_vec(),
            x: x.entries().to_vec(),
            delta: None,
            observed,
            expected,
            residual,
            detail,
        }),
    })
}

/// `max g − min g` for the weight gradient of `M(·, x)` at `w`, from central
/// differences along `e_i − e_n`.
pub fn weight_gradient_spread(m: &dyn MeanSystem, w: &Weighting, x: &ValueVector) -> Result<f64> {
    let n = w.len();
    let mut dirs = vec![0.0f64];
    for i in 0..n.saturating_sub(1) {
        let mut plus = w.entries().to_vec();
        let mut minus = plus.clone();
        plus[i] += FD_STEP;
        plus[n - 1] -= FD_STEP;
        minus[i] -= FD_STEP;
        minus[n - 1] += FD_STEP;
        let hi = m.evaluate(&Weighting::new(plus)?, x)?;
        let lo = m.evaluate(&Weighting::new(minus)?, x)?;
        dirs.push((hi - lo) / (2.0 * FD_STEP));
    }
    let max = dirs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = dirs.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(max - min)
}

fn sandwich_trial(ctx: &Ctx, rng: &mut ChaCha8Rng, t: u64) -> Result<Outcome> {
    let n = gen::size(rng, 2, ctx.cfg.max_n.max(2));
    let w = Weighting::new(gen::spread_weights(rng, n))?;
    let x = ValueVector::new(gen::values(rng, n))?;
    let model = power_mean(ctx.p, &w, &x)?;
    let spread = weight_gradient_spread(ctx.m, &w, &x)?;
    let mut rows = Vec::new();
    let mut witness = None;
    for delta in SANDWICH_DELTAS {
        let s = approx_sandwich(ctx.m, &w, &x, delta)?;
        let v = s.values;
        let scale = 1f64.max(v.upper.abs()).max(v.lower.abs());
        let order = ((v.middle - v.upper).max(v.lower - v.middle).max(0.0)) / scale;
        let bracket = (v.lower - model).max(model - v.upper).max(0.0) / scale.max(model.abs());
        let gap_excess = (v.gap() - 4.0 * spread * delta).max(0.0) / scale;
        let deviation = s.max_deviation(&w);
        let residual = sanitize(order.max(bracket).max(gap_excess));
        let passed = order <= ctx.cfg.slack
            && bracket <= ctx.cfg.rel_tol
            && gap_excess <= ctx.cfg.slack
            && deviation < delta;
        rows.push(StageRow { trial: t, n, delta: Some(delta), residual, passed });
        if !passed && witness.is_none() {
            let detail = if deviation >= delta {
                format!("grid weights are {deviation} from w, not within delta")
            } else if order > ctx.cfg.slack {
                format!("values out of order: {} / {} / {}", v.upper, v.middle, v.lower)
            } else if bracket > ctx.cfg.rel_tol {
                format!("[{}, {}] does not bracket M_{}(w, x)", v.lower, v.upper, ctx.p)
            } else {
                format!("gap {} exceeds 4 * {spread} * delta", v.gap())
            };
            witness = Some(StageWitness {
                trial: t,
                w: w.entries().to_vec(),
                x: x.entries().to_vec(),
                delta: Some(delta),
                observed: v.middle,
                expected: model,
                residual,
                detail,
            });
        }
    }
    Ok(Outcome { rows, witness })
}

fn error_outcome(t: u64, e: crate::error::MeanError) -> Outcome {
    Outcome {
        rows: vec![StageRow { trial: t, n: 0, delta: None, residual: f64::INFINITY, passed: false }],
        witness: Some(StageWitness {
            trial: t,
            w: vec![],
            x: vec![],
            delta: None,
            observed: f64::NAN,
            expected: f64::NAN,
            residual: f64::INFINITY,
            detail: e.to_string(),
        }),
    }
}

fn run_stage(ctx: &Ctx, stage: Stage) -> StageReport {
    let stream = match stage {
        Stage::Uniform => "characterize/uniform",
        Stage::Rational => "characterize/rational",
        Stage::Sandwich => "characterize/sandwich",
    };
    let outcomes: Vec<Outcome> = (0..ctx.cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = gen::trial_rng(ctx.cfg.seed, stream, t);
            let r = match stage {
                Stage::Uniform => uniform_trial(ctx, &mut rng, t),
                Stage::Rational => rational_trial(ctx, &mut rng, t),
                Stage::Sandwich => sandwich_trial(ctx, &mut rng, t),
            };
            r.unwrap_or_else(|e| error_outcome(t, e))
        })
        .collect();
    let mut rows = Vec::new();
    let mut counterexample = None;
    for o in outcomes {
        rows.extend(o.rows);
        if counterexample.is_none() {
            counterexample = o.witness;
        }
    }
    StageReport {
        stage,
        passed: counterexample.is_none(),
        max_residual: rows.iter().map(|r| r.residual).fold(0.0, f64::max),
        rows,
        counterexample,
    }
}

/// Recovers `p̂` and compares `M` with `M_p̂` on uniform, rational and
/// irrational weightings. Never assumes the axioms hold.
pub fn verify_characterization(m: &dyn MeanSystem, cfg: &CheckConfig) -> Result<CharacterizationReport> {
    let recovery = recover_exponent(m, DEFAULT_LAW_PAIRS, cfg.seed)?;
    let Some(p) = recovery.p_hat else {
        return Ok(CharacterizationReport {
            system: m.label(),
            seed: cfg.seed,
            recovery,
            stages: vec![],
            verdict: Verdict::Counterexample,
            max_residual: f64::INFINITY,
            note: Some("theta vanishes on the whole grid, so no exponent can be assigned".into()),
        });
    };
    let ctx = Ctx { m, p, cfg };
    let stages: Vec<StageReport> = [Stage::Uniform, Stage::Rational, Stage::Sandwich]
        .into_iter()
        .map(|s| run_stage(&ctx, s))
        .collect();
    let verdict = if stages.iter().all(|s| s.passed) {
        Verdict::Consistent
    } else {
        Verdict::Counterexample
    };
    let max_residual = stages.iter().map(|s| s.max_residual).fold(0.0, f64::max);
    Ok(CharacterizationReport {
        system: m.label(),
        seed: cfg.seed,
        recovery,
        stages,
        verdict,
        max_residual,
        note: None,
    })
}
