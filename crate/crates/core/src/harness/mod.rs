//! Seeded property checks for arbitrary mean systems.
//!
//! Each check draws `cfg.trials` inputs, evaluates both sides of its law,
//! and on failure shrinks the first failing trial to a locally minimal
//! witness. Trials run in parallel but every trial has its own RNG, so the
//! report does not depend on scheduling.

mod checks;
mod config;
pub mod gen;
mod report;
mod shrink;

use rayon::prelude::*;

use crate::error::MeanError;
use crate::system::MeanSystem;
use checks::{
    Case, Consistency, Convexity, Functoriality, Homogeneity, Monotonicity, Multiplicativity,
    Relation, Repetition, Symmetry, Transfer, ZeroWeight,
};

pub use config::CheckConfig;
pub use report::{CheckReport, CheckStatus, Counterexample, PropertyKind, SuiteReport};

/// Check names in suite order.
pub const PROPERTY_NAMES: [&str; 10] = [
    "functoriality",
    "consistency",
    "monotonicity",
    "convexity",
    "multiplicativity",
    "symmetry",
    "repetition",
    "zero_weight",
    "transfer",
    "homogeneity",
];

const MAX_SHRINK_STEPS: usize = 10_000;

struct Judged {
    lhs: Option<f64>,
    rhs: Option<f64>,
    residual: f64,
    failed: bool,
    error: Option<String>,
}

fn judge<C: Case>(case: &C, m: &dyn MeanSystem, cfg: &CheckConfig) -> Judged {
    match case.sides(m) {
        Ok((lhs, rhs)) => {
            let (residual, tol) = match C::META.relation {
                Relation::Equal => {
                    let scale = lhs.abs().max(rhs.abs());
                    let r = if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale };
                    (r, cfg.rel_tol)
                }
                Relation::AtMost => {
                    let scale = 1f64.max(lhs.abs()).max(rhs.abs());
                    ((lhs - rhs).max(0.0) / scale, cfg.slack)
                }
            };
            let residual = if residual.is_nan() { f64::INFINITY } else { residual };
            Judged {
                lhs: Some(lhs),
                rhs: Some(rhs),
                residual,
                failed: residual > tol,
                error: None,
            }
        }
        Err(e) => Judged {
            lhs: None,
            rhs: None,
            residual: f64::INFINITY,
            failed: true,
            error: Some(e.to_string()),
        },
    }
}

fn effective(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckConfig {
    CheckConfig {
        positive_weights_only: cfg.positive_weights_only || m.positivity_only(),
        ..cfg.clone()
    }
}

fn shrink<C: Case>(mut case: C, m: &dyn MeanSystem, cfg: &CheckConfig) -> (C, Judged) {
    let mut judged = judge(&case, m, cfg);
    for _ in 0..MAX_SHRINK_STEPS {
        let cur = case.complexity();
        let next = case.candidates().into_iter().find_map(|c| {
            if c.complexity() >= cur || !c.valid(cfg) {
                return None;
            }
            let j = judge(&c, m, cfg);
            j.failed.then_some((c, j))
        });
        match next {
            Some((c, j)) => {
                case = c;
                judged = j;
            }
            None => break,
        }
    }
    (case, judged)
}

fn run<C: Case>(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    let cfg = &effective(m, cfg);
    let meta = C::META;
    let base = CheckReport {
        property_name: meta.name.to_string(),
        passed: true,
        trials_run: 0,
        counterexample: None,
        seed: cfg.seed,
        status: CheckStatus::Pass,
        kind: meta.kind,
        implied_by_axioms: meta.implied_by_axioms,
        worst_residual: 0.0,
        note: None,
    };
    if meta.name == "zero_weight" && cfg.positive_weights_only {
        return CheckReport {
            status: CheckStatus::NotApplicable,
            note: Some("zero weights are excluded in positive-weights mode".into()),
            ..base
        };
    }
    let outcomes: Vec<(f64, bool)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = gen::trial_rng(cfg.seed, meta.name, t);
            let j = judge(&C::generate(&mut rng, cfg, t), m, cfg);
            (j.residual, j.failed)
        })
        .collect();
    let Some(first) = outcomes.iter().position(|o| o.1) else {
        let worst = outcomes.iter().map(|o| o.0).fold(0.0, f64::max);
        return CheckReport {
            trials_run: cfg.trials,
            worst_residual: worst,
            ..base
        };
    };
    let t = first as u64;
    let case = C::generate(&mut gen::trial_rng(cfg.seed, meta.name, t), cfg, t);
    let (case, j) = shrink(case, m, cfg);
    let (w, x, aux) = case.witness();
    CheckReport {
        passed: false,
        trials_run: t + 1,
        status: CheckStatus::Fail,
        worst_residual: j.residual,
        counterexample: Some(Counterexample {
            w,
            x,
            aux,
            lhs: j.lhs,
            rhs: j.rhs,
            residual: j.residual,
            error: j.error,
            trial: t,
        }),
        ..base
    }
}

fn decode<C: Case>(cex: &Counterexample) -> Result<C, MeanError> {
    C::from_witness(&cex.w, &cex.x, &cex.aux).ok_or_else(|| {
        MeanError::Evaluation(format!("witness does not fit the {} check", C::META.name))
    })
}

fn replay_as<C: Case>(m: &dyn MeanSystem, cfg: &CheckConfig, cex: &Counterexample) -> Result<f64, MeanError> {
    Ok(judge(&decode::<C>(cex)?, m, cfg).residual)
}

fn minimal_as<C: Case>(m: &dyn MeanSystem, cfg: &CheckConfig, cex: &Counterexample) -> Result<bool, MeanError> {
    let cfg = &effective(m, cfg);
    let case = decode::<C>(cex)?;
    let cur = case.complexity();
    Ok(!case
        .candidates()
        .into_iter()
        .any(|c| c.complexity() < cur && c.valid(cfg) && judge(&c, m, cfg).failed))
}

macro_rules! dispatch {
    ($name:expr, $f:ident, $($arg:expr),*) => {
        match $name {
            "functoriality" => Some($f::<Functoriality>($($arg),*)),
            "consistency" => Some($f::<Consistency>($($arg),*)),
            "monotonicity" => Some($f::<Monotonicity>($($arg),*)),
            "convexity" => Some($f::<Convexity>($($arg),*)),
            "multiplicativity" => Some($f::<Multiplicativity>($($arg),*)),
            "symmetry" => Some($f::<Symmetry>($($arg),*)),
            "repetition" => Some($f::<Repetition>($($arg),*)),
            "zero_weight" => Some($f::<ZeroWeight>($($arg),*)),
            "transfer" => Some($f::<Transfer>($($arg),*)),
            "homogeneity" => Some($f::<Homogeneity>($($arg),*)),
            _ => None,
        }
    };
}

fn unknown(name: &str) -> MeanError {
    MeanError::Evaluation(format!("unknown property {name:?}"))
}

/// Runs one check by name.
pub fn run_check(name: &str, m: &dyn MeanSystem, cfg: &CheckConfig) -> Option<CheckReport> {
    dispatch!(name, run, m, cfg)
}

/// Re-evaluates a reported witness and returns its residual.
pub fn replay(
    name: &str,
    m: &dyn MeanSystem,
    cfg: &CheckConfig,
    cex: &Counterexample,
) -> Result<f64, MeanError> {
    dispatch!(name, replay_as, m, cfg, cex).ok_or_else(|| unknown(name))?
}

/// True when no single shrinking move yields a smaller failing input.
pub fn is_locally_minimal(
    name: &str,
    m: &dyn MeanSystem,
    cfg: &CheckConfig,
    cex: &Counterexample,
) -> Result<bool, MeanError> {
    dispatch!(name, minimal_as, m, cfg, cex).ok_or_else(|| unknown(name))?
}

pub fn check_functoriality(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Functoriality>(m, cfg)
}

pub fn check_consistency(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Consistency>(m, cfg)
}

pub fn check_monotonicity(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Monotonicity>(m, cfg)
}

/// Trial 0 is always `w = (1/2, 1/2)`, `x = (1, 0)`, `y = (0, 1)`.
pub fn check_convexity(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Convexity>(m, cfg)
}

pub fn check_multiplicativity(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Multiplicativity>(m, cfg)
}

pub fn check_symmetry(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Symmetry>(m, cfg)
}

pub fn check_repetition(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Repetition>(m, cfg)
}

pub fn check_zero_weight(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<ZeroWeight>(m, cfg)
}

pub fn check_transfer(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Transfer>(m, cfg)
}

pub fn check_homogeneity(m: &dyn MeanSystem, cfg: &CheckConfig) -> CheckReport {
    run::<Homogeneity>(m, cfg)
}

pub fn run_full_suite(m: &dyn MeanSystem, cfg: &CheckConfig) -> Vec<CheckReport> {
    PROPERTY_NAMES
        .iter()
        .map(|n| run_check(n, m, cfg).expect("known property"))
        .collect()
}

/// [`run_full_suite`] wrapped with the system label and summary flags.
pub fn suite_report(m: &dyn MeanSystem, cfg: &CheckConfig) -> SuiteReport {
    SuiteReport::new(m.label(), effective(m, cfg), run_full_suite(m, cfg))
}
