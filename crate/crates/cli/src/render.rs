//! JSON and CSV renderings of the reports.

use meanlab_core::{CharacterizationReport, RecoveryResult, SandwichResult, SuiteReport, Weighting};
use serde::Serialize;

use crate::error::CliError;

/// Integral values print without a fraction (`5`), everything else in the
/// shortest round-tripping JSON form.
pub fn number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e16 {
        format!("{v}")
    } else {
        serde_json::to_string(&v).unwrap_or_else(|_| "null".into())
    }
}

pub fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn eval_csv(v: f64) -> String {
    format!("value\n{}\n", number(v))
}

#[derive(Serialize)]
struct CheckRow<'a> {
    property_name: &'a str,
    kind: String,
    status: String,
    passed: bool,
    trials: u64,
    worst_residual: f64,
    seed: u64,
}

fn tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn suite_csv(r: &SuiteReport) -> Result<String, CliError> {
    csv_rows(r.checks.iter().map(|c| CheckRow {
        property_name: &c.property_name,
        kind: tag(&c.kind),
        status: tag(&c.status),
        passed: c.passed,
        trials: c.trials_run,
        worst_residual: c.worst_residual,
        seed: c.seed,
    }))
}

#[derive(Serialize)]
struct ThetaRow {
    s: f64,
    theta: f64,
}

pub fn recovery_csv(r: &RecoveryResult) -> Result<String, CliError> {
    csv_rows(r.samples.iter().map(|&(s, theta)| ThetaRow { s, theta }))
}

#[derive(Serialize)]
struct StageCsvRow {
    stage: String,
    trial: u64,
    n: usize,
    delta: Option<f64>,
    residual: f64,
    passed: bool,
}

pub fn characterization_csv(r: &CharacterizationReport) -> Result<String, CliError> {
    csv_rows(r.stages.iter().flat_map(|st| {
        let stage = tag(&st.stage);
        st.rows.iter().map(move |row| StageCsvRow {
            stage: stage.clone(),
            trial: row.trial,
            n: row.n,
            delta: row.delta,
            residual: row.residual,
            passed: row.passed,
        })
    }))
}

#[derive(Serialize)]
struct SandwichRow {
    index: usize,
    w: f64,
    w_upper: String,
    w_lower: String,
}

pub fn sandwich_csv(w: &Weighting, r: &SandwichResult) -> Result<String, CliError> {
    let d = r.denominator;
    csv_rows(w.entries().iter().enumerate().map(|(i, &wi)| SandwichRow {
        index: i,
        w: wi,
        w_upper: format!("{}/{d}", r.upper_numerators[i]),
        w_lower: format!("{}/{d}", r.lower_numerators[i]),
    }))
}
