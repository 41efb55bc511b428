use serde::{Deserialize, Serialize};

use super::CheckConfig;

/// Where a property comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    /// Part of the definition of a system of means.
    Axiom,
    /// Convexity or multiplicativity: optional structure on a system.
    Structure,
    /// Consequence of the axioms (and, for homogeneity, multiplicativity).
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// A failing input, after shrinking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub w: Vec<f64>,
    pub x: Vec<f64>,
    /// Check-specific extra inputs (second vector, map, ε, c, …).
    pub aux: serde_json::Value,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    /// Index of the first failing trial, before shrinking.
    pub trial: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property_name: String,
    pub passed: bool,
    #[serde(rename = "trials")]
    pub trials_run: u64,
    pub counterexample: Option<Counterexample>,
    pub seed: u64,
    pub status: CheckStatus,
    pub kind: PropertyKind,
    /// True for properties every system of means has, so a failure while
    /// the axioms pass points at the harness or the numerics.
    pub implied_by_axioms: bool,
    /// The counterexample's residual on failure, else the largest trial
    /// residual.
    pub worst_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// All checks for one system, as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub system: String,
    pub config: CheckConfig,
    pub passed: bool,
    /// A derived property failed although everything it follows from passed.
    pub harness_suspect: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(system: String, config: CheckConfig, checks: Vec<CheckReport>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        let axioms_ok = checks
            .iter()
            .filter(|c| c.kind == PropertyKind::Axiom)
            .all(|c| c.passed);
        let multiplicative = checks
            .iter()
            .any(|c| c.property_name == "multiplicativity" && c.passed);
        let harness_suspect = axioms_ok
            && checks.iter().any(|c| {
                c.status == CheckStatus::Fail
                    && (c.implied_by_axioms
                        || (c.property_name == "homogeneity" && multiplicative))
            });
        SuiteReport {
            system,
            config,
            passed,
            harness_suspect,
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.property_name == name)
    }
}
