//! Validated job description built from the parsed flags.

use std::path::{Path, PathBuf};

use meanlab_core::harness::PROPERTY_NAMES;
use meanlab_core::{CheckConfig, DslSystem, Exponent, MeanSystem, PowerMeanSystem, ValueVector, Weighting};
use serde::Deserialize;

use crate::args::{Cli, Command, ConfigArgs, Format, InputArgs, SystemArgs};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum SystemSpec {
    Builtin { p: Exponent },
    Dsl { source: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandSpec {
    Eval,
    Axioms { checks: Vec<String> },
    Recover { samples: usize },
    Characterize,
    Sandwich { delta: f64, slack: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: CommandSpec,
    pub system: SystemSpec,
    pub positive_weights: bool,
    pub inputs: Option<(Vec<f64>, Vec<f64>)>,
    pub config: CheckConfig,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl JobSpec {
    pub fn build_system(&self) -> Result<Box<dyn MeanSystem>, CliError> {
        Ok(match &self.system {
            SystemSpec::Builtin { p } if self.positive_weights => {
                Box::new(PowerMeanSystem::positively_weighted(*p))
            }
            SystemSpec::Builtin { p } => Box::new(PowerMeanSystem::new(*p)),
            SystemSpec::Dsl { source } => {
                Box::new(DslSystem::parse(source)?.with_positive_weights(self.positive_weights))
            }
        })
    }

    pub fn weighting_and_values(&self) -> Result<(Weighting, ValueVector), CliError> {
        let (w, x) = self
            .inputs
            .as_ref()
            .ok_or_else(|| CliError::Usage("this command needs --w and --x, or --input".into()))?;
        Ok((Weighting::new(w.clone())?, ValueVector::new(x.clone())?))
    }
}

/// `p=2`, `2`, `inf`, `-inf`.
pub fn parse_builtin(text: &str) -> Result<Exponent, CliError> {
    let t = text.trim();
    let t = t.strip_prefix("p=").unwrap_or(t);
    t.parse::<Exponent>()
        .map_err(|e| CliError::Usage(format!("--builtin {text:?}: {e}")))
}

pub fn parse_list(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .enumerate()
        .map(|(i, part)| {
            let part = part.trim();
            part.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::Input(format!("--{flag} entry {} ({part:?}) is not a finite decimal", i + 1))
                })
        })
        .collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    w: Vec<f64>,
    x: Vec<f64>,
}

type RawInputs = (Vec<f64>, Vec<f64>);

fn read_input(path: &Path) -> Result<RawInputs, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let f: InputFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((f.w, f.x))
}

fn inputs(a: &InputArgs) -> Result<Option<RawInputs>, CliError> {
    if let Some(path) = &a.input {
        return read_input(path).map(Some);
    }
    match (&a.w, &a.x) {
        (Some(w), Some(x)) => Ok(Some((parse_list("w", w)?, parse_list("x", x)?))),
        (None, None) => Ok(None),
        _ => Err(CliError::Usage("--w and --x must be given together".into())),
    }
}

fn system(a: &SystemArgs) -> Result<SystemSpec, CliError> {
    match (&a.builtin, &a.dsl) {
        (Some(p), None) => Ok(SystemSpec::Builtin { p: parse_builtin(p)? }),
        (None, Some(src)) => Ok(SystemSpec::Dsl { source: src.clone() }),
        _ => Err(CliError::Usage("give exactly one of --builtin and --dsl".into())),
    }
}

fn config(c: &ConfigArgs, positive: bool) -> Result<CheckConfig, CliError> {
    let cfg = CheckConfig {
        seed: c.seed,
        trials: c.trials,
        max_n: c.max_n,
        rel_tol: c.rel_tol,
        slack: c.slack,
        positive_weights_only: positive,
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

impl TryFrom<&Cli> for JobSpec {
    type Error = CliError;

    fn try_from(cli: &Cli) -> Result<Self, CliError> {
        let base = |sys: &SystemArgs, out: &crate::args::OutputArgs| -> Result<JobSpec, CliError> {
            Ok(JobSpec {
                command: CommandSpec::Eval,
                system: system(sys)?,
                positive_weights: sys.positive_weights,
                inputs: None,
                config: CheckConfig {
                    positive_weights_only: sys.positive_weights,
                    ..CheckConfig::default()
                },
                output: out.output.clone(),
                format: out.format,
            })
        };
        match &cli.command {
            Command::Eval(a) => {
                let job = JobSpec {
                    inputs: inputs(&a.input)?,
                    ..base(&a.system, &a.out)?
                };
                job.weighting_and_values()?;
                Ok(job)
            }
            Command::Axioms(a) => {
                for c in &a.checks {
                    if !PROPERTY_NAMES.contains(&c.as_str()) {
                        return Err(CliError::Usage(format!(
                            "unknown check {c:?}; expected one of {}",
                            PROPERTY_NAMES.join(", ")
                        )));
                    }
                }
                Ok(JobSpec {
                    command: CommandSpec::Axioms { checks: a.checks.clone() },
                    config: config(&a.config, a.system.positive_weights)?,
                    ..base(&a.system, &a.out)?
                })
            }
            Command::Recover(a) => Ok(JobSpec {
                command: CommandSpec::Recover { samples: a.samples },
                config: CheckConfig {
                    seed: a.seed,
                    positive_weights_only: a.system.positive_weights,
                    ..CheckConfig::default()
                },
                ..base(&a.system, &a.out)?
            }),
            Command::Characterize(a) => Ok(JobSpec {
                command: CommandSpec::Characterize,
                config: config(&a.config, a.system.positive_weights)?,
                ..base(&a.system, &a.out)?
            }),
            Command::Sandwich(a) => {
                if !(a.delta.is_finite() && a.delta > 0.0) {
                    return Err(CliError::Usage(format!("--delta must be positive, got {}", a.delta)));
                }
                let job = JobSpec {
                    command: CommandSpec::Sandwich { delta: a.delta, slack: a.slack },
                    inputs: inputs(&a.input)?,
                    ..base(&a.system, &a.out)?
                };
                job.weighting_and_values()?;
                Ok(job)
            }
        }
    }
}
