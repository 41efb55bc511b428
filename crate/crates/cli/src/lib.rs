//! The `meanlab` command line.
//!
//! Exit status: 0 on success, 1 when a property fails or a counterexample is
//! found, 2 on usage, parse or input errors.

pub mod args;
mod error;
pub mod job;
mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use meanlab_core::harness::{run_check, suite_report, PROPERTY_NAMES};
use meanlab_core::{
    approx_sandwich, recover_exponent, verify_characterization, SuiteReport, Verdict,
};

pub use args::{Cli, Format};
pub use error::CliError;
pub use job::{CommandSpec, JobSpec, SystemSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Report text plus exit status.
pub struct Outcome {
    pub report: String,
    pub status: u8,
}

fn status(ok: bool) -> u8 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

pub fn execute(job: &JobSpec) -> Result<Outcome, CliError> {
    let m = job.build_system()?;
    let csv = job.format == Format::Csv;
    match &job.command {
        CommandSpec::Eval => {
            let (w, x) = job.weighting_and_values()?;
            let v = m.evaluate(&w, &x)?;
            let report = if csv {
                render::eval_csv(v)
            } else {
                format!("{}\n", render::number(v))
            };
            Ok(Outcome { report, status: EXIT_OK })
        }
        CommandSpec::Axioms { checks } => {
            let r = if checks.is_empty() {
                suite_report(m.as_ref(), &job.config)
            } else {
                let picked = PROPERTY_NAMES
                    .iter()
                    .filter(|n| checks.iter().any(|c| c == *n))
                    .map(|n| run_check(n, m.as_ref(), &job.config).expect("validated name"))
                    .collect();
                SuiteReport::new(m.label(), job.config.clone(), picked)
            };
            let report = if csv { render::suite_csv(&r)? } else { render::json(&r)? };
            Ok(Outcome { report, status: status(r.passed) })
        }
        CommandSpec::Recover { samples } => {
            let r = recover_exponent(m.as_ref(), *samples, job.config.seed)?;
            let report = if csv { render::recovery_csv(&r)? } else { render::json(&r)? };
            Ok(Outcome { report, status: status(!r.degenerate_zero) })
        }
        CommandSpec::Characterize => {
            let r = verify_characterization(m.as_ref(), &job.config)?;
            let report = if csv {
                render::characterization_csv(&r)?
            } else {
                render::json(&r)?
            };
            Ok(Outcome { report, status: status(r.verdict == Verdict::Consistent) })
        }
        CommandSpec::Sandwich { delta, slack } => {
            let (w, x) = job.weighting_and_values()?;
            let r = approx_sandwich(m.as_ref(), &w, &x, *delta)?;
            let report = if csv { render::sandwich_csv(&w, &r)? } else { render::json(&r)? };
            Ok(Outcome { report, status: status(r.values.is_ordered(*slack)) })
        }
    }
}

fn emit(job: &JobSpec, text: &str) -> Result<(), CliError> {
    match &job.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Parses `argv`, runs the job and returns the exit status.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = JobSpec::try_from(&cli).and_then(|job| {
        let out = execute(&job)?;
        emit(&job, &out.report)?;
        Ok(out.status)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("meanlab: error: {e}");
            EXIT_USAGE
        }
    }
}
