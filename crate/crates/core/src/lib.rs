//! Weighted power means, p-norms, and tools for testing whether an
//! arbitrary mean system is a power mean.
//!
//! A mean system maps a weighting `w` (a probability vector) and a
//! nonnegative value vector `x` of the same length to a number. The
//! built-in family is `M_p(w, x) = (Σ w_i x_i^p)^{1/p}` with the usual
//! limits at `p = 0, ±∞`. Other systems can be written in a small
//! expression language (see [`dsl`]).

pub mod characterization;
mod dd;
pub mod dsl;
mod error;
mod exponent;
pub mod harness;
mod index_map;
pub mod oracle;
mod power_mean;
mod rational;
mod system;
mod vectors;

pub use characterization::{
    approx_sandwich, recover_exponent, theta, verify_characterization, CharacterizationReport,
    RecoveryResult, SandwichResult, Verdict,
};
pub use dsl::{eval_mean_expr, parse_mean_expr, MeanExpr, ParseError};
pub use error::{MeanError, Result};
pub use exponent::Exponent;
pub use harness::{
    check_consistency, check_convexity, check_functoriality, check_homogeneity,
    check_monotonicity, check_multiplicativity, check_repetition, check_symmetry,
    check_transfer, check_zero_weight, run_full_suite, CheckConfig, CheckReport, CheckStatus,
    Counterexample, PropertyKind, SuiteReport,
};
pub use index_map::{embed, pullback, pushforward, IndexMap};
pub use oracle::power_mean_oracle;
pub use power_mean::{p_norm, power_mean};
pub use rational::{expand_rational, expand_rational_with_cap, DEFAULT_EXPANSION_CAP};
pub use system::{builtin_power_mean_system, norm_from_mean, DslSystem, MeanSystem, PowerMeanSystem};
pub use vectors::{
    compensated_sum, tensor_signed, tensor_values, tensor_weights, uniform, Rational,
    SignedVector, ValueVector, Weighting, WEIGHT_SUM_TOL,
};
