//! Identifying the exponent of a mean system and checking that it agrees
//! with the matching power mean.
//!
//! `θ(s) = M((s, 1 − s), (1, 0))` is multiplicative in `s` for any
//! multiplicative system, so `θ(s) = s^α` and `p = 1/α`. Agreement is then
//! checked on uniform weights, on rational weights (which reduce to uniform
//! ones by repeating values) and on irrational weights squeezed between two
//! rational ones.

mod recover;
mod sandwich;
mod verify;

pub use recover::{recover_exponent, theta, RecoveryResult, THETA_GRID_STEPS, THETA_RANGE_TOL, THETA_ZERO};
pub use sandwich::{approx_sandwich, grid_denominator, SandwichResult, SandwichValues};
pub use verify::{
    verify_characterization, weight_gradient_spread, CharacterizationReport, Stage, StageReport,
    StageRow, StageWitness, Verdict, DEFAULT_LAW_PAIRS, MAX_DENOMINATOR, SANDWICH_DELTAS,
};
