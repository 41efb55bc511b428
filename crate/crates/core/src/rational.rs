//! Reduction of rational weightings to uniform ones by repeating values.

use num_integer::Integer;

use crate::error::{MeanError, Result};
use crate::vectors::{uniform, ValueVector, Weighting};

/// Default bound on the common denominator `k` in [`expand_rational`].
pub const DEFAULT_EXPANSION_CAP: u64 = 1_000_000;

/// Rewrites `(w, x)` with `w_i = k_i / k` as `(u_k, x')`, where `x'` repeats
/// `x_i` exactly `k_i` times. Zero-weight coordinates disappear.
pub fn expand_rational(w: &Weighting, x: &ValueVector) -> Result<(Weighting, ValueVector)> {
    expand_rational_with_cap(w, x, DEFAULT_EXPANSION_CAP)
}

pub fn expand_rational_with_cap(
    w: &Weighting,
    x: &ValueVector,
    cap: u64,
) -> Result<(Weighting, ValueVector)> {
    let exact = w.exact().ok_or(MeanError::MissingExact)?;
    if exact.len() != x.len() {
        return Err(MeanError::LengthMismatch {
            expected: exact.len(),
            found: x.len(),
        });
    }
    let mut k: u128 = 1;
    for r in exact {
        k = k.lcm(&(*r.denom() as u128));
        if k > cap as u128 {
            return Err(MeanError::ExpansionOverflow { needed: k, cap });
        }
    }
    let mut expanded = Vec::with_capacity(k as usize);
    for (r, &xi) in exact.iter().zip(x.entries()) {
        let copies = *r.numer() as u128 * (k / *r.denom() as u128);
        expanded.extend(std::iter::repeat_n(xi, copies as usize));
    }
    debug_assert_eq!(expanded.len() as u128, k);
    Ok((uniform(k as usize)?, ValueVector::new(expanded)?))
}
