//! Weightings, value vectors and signed vectors on finite index sets.
//!
//! Index sets are always `{0, …, n-1}`. Tensor products flatten `(i, j)`
//! row-major, i.e. to position `i * m + j`, everywhere in the crate.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MeanError, Result};

/// Exact weight entries.
pub type Rational = Ratio<i64>;

/// Maximum deviation of a weighting's float sum from 1.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn canonical_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// A probability vector `w` on a finite index set, optionally carrying an
/// exact rational mirror of its entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct Weighting {
    entries: Vec<f64>,
    exact: Option<Vec<Rational>>,
}

impl Weighting {
    /// Validates entries: nonempty, finite, nonnegative, summing to 1
    /// within [`WEIGHT_SUM_TOL`]. Nothing is renormalized.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(MeanError::InvalidWeighting("empty weighting".into()));
        }
        let mut entries = entries;
        for (i, w) in entries.iter_mut().enumerate() {
            if w.is_nan() {
                return Err(MeanError::NotANumber);
            }
            if !w.is_finite() || *w < 0.0 {
                return Err(MeanError::InvalidWeighting(format!(
                    "entry {i} is {w}, expected a finite nonnegative number"
                )));
            }
            *w = canonical_zero(*w);
        }
        let sum = compensated_sum(entries.iter().copied());
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(MeanError::InvalidWeighting(format!(
                "entries sum to {sum}, expected 1"
            )));
        }
        Ok(Weighting {
            entries,
            exact: None,
        })
    }

    /// Scales nonnegative entries so they sum to 1.
    pub fn normalize(raw: Vec<f64>) -> Result<Self> {
        if raw.iter().any(|v| v.is_nan()) {
            return Err(MeanError::NotANumber);
        }
        if raw.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(MeanError::InvalidWeighting(
                "cannot normalize negative or infinite entries".into(),
            ));
        }
        let sum = compensated_sum(raw.iter().copied());
        if sum <= 0.0 {
            return Err(MeanError::InvalidWeighting(
                "cannot normalize a zero vector".into(),
            ));
        }
        Weighting::new(raw.into_iter().map(|v| v / sum).collect())
    }

    /// Builds a weighting from exact rationals, which must sum to exactly 1.
    pub fn from_rationals(exact: Vec<Rational>) -> Result<Self> {
        if exact.is_empty() {
            return Err(MeanError::InvalidWeighting("empty weighting".into()));
        }
        let mut total = Rational::zero();
        for (i, r) in exact.iter().enumerate() {
            if *r < Rational::zero() {
                return Err(MeanError::InvalidWeighting(format!(
                    "entry {i} is negative ({r})"
                )));
            }
            total = total.checked_add(r).ok_or_else(|| {
                MeanError::InvalidWeighting("rational sum overflows i64".into())
            })?;
        }
        if total != Rational::from_integer(1) {
            return Err(MeanError::InvalidWeighting(format!(
                "rational entries sum to {total}, expected 1"
            )));
        }
        let entries = exact.iter().map(rational_to_f64).collect();
        Ok(Weighting {
            entries,
            exact: Some(exact),
        })
    }

    /// Builds from integer counts `k_i`, giving weights `k_i / Σk`.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(MeanError::InvalidWeighting("all counts are zero".into()));
        }
        let total = i64::try_from(total)
            .map_err(|_| MeanError::InvalidWeighting("count total overflows i64".into()))?;
        let exact = counts
            .iter()
            .map(|&k| Rational::new(k as i64, total))
            .collect();
        Weighting::from_rationals(exact)
    }

    /// Entries produced by operations that preserve total mass (tensor,
    /// pushforward). Float rounding may push the sum slightly past the
    /// construction tolerance, so it is not rechecked here.
    pub(crate) fn from_parts(entries: Vec<f64>, exact: Option<Vec<Rational>>) -> Self {
        debug_assert!(!entries.is_empty());
        debug_assert!(entries.iter().all(|w| w.is_finite() && *w >= 0.0));
        Weighting { entries, exact }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn exact(&self) -> Option<&[Rational]> {
        self.exact.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Indices carrying strictly positive weight.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 0.0)
            .map(|(i, _)| i)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.entries.iter().all(|w| *w > 0.0)
    }

    /// Drops the exact mirror, keeping the float entries.
    pub fn without_exact(mut self) -> Self {
        self.exact = None;
        self
    }
}

impl From<Weighting> for Vec<f64> {
    fn from(w: Weighting) -> Self {
        w.entries
    }
}

impl TryFrom<Vec<f64>> for Weighting {
    type Error = MeanError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Weighting::new(v)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The uniform weighting `u_n = (1/n, …, 1/n)`, with exact entries.
pub fn uniform(n: usize) -> Result<Weighting> {
    if n == 0 {
        return Err(MeanError::InvalidWeighting(
            "uniform weighting needs n >= 1".into(),
        ));
    }
    let n = i64::try_from(n)
        .map_err(|_| MeanError::InvalidWeighting("n overflows i64".into()))?;
    let exact = vec![Rational::new(1, n); n as usize];
    Ok(Weighting {
        entries: vec![1.0 / n as f64; n as usize],
        exact: Some(exact),
    })
}

/// A vector of finite nonnegative reals, length at least 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct ValueVector {
    entries: Vec<f64>,
}

impl ValueVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(MeanError::InvalidValues("empty value vector".into()));
        }
        let mut entries = entries;
        for (i, x) in entries.iter_mut().enumerate() {
            if x.is_nan() {
                return Err(MeanError::NotANumber);
            }
            if !x.is_finite() || *x < 0.0 {
                return Err(MeanError::InvalidValues(format!(
                    "entry {i} is {x}, expected a finite nonnegative number"
                )));
            }
            *x = canonical_zero(*x);
        }
        Ok(ValueVector { entries })
    }

    /// Constant vector `(c, …, c)`.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        ValueVector::new(vec![c; n])
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `c · x`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        ValueVector::new(self.entries.iter().map(|x| x * c).collect())
    }
}

impl From<ValueVector> for Vec<f64> {
    fn from(x: ValueVector) -> Self {
        x.entries
    }
}

impl TryFrom<Vec<f64>> for ValueVector {
    type Error = MeanError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        ValueVector::new(v)
    }
}

/// A vector of finite reals of any length, including zero.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct SignedVector {
    entries: Vec<f64>,
}

impl SignedVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.iter().any(|x| x.is_nan()) {
            return Err(MeanError::NotANumber);
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(MeanError::InvalidValues(
                "signed vector entries must be finite".into(),
            ));
        }
        Ok(SignedVector { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(|x_i|)_i`, or `None` for the empty vector.
    pub fn abs(&self) -> Option<ValueVector> {
        if self.entries.is_empty() {
            None
        } else {
            Some(ValueVector {
                entries: self.entries.iter().map(|x| canonical_zero(x.abs())).collect(),
            })
        }
    }
}

impl From<SignedVector> for Vec<f64> {
    fn from(x: SignedVector) -> Self {
        x.entries
    }
}

impl TryFrom<Vec<f64>> for SignedVector {
    type Error = MeanError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        SignedVector::new(v)
    }
}

fn outer(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &ai in a {
        out.extend(b.iter().map(|&bj| ai * bj));
    }
    out
}

/// `w ⊗ v`, row-major. Exact entries are carried when both sides have them
/// and the products fit in `i64`.
pub fn tensor_weights(w: &Weighting, v: &Weighting) -> Weighting {
    let entries = outer(&w.entries, &v.entries);
    let exact = match (&w.exact, &v.exact) {
        (Some(a), Some(b)) => {
            let mut out = Vec::with_capacity(a.len() * b.len());
            let mut ok = true;
            'outer: for ai in a {
                for bj in b {
                    match ai.checked_mul(bj) {
                        Some(r) => out.push(r),
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            ok.then_some(out)
        }
        _ => None,
    };
    Weighting::from_parts(entries, exact)
}

/// `x ⊗ y`, row-major. Fails only if a product overflows to infinity.
pub fn tensor_values(x: &ValueVector, y: &ValueVector) -> Result<ValueVector> {
    ValueVector::new(outer(&x.entries, &y.entries))
}

/// `x ⊗ y` for signed vectors, row-major.
pub fn tensor_signed(x: &SignedVector, y: &SignedVector) -> Result<SignedVector> {
    SignedVector::new(outer(&x.entries, &y.entries))
}
