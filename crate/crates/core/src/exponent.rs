//! Extended-real exponents for the power-mean family.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::MeanError;

/// An order `p ∈ [-∞, +∞]`.
///
/// `0` and `±∞` carry their own tags because the corresponding means are
/// limits (geometric mean, min, max) rather than instances of the power
/// formula. A `Finite` value is never zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    NegInf,
    Zero,
    Finite(f64),
    PosInf,
}

impl Exponent {
    /// Build from a plain float, mapping `0.0` and `±∞` onto their tags.
    pub fn new(p: f64) -> Result<Self, MeanError> {
        if p.is_nan() {
            return Err(MeanError::NotANumber);
        }
        Ok(if p == f64::INFINITY {
            Exponent::PosInf
        } else if p == f64::NEG_INFINITY {
            Exponent::NegInf
        } else if p == 0.0 {
            Exponent::Zero
        } else {
            Exponent::Finite(p)
        })
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::NegInf => f64::NEG_INFINITY,
            Exponent::Zero => 0.0,
            Exponent::Finite(p) => p,
            Exponent::PosInf => f64::INFINITY,
        }
    }

    /// `1/p`, with `1/±∞ = 0` and `1/0 = +∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::NegInf | Exponent::PosInf => 0.0,
            Exponent::Zero => f64::INFINITY,
            Exponent::Finite(p) => 1.0 / p,
        }
    }

    /// True when `p ∈ [1, ∞]`, the range in which `‖·‖_p` is a norm.
    pub fn is_norm_order(self) -> bool {
        match self {
            Exponent::PosInf => true,
            Exponent::Finite(p) => p >= 1.0,
            _ => false,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::NegInf | Exponent::PosInf)
    }
}

impl Eq for Exponent {}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_f64().total_cmp(&other.as_f64())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::NegInf => f.write_str("-inf"),
            Exponent::Zero => f.write_str("0"),
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::PosInf => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = MeanError;

    /// Accepts a decimal, `0`, `inf` / `+inf` / `infinity`, or `-inf`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => return Ok(Exponent::PosInf),
            "-inf" | "-infinity" => return Ok(Exponent::NegInf),
            _ => {}
        }
        let p: f64 = t
            .parse()
            .map_err(|_| MeanError::ExponentOutOfRange(format!("cannot parse exponent {s:?}")))?;
        if !p.is_finite() {
            return Err(MeanError::ExponentOutOfRange(format!(
                "cannot parse exponent {s:?}"
            )));
        }
        Exponent::new(p)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
