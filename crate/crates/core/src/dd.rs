//! Minimal double-double arithmetic (about 106 bits of significand).
//!
//! Only what the log-domain power mean needs: add, sub, multiply, divide,
//! `exp` and `ln`. Algorithms follow the usual error-free transformations
//! (two-sum, FMA-based two-product).

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `2^k` for any `k` that keeps the scaled value in range.
fn scale2(v: f64, k: i32) -> f64 {
    let mut v = v;
    let mut k = k;
    while k > 1000 {
        v *= f64::from_bits(((1023 + 1000) as u64) << 52);
        k -= 1000;
    }
    while k < -1000 {
        v *= f64::from_bits(((1023 - 1000) as u64) << 52);
        k += 1000;
    }
    v * f64::from_bits(((1023 + k) as u64) << 52)
}

/// Splits a positive finite `x` into `(m, e)` with `x = m · 2^e`, `m ∈ [1, 2)`.
fn split_exponent(x: f64) -> (f64, i32) {
    debug_assert!(x > 0.0 && x.is_finite());
    let (x, bias) = if x < f64::MIN_POSITIVE {
        (x * 2f64.powi(64), -64)
    } else {
        (x, 0)
    };
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i32 - 1023;
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1023 << 52));
    (m, e + bias)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    fn scale(self, k: i32) -> Dd {
        Dd {
            hi: scale2(self.hi, k),
            lo: scale2(self.lo, k),
        }
    }

    /// `e^self`. Saturates to 0 / ∞ outside the double range.
    pub fn exp(self) -> Dd {
        const SQUARINGS: i32 = 10;
        if self.hi < -746.0 {
            return Dd::ZERO;
        }
        if self.hi > 710.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).scale(-SQUARINGS);

        // expm1(r) by Taylor series; |r| < 4e-4 so 10 terms are plenty.
        let mut term = r;
        let mut sum = r;
        for n in 2..=12 {
            term = (term * r) / Dd::from_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // (1 + s)^2 - 1 = 2s + s^2
        for _ in 0..SQUARINGS {
            sum = sum.mul_f64(2.0) + sum * sum;
        }
        let one_plus = sum + Dd::ONE;
        let k = k as i32;
        // keep intermediate scaling clear of the subnormal range
        if k < -1000 {
            one_plus.scale(-1000).scale(k + 1000)
        } else {
            one_plus.scale(k)
        }
    }

    /// Natural log of a positive value.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        if self.hi == 1.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        let (m, e) = split_exponent(self.hi);
        let reduced = self.scale(-e);
        debug_assert!((reduced.hi - m).abs() <= f64::EPSILON * 4.0);
        // one Newton step on exp(y) = a doubles the ~53 correct bits
        let y0 = Dd::from_f64(reduced.hi.ln());
        let y1 = y0 + reduced * (-y0).exp() - Dd::ONE;
        y1 + LN2.mul_f64(e as f64)
    }
}

impl Add for Dd {
    type Output = Dd;

    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;

    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;

    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;

    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;

    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}
