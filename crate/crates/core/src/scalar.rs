//! Number types used by the exact and floating evaluation paths.
//!
//! Everything that only adds, multiplies and takes integer powers is written
//! once against [`Scalar`] and runs either on `f64` or on [`BigRational`].
//! Fractional powers (`r`-th roots, `q^alpha` with non-integer `alpha`) only
//! exist on the `f64` side.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Exact conversion for rationals (every finite `f64` is a dyadic rational).
    fn from_f64(x: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return Self::one() / self.powi(-n);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// True when `sum` is zero up to the rounding noise of adding terms of
    /// magnitude `scale`. Exact types only accept a true zero.
    fn cancelled(sum: &Self, scale: &Self) -> bool;

    /// Equality used when shrinking windows onto tails.
    fn close(a: &Self, b: &Self) -> bool;

    fn binomial(n: u32, k: u32) -> Self {
        if k > n {
            return Self::zero();
        }
        let k = k.min(n - k);
        let mut acc: i128 = 1;
        for i in 0..k as i128 {
            acc = acc * (n as i128 - i) / (i + 1);
        }
        Self::from_i64(acc as i64)
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn powi(&self, n: i64) -> Self {
        if let Ok(n) = i32::try_from(n) {
            f64::powi(*self, n)
        } else {
            self.powf(n as f64)
        }
    }

    fn cancelled(sum: &Self, scale: &Self) -> bool {
        sum.abs() <= 1e-13 * scale.abs()
    }

    fn close(a: &Self, b: &Self) -> bool {
        let scale = a.abs().max(b.abs());
        (a - b).abs() <= 1e-13 * scale || (a == b)
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn cancelled(sum: &Self, _scale: &Self) -> bool {
        sum.is_zero()
    }

    fn close(a: &Self, b: &Self) -> bool {
        a == b
    }
}

/// A computed quantity that is either exact or a float approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(x) => Scalar::to_f64(x),
            Value::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(x) => Some(x),
            Value::Float(_) => None,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(x) => write!(f, "{x}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// `n/d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Relative difference, with a floor so that comparisons against zero work.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_matches_for_both_paths() {
        let q = ratio(3, 1);
        assert_eq!(q.powi(-2), ratio(1, 9));
        assert_eq!(q.powi(0), ratio(1, 1));
        assert_eq!(Scalar::powi(&2.0f64, -3), 0.125);
    }

    #[test]
    fn binomial_small() {
        assert_eq!(<f64 as Scalar>::binomial(5, 2), 10.0);
        assert_eq!(<BigRational as Scalar>::binomial(6, 3), ratio(20, 1));
        assert_eq!(<f64 as Scalar>::binomial(2, 3), 0.0);
    }

    #[test]
    fn float_cancellation_is_relative() {
        assert!(f64::cancelled(&1e-17, &1.0));
        assert!(!f64::cancelled(&1e-10, &1.0));
        assert!(!BigRational::cancelled(&ratio(1, 1_000_000_000), &ratio(1, 1)));
    }
}
