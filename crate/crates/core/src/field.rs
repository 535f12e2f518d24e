//! Measure theory of a local field with residue parameter `q`, and a concrete
//! digit model of the `p`-series field `F_p((t))` used as a sampling oracle.
//!
//! Haar measure is normalised so that `|B^0| = 1`. Balls and spheres are
//! indexed by the valuation: `B^k = {|y| ≤ q^{-k}}`, `S^k = {|y| = q^{-k}}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Value};

/// Residue parameter and numeric policy of the field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldParams {
    pub q: u64,
    /// Characteristic used by the digit model; `Some(p)` forces `q = p`.
    pub p: Option<u32>,
    /// Target relative tolerance for certified truncations on the float path.
    pub tol: f64,
}

impl FieldParams {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 || !is_prime_power(q) {
            return Err(Error::InvalidParameter(format!(
                "q must be a prime power ≥ 2, got {q}"
            )));
        }
        Ok(FieldParams { q, p: None, tol: 1e-14 })
    }

    /// Field that also supports digit arithmetic: `F_p((t))`.
    pub fn p_series(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameter(format!("p must be prime, got {p}")));
        }
        Ok(FieldParams {
            q: p as u64,
            p: Some(p),
            tol: 1e-14,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn qf(&self) -> f64 {
        self.q as f64
    }

    pub fn q_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.q))
    }

    /// `q` in whichever scalar the caller computes with.
    pub fn q_as<T: Scalar>(&self) -> T {
        T::from_i64(self.q as i64)
    }

    /// `1 − 1/q`, the measure of the unit sphere.
    pub fn unit_sphere<T: Scalar>(&self) -> T {
        T::one() - T::one() / self.q_as::<T>()
    }

    pub fn digit_prime(&self) -> Result<u32> {
        self.p.ok_or_else(|| {
            Error::InvalidParameter("digit arithmetic needs a prime p with q = p".into())
        })
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        return true; // n itself is prime
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// `|B^k| = q^{-k}`.
pub fn ball_measure(params: &FieldParams, k: i64) -> BigRational {
    params.q_rat().powi(-k)
}

/// `|S^k| = q^{-k}(1 − q^{-1})`.
pub fn sphere_measure(params: &FieldParams, k: i64) -> BigRational {
    ball_measure(params, k) * params.unit_sphere::<BigRational>()
}

/// `ω_α(S^k) = q^{-kα} |S^k|`.
pub fn weighted_sphere_measure(params: &FieldParams, k: i64, alpha: f64) -> Value {
    match integer_alpha(alpha) {
        Some(a) => Value::Exact(params.q_rat().powi(-k * a) * sphere_measure(params, k)),
        None => Value::Float(params.qf().powf(-(k as f64) * alpha) * Scalar::to_f64(&sphere_measure(params, k))),
    }
}

/// `ω_α(B^k) = ∫_{B^k} |y|^α dy = (q−1) q^{α−k(α+1)} / (q^{α+1} − 1)`.
///
/// Exact when `α` is a non-negative integer. `α = 0` is only accepted with
/// `allow_zero_alpha` and then reduces to [`ball_measure`].
pub fn weighted_ball_measure(
    params: &FieldParams,
    k: i64,
    alpha: f64,
    allow_zero_alpha: bool,
) -> Result<Value> {
    if !(alpha > 0.0 || (alpha == 0.0 && allow_zero_alpha)) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
    }
    let q = params.q_rat();
    Ok(match integer_alpha(alpha) {
        Some(a) => {
            let num = (q.clone() - BigRational::one()) * q.powi(a - k * (a + 1));
            let den = q.powi(a + 1) - BigRational::one();
            Value::Exact(num / den)
        }
        None => {
            let qf = params.qf();
            Value::Float((qf - 1.0) * qf.powf(alpha - k as f64 * (alpha + 1.0)) / (qf.powf(alpha + 1.0) - 1.0))
        }
    })
}

pub(crate) fn integer_alpha(alpha: f64) -> Option<i64> {
    (alpha >= 0.0 && alpha.fract() == 0.0 && alpha <= 64.0).then_some(alpha as i64)
}

/// Element of `F_p((t))` known modulo `t^depth`.
///
/// `digits[i]` is the coefficient of `t^{valuation + i}`; the leading digit is
/// nonzero. The zero element has no valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentElement {
    p: u32,
    valuation: Option<i64>,
    digits: Vec<u32>,
    depth: i64,
}

impl LaurentElement {
    /// Builds `Σ digits[i] t^{start+i}` modulo `t^depth`, normalising leading zeros.
    pub fn from_digits(p: u32, start: i64, digits: Vec<u32>, depth: i64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameter(format!("p must be prime, got {p}")));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::InvalidParameter(format!("digit {d} out of range for p = {p}")));
        }
        if start + digits.len() as i64 > depth {
            return Err(Error::InvalidParameter(format!(
                "digits reach index {} beyond depth {depth}",
                start + digits.len() as i64 - 1
            )));
        }
        Ok(Self::normalized(p, start, digits, depth))
    }

    fn normalized(p: u32, start: i64, mut digits: Vec<u32>, depth: i64) -> Self {
        let lead = digits.iter().position(|&d| d != 0);
        match lead {
            None => Self::zero(p, depth),
            Some(i) => {
                digits.drain(..i);
                while digits.last() == Some(&0) {
                    digits.pop();
                }
                LaurentElement {
                    p,
                    valuation: Some(start + i as i64),
                    digits,
                    depth,
                }
            }
        }
    }

    pub fn zero(p: u32, depth: i64) -> Self {
        LaurentElement {
            p,
            valuation: None,
            digits: Vec::new(),
            depth,
        }
    }

    /// `coef · t^exp`.
    pub fn monomial(p: u32, exp: i64, coef: u32, depth: i64) -> Result<Self> {
        Self::from_digits(p, exp, vec![coef % p], depth.max(exp + 1))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// Coefficient of `t^i`; `None` past the known precision.
    pub fn digit(&self, i: i64) -> Option<u32> {
        if i >= self.depth {
            return None;
        }
        Some(match self.valuation {
            Some(v) if i >= v => self.digits.get((i - v) as usize).copied().unwrap_or(0),
            _ => 0,
        })
    }

    /// `|x| = p^{-v}`, and `|0| = 0`.
    pub fn norm(&self) -> BigRational {
        match self.valuation {
            None => BigRational::zero(),
            Some(v) => BigRational::from_integer(BigInt::from(self.p)).powi(-v),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.depth != other.depth {
            return Err(Error::DepthMismatch(self.depth, other.depth));
        }
        Ok(())
    }

    /// Carry-free digit-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let start = match (self.valuation, other.valuation) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => a.min(b),
        };
        let digits = (start..self.depth)
            .map(|i| (self.digit(i).unwrap_or(0) + other.digit(i).unwrap_or(0)) % self.p)
            .collect();
        Ok(Self::normalized(self.p, start, digits, self.depth))
    }

    pub fn neg(&self) -> Self {
        let digits = self.digits.iter().map(|&d| (self.p - d) % self.p).collect();
        match self.valuation {
            None => self.clone(),
            Some(v) => Self::normalized(self.p, v, digits, self.depth),
        }
    }

    /// Laurent product. A factor of negative valuation drags unknown digits of
    /// the other factor below `depth`, so the result is known modulo
    /// `t^{depth + min(v_x, v_y, 0)}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (vx, vy) = match (self.valuation, other.valuation) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(Self::zero(self.p, self.depth)),
        };
        let depth = self.depth + vx.min(vy).min(0);
        let start = vx + vy;
        let len = (depth - start).max(0) as usize;
        let mut acc = vec![0u64; len];
        for (i, &a) in self.digits.iter().enumerate() {
            for (j, &b) in other.digits.iter().enumerate() {
                if i + j < len {
                    acc[i + j] = (acc[i + j] + a as u64 * b as u64) % self.p as u64;
                }
            }
        }
        let digits = acc.into_iter().map(|d| d as u32).collect();
        Ok(Self::normalized(self.p, start, digits, depth))
    }
}

/// Where to sample from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Ball(i64),
    Sphere(i64),
}

/// Seeded sampler of normalised Haar measure restricted to a ball or sphere.
pub struct HaarSampler {
    p: u32,
    rng: ChaCha8Rng,
}

impl HaarSampler {
    pub fn new(params: &FieldParams, seed: u64) -> Result<Self> {
        Ok(HaarSampler {
            p: params.digit_prime()?,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Uniform digits on indices `[k, k + depth)`; on a sphere the leading
    /// digit is uniform on `[1, p)`.
    pub fn sample(&mut self, region: Region, depth: usize) -> Result<LaurentElement> {
        if depth < 1 {
            return Err(Error::InvalidParameter("sample depth must be ≥ 1".into()));
        }
        let (k, sphere) = match region {
            Region::Ball(k) => (k, false),
            Region::Sphere(k) => (k, true),
        };
        let mut digits = Vec::with_capacity(depth);
        for i in 0..depth {
            let d = if i == 0 && sphere {
                self.rng.random_range(1..self.p)
            } else {
                self.rng.random_range(0..self.p)
            };
            digits.push(d);
        }
        Ok(LaurentElement::normalized(self.p, k, digits, k + depth as i64))
    }
}

/// One element drawn with a fresh sampler.
pub fn sample_haar(params: &FieldParams, region: Region, depth: usize, seed: u64) -> Result<LaurentElement> {
    HaarSampler::new(params, seed)?.sample(region, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn fp(q: u64) -> FieldParams {
        FieldParams::new(q).unwrap()
    }

    #[test]
    fn ball_and_sphere_examples() {
        assert_eq!(ball_measure(&fp(2), 0), ratio(1, 1));
        assert_eq!(ball_measure(&fp(2), 3), ratio(1, 8));
        assert_eq!(ball_measure(&fp(3), -2), ratio(9, 1));
        assert_eq!(sphere_measure(&fp(2), 0), ratio(1, 2));
        assert_eq!(sphere_measure(&fp(2), 1), ratio(1, 4));
        // |B^{-1}| − |B^0| counts the 4 nonzero leading digits at index −1
        assert_eq!(sphere_measure(&fp(5), -1), ball_measure(&fp(5), -1) - ball_measure(&fp(5), 0));
        assert_eq!(sphere_measure(&fp(5), -1), ratio(4, 1));
    }

    #[test]
    fn weighted_examples() {
        let v = weighted_ball_measure(&fp(2), 0, 1.0, false).unwrap();
        assert_eq!(v.exact().unwrap(), &ratio(2, 3));
        let v = weighted_ball_measure(&fp(2), 5, 0.0, true).unwrap();
        assert_eq!(v.exact().unwrap(), &ratio(1, 32));
        let v = weighted_ball_measure(&fp(3), 1, 2.0, false).unwrap();
        assert_eq!(v.exact().unwrap(), &ratio(1, 39));
        assert!(weighted_ball_measure(&fp(3), 1, 0.0, false).is_err());
        assert!(weighted_ball_measure(&fp(3), 1, -0.5, true).is_err());
    }

    #[test]
    fn weighted_float_path_agrees_with_sphere_sum() {
        let params = fp(3);
        let alpha = 0.5;
        let w = weighted_ball_measure(&params, 2, alpha, false).unwrap().to_f64();
        let sum: f64 = (2..200).map(|l| weighted_sphere_measure(&params, l, alpha).to_f64()).sum();
        assert!((w - sum).abs() / w < 1e-13);
    }

    #[test]
    fn params_validation() {
        assert!(FieldParams::new(1).is_err());
        assert!(FieldParams::new(6).is_err());
        assert!(FieldParams::new(8).is_ok());
        assert!(FieldParams::p_series(4).is_err());
        assert!(fp(4).digit_prime().is_err());
    }

    #[test]
    fn norm_examples() {
        let t2 = LaurentElement::monomial(2, 2, 1, 10).unwrap();
        assert_eq!(t2.norm(), ratio(1, 4));
        assert_eq!(LaurentElement::zero(2, 10).norm(), ratio(0, 1));
        // t^{-3} + t over F_3
        let x = LaurentElement::from_digits(3, -3, vec![1, 0, 0, 0, 1], 10).unwrap();
        assert_eq!(x.norm(), ratio(27, 1));
    }

    #[test]
    fn carry_free_addition() {
        let one = LaurentElement::monomial(2, 0, 1, 8).unwrap();
        let s = one.add(&one).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.digit(0), Some(0));
        let x = LaurentElement::from_digits(3, 0, vec![2, 1], 8).unwrap();
        let y = LaurentElement::from_digits(3, 0, vec![1, 1], 8).unwrap();
        let s = x.add(&y).unwrap();
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.digit(1), Some(2));
    }

    #[test]
    fn depth_mismatch_is_an_error() {
        let a = LaurentElement::monomial(3, 0, 1, 5).unwrap();
        let b = LaurentElement::monomial(3, 0, 1, 6).unwrap();
        assert!(matches!(a.add(&b), Err(Error::DepthMismatch(5, 6))));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn product_norm_and_precision() {
        let a = LaurentElement::monomial(5, 2, 3, 10).unwrap();
        let b = LaurentElement::monomial(5, -4, 2, 10).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.norm(), a.norm() * b.norm());
        assert_eq!(c.depth(), 6);
        assert_eq!(c.digit(-2), Some(1));
    }

    #[test]
    fn sampler_is_deterministic_and_in_region() {
        let params = FieldParams::p_series(3).unwrap();
        let a = sample_haar(&params, Region::Sphere(-2), 6, 42).unwrap();
        let b = sample_haar(&params, Region::Sphere(-2), 6, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.valuation(), Some(-2));
        assert!(sample_haar(&params, Region::Ball(0), 0, 1).is_err());
        assert!(sample_haar(&fp(4), Region::Ball(0), 3, 1).is_err());
    }
}
