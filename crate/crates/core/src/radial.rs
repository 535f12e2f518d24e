//! Radial functions on the field as sequences indexed by valuation.
//!
//! `a_l` is the value on the sphere `|x| = q^{-l}`. A function is a finite
//! window `[lo, hi]` of explicit values plus an exponential-polynomial tail on
//! each side; a zero tail means the function vanishes there. Single
//! geometric tails `c·σ^l` cover indicators and `⟨y⟩^{-N}`; polynomial factors
//! appear once operators are applied (the HLP image of an indicator grows
//! linearly in `l`).

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, Side};
use crate::expoly::{ExpPoly, Group, Limit, Poly};
use crate::field::FieldParams;
use crate::scalar::Scalar;
use crate::series::{certified_ln_sum, ln_add};

/// Term budget for certified tail sums.
pub(crate) const MAX_TAIL_TERMS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction<T = f64> {
    lo: i64,
    values: Vec<T>,
    lower: ExpPoly<T>,
    upper: ExpPoly<T>,
}

impl<T: Scalar> RadialFunction<T> {
    /// Window `[lo, lo + values.len() − 1]` with the given tails.
    pub fn new(lo: i64, values: Vec<T>, lower: ExpPoly<T>, upper: ExpPoly<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("window must be nonempty".into()));
        }
        for g in lower.groups().iter().chain(upper.groups()) {
            if g.sigma <= T::zero() {
                return Err(Error::InvalidParameter(format!(
                    "tail ratio must be positive, got {:?}",
                    g.sigma
                )));
            }
        }
        Ok(RadialFunction { lo, values, lower, upper })
    }

    /// Finite support, no tails.
    pub fn from_window(lo: i64, values: Vec<T>) -> Result<Self> {
        Self::new(lo, values, ExpPoly::zero(), ExpPoly::zero())
    }

    pub fn zero() -> Self {
        RadialFunction {
            lo: 0,
            values: vec![T::zero()],
            lower: ExpPoly::zero(),
            upper: ExpPoly::zero(),
        }
    }

    /// Indicator of `B^η = {|x| ≤ q^{-η}}`.
    pub fn char_ball(eta: i64) -> Self {
        RadialFunction {
            lo: eta,
            values: vec![T::one()],
            lower: ExpPoly::zero(),
            upper: ExpPoly::geometric(T::one(), T::one()),
        }
    }

    /// Indicator of `S^η = {|x| = q^{-η}}`.
    pub fn char_sphere(eta: i64) -> Self {
        RadialFunction {
            lo: eta,
            values: vec![T::one()],
            lower: ExpPoly::zero(),
            upper: ExpPoly::zero(),
        }
    }

    /// `1` on `|x| ≤ 1` and `σ^l` for `l < 0`; with `σ = q^N` this is `⟨x⟩^{-N}`.
    pub fn bracket_with_base(sigma: T) -> Self {
        RadialFunction {
            lo: 0,
            values: vec![T::one()],
            lower: ExpPoly::geometric(T::one(), sigma),
            upper: ExpPoly::geometric(T::one(), T::one()),
        }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn lower_tail(&self) -> &ExpPoly<T> {
        &self.lower
    }

    pub fn upper_tail(&self) -> &ExpPoly<T> {
        &self.upper
    }

    pub fn eval(&self, m: i64) -> T {
        if m < self.lo {
            self.lower.eval(m)
        } else if m > self.hi() {
            self.upper.eval(m)
        } else {
            self.values[(m - self.lo) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lower.is_zero() && self.upper.is_zero() && self.values.iter().all(|v| v.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RadialFunction {
            lo: self.lo,
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
            lower: self.lower.scale(c),
            upper: self.upper.scale(c),
        }
    }

    /// Pointwise sum. Tails of any shape add, so this never fails.
    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let values = (lo..=hi).map(|m| self.eval(m) + other.eval(m)).collect();
        RadialFunction {
            lo,
            values,
            lower: self.lower.add(&other.lower),
            upper: self.upper.add(&other.upper),
        }
        .canonical()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    /// `b_m = a_{m+l}`: the radial profile of `x ↦ f(τx)` with `|τ| = q^{-l}`.
    pub fn shift(&self, l: i64) -> Self {
        RadialFunction {
            lo: self.lo - l,
            values: self.values.clone(),
            lower: self.lower.shift(l),
            upper: self.upper.shift(l),
        }
    }

    /// Smallest window that still reproduces the function: edge values that
    /// the adjacent tail already produces are dropped.
    pub fn canonical(mut self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut start = 0;
        let mut end = self.values.len();
        while end - start > 1 && T::close(&self.values[start], &self.lower.eval(self.lo + start as i64)) {
            start += 1;
        }
        while end - start > 1 && T::close(&self.values[end - 1], &self.upper.eval(self.lo + end as i64 - 1)) {
            end -= 1;
        }
        self.values.truncate(end);
        self.values.drain(..start);
        self.lo += start as i64;
        self
    }

    /// Same function, possibly with a different window.
    pub fn equivalent(&self, other: &Self) -> bool {
        let minus = -T::one();
        if !self.lower.add(&other.lower.scale(&minus)).is_zero() || !self.upper.add(&other.upper.scale(&minus)).is_zero() {
            return false;
        }
        let lo = self.lo.min(other.lo) - 1;
        let hi = self.hi().max(other.hi()) + 1;
        (lo..=hi).all(|m| T::close(&self.eval(m), &other.eval(m)))
    }

    /// Explicit values on `[lo, hi]`, with the tails kept for everything outside.
    pub fn widened(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.min(self.lo);
        let hi = hi.max(self.hi());
        RadialFunction {
            lo,
            values: (lo..=hi).map(|m| self.eval(m)).collect(),
            lower: self.lower.clone(),
            upper: self.upper.clone(),
        }
    }

    /// Haar integral `Σ_l a_l q^{-l}(1 − 1/q)`, tails in closed form.
    pub fn haar_integral(&self, field: &FieldParams) -> Result<T> {
        let q: T = field.q_as();
        let inv_q = T::one() / q.clone();
        let mut total = T::zero();
        for (i, v) in self.values.iter().enumerate() {
            total = total + v.clone() * q.powi(-(self.lo + i as i64));
        }
        let lower = self
            .lower
            .scale_sigma(&inv_q)
            .sum_range(Limit::NegInf, Limit::At(self.lo - 1))
            .map_err(|_| Error::NonIntegrable(Side::Lower))?;
        let upper = self
            .upper
            .scale_sigma(&inv_q)
            .sum_range(Limit::At(self.hi() + 1), Limit::PosInf)
            .map_err(|_| Error::NonIntegrable(Side::Upper))?;
        Ok((total + lower + upper) * field.unit_sphere::<T>())
    }

    pub fn to_f64(&self) -> RadialFunction<f64> {
        let conv = |x: &T| Some(x.to_f64());
        RadialFunction {
            lo: self.lo,
            values: self.values.iter().map(Scalar::to_f64).collect(),
            lower: self.lower.try_map(conv).unwrap_or_else(ExpPoly::zero),
            upper: self.upper.try_map(conv).unwrap_or_else(ExpPoly::zero),
        }
    }
}

impl RadialFunction<f64> {
    /// The same function on the exact rational path. Every finite `f64` is a
    /// dyadic rational, so this only fails on non-finite entries.
    pub fn to_exact(&self) -> Option<RadialFunction<BigRational>> {
        let conv = |x: &f64| BigRational::from_float(*x);
        Some(RadialFunction {
            lo: self.lo,
            values: self.values.iter().map(conv).collect::<Option<Vec<_>>>()?,
            lower: self.lower.try_map(conv)?,
            upper: self.upper.try_map(conv)?,
        })
    }

    /// `ln |a_l|`, computed without forming `σ^l` for far-out tail indices.
    pub(crate) fn ln_abs_at(&self, l: i64) -> f64 {
        if l < self.lo {
            self.lower.ln_abs(l)
        } else if l > self.hi() {
            self.upper.ln_abs(l)
        } else {
            self.values[(l - self.lo) as usize].abs().ln()
        }
    }

    /// `ln[(1 − 1/q) |a_l|^r q^{-l(α+1)}]`, the weighted `r`-th power mass of `S^l`.
    pub(crate) fn ln_sphere_mass(&self, field: &FieldParams, l: i64, r: f64, alpha: f64) -> f64 {
        let a = self.ln_abs_at(l);
        if a == f64::NEG_INFINITY {
            return a;
        }
        let q = field.qf();
        (1.0 - 1.0 / q).ln() + r * a - l as f64 * (alpha + 1.0) * q.ln()
    }

    /// Log of the upper-tail mass `Σ_{l≥k}` for `k > hi`.
    pub(crate) fn ln_upper_mass(&self, field: &FieldParams, k: i64, r: f64, alpha: f64) -> Result<f64> {
        debug_assert!(k > self.hi());
        if self.upper.is_zero() {
            return Ok(f64::NEG_INFINITY);
        }
        let lnq = field.qf().ln();
        let lnw = (1.0 - 1.0 / field.qf()).ln();
        if let Some((c, sigma)) = self.upper.as_geometric() {
            let ln_rho = r * sigma.ln() - (alpha + 1.0) * lnq;
            if ln_rho >= 0.0 {
                return Err(Error::NonIntegrable(Side::Upper));
            }
            return Ok(lnw + r * c.abs().ln() + k as f64 * ln_rho - (-ln_rho.exp_m1()).ln());
        }
        let (m, d, s) = self.upper.majorant();
        let ln_rho = r * s.ln() - (alpha + 1.0) * lnq;
        if ln_rho >= 0.0 {
            return Err(Error::NonIntegrable(Side::Upper));
        }
        let mut acc = f64::NEG_INFINITY;
        for l in k..1 {
            acc = ln_add(acc, self.ln_sphere_mass(field, l, r, alpha));
        }
        let tail = certified_ln_sum(
            k.max(1),
            |l| self.ln_sphere_mass(field, l, r, alpha),
            lnw + r * m.ln(),
            d as f64 * r,
            ln_rho.exp(),
            field.tol,
            MAX_TAIL_TERMS,
        )
        .ok_or_else(|| Error::NoConvergence("upper tail of a weighted ball integral".into()))?;
        Ok(ln_add(acc, tail))
    }

    /// Log of the lower-tail mass `Σ_{l<lo}`, part of the total weighted integral.
    pub(crate) fn ln_lower_mass(&self, field: &FieldParams, r: f64, alpha: f64) -> Result<f64> {
        if self.lower.is_zero() {
            return Ok(f64::NEG_INFINITY);
        }
        let lnq = field.qf().ln();
        let lnw = (1.0 - 1.0 / field.qf()).ln();
        // n = −l runs over n ≥ 1 − lo, where the weight q^{-l(α+1)} is (q^{α+1})^n
        let start = 1 - self.lo;
        if let Some((c, sigma)) = self.lower.as_geometric() {
            let ln_rho = -r * sigma.ln() + (alpha + 1.0) * lnq;
            if ln_rho >= 0.0 {
                return Err(Error::NonIntegrable(Side::Lower));
            }
            return Ok(lnw + r * c.abs().ln() + start as f64 * ln_rho - (-ln_rho.exp_m1()).ln());
        }
        let (m, d, s) = self.lower.reflect().majorant();
        let ln_rho = r * s.ln() + (alpha + 1.0) * lnq;
        if ln_rho >= 0.0 {
            return Err(Error::NonIntegrable(Side::Lower));
        }
        let mut acc = f64::NEG_INFINITY;
        for n in start..1 {
            acc = ln_add(acc, self.ln_sphere_mass(field, -n, r, alpha));
        }
        let tail = certified_ln_sum(
            start.max(1),
            |n| self.ln_sphere_mass(field, -n, r, alpha),
            lnw + r * m.ln(),
            d as f64 * r,
            ln_rho.exp(),
            field.tol,
            MAX_TAIL_TERMS,
        )
        .ok_or_else(|| Error::NoConvergence("lower tail of a weighted integral".into()))?;
        Ok(ln_add(acc, tail))
    }

    /// `ln ∫_{B^k} |f|^r |y|^α dy`.
    pub(crate) fn ln_weighted_ball_integral(&self, field: &FieldParams, k: i64, r: f64, alpha: f64) -> Result<f64> {
        if !(r >= 1.0) || !(alpha >= 0.0) {
            return Err(Error::InvalidParameter(format!("need r ≥ 1 and α ≥ 0, got r = {r}, α = {alpha}")));
        }
        let hi = self.hi();
        let mut total = self.ln_upper_mass(field, k.max(hi + 1), r, alpha)?;
        for l in (k..=hi).rev() {
            total = ln_add(total, self.ln_sphere_mass(field, l, r, alpha));
        }
        Ok(total)
    }

    /// `∫_{B^k} |f|^r |y|^α dy = Σ_{l≥k} |a_l|^r q^{-lα} q^{-l}(1 − 1/q)`.
    pub fn weighted_ball_integral(&self, field: &FieldParams, k: i64, r: f64, alpha: f64) -> Result<f64> {
        Ok(self.ln_weighted_ball_integral(field, k, r, alpha)?.exp())
    }

    /// `∫_K |f|^r |y|^α dy`.
    pub fn weighted_integral(&self, field: &FieldParams, r: f64, alpha: f64) -> Result<f64> {
        let inner = self.ln_weighted_ball_integral(field, self.lo, r, alpha)?;
        Ok(ln_add(inner, self.ln_lower_mass(field, r, alpha)?).exp())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// `zero`, `char_ball:η`, `char_sphere:η`, `bracket:N` (that is `⟨x⟩^{-N}`
    /// for the field's `q`), or a JSON object.
    pub fn parse(s: &str, field: &FieldParams) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Self::from_json(s);
        }
        let unknown = || {
            Error::InvalidParameter(format!(
                "unknown function '{s}'; valid: zero, char_ball:<int>, char_sphere:<int>, bracket:<N>, or a JSON object"
            ))
        };
        let (name, arg) = s.split_once(':').unwrap_or((s, ""));
        let int = || arg.trim().parse::<i64>().map_err(|_| unknown());
        match name.trim() {
            "zero" if arg.is_empty() => Ok(Self::zero()),
            "char_ball" => Ok(Self::char_ball(int()?)),
            "char_sphere" => Ok(Self::char_sphere(int()?)),
            "bracket" => {
                let n: f64 = arg.trim().parse().map_err(|_| unknown())?;
                if !(n > 0.0 && n.is_finite()) {
                    return Err(Error::InvalidParameter(format!("bracket exponent must be > 0, got {n}")));
                }
                Ok(Self::bracket_with_base(field.qf().powf(n)))
            }
            _ => Err(unknown()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    lo: i64,
    hi: i64,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: f64,
    sigma: f64,
    degree: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TailJson {
    Geometric { c: f64, sigma: f64 },
    Terms { terms: Vec<TermJson> },
}

#[derive(Serialize, Deserialize)]
struct RadialJson {
    window: WindowJson,
    values: Vec<f64>,
    lower_tail: Option<TailJson>,
    upper_tail: Option<TailJson>,
}

fn tail_to_json(e: &ExpPoly<f64>) -> Option<TailJson> {
    if e.is_zero() {
        return None;
    }
    if let Some((c, sigma)) = e.as_geometric() {
        return Some(TailJson::Geometric { c, sigma });
    }
    let terms = e
        .groups()
        .iter()
        .flat_map(|g| {
            g.poly
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0.0)
                .map(move |(degree, &c)| TermJson { c, sigma: g.sigma, degree })
        })
        .collect();
    Some(TailJson::Terms { terms })
}

fn tail_from_json(t: Option<TailJson>) -> ExpPoly<f64> {
    match t {
        None => ExpPoly::zero(),
        Some(TailJson::Geometric { c, sigma }) => ExpPoly::geometric(c, sigma),
        Some(TailJson::Terms { terms }) => ExpPoly::from_groups(
            terms
                .into_iter()
                .map(|t| Group {
                    sigma: t.sigma,
                    poly: Poly::monomial(t.degree, t.c),
                })
                .collect(),
        ),
    }
}

impl Serialize for RadialFunction<f64> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RadialJson {
            window: WindowJson { lo: self.lo, hi: self.hi() },
            values: self.values.clone(),
            lower_tail: tail_to_json(&self.lower),
            upper_tail: tail_to_json(&self.upper),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadialFunction<f64> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = RadialJson::deserialize(d)?;
        if j.window.hi < j.window.lo || (j.window.hi - j.window.lo + 1) as usize != j.values.len() {
            return Err(D::Error::custom(format!(
                "window [{}, {}] does not match {} values",
                j.window.lo,
                j.window.hi,
                j.values.len()
            )));
        }
        if j.values.iter().any(|v| !v.is_finite()) {
            return Err(D::Error::custom("values must be finite"));
        }
        RadialFunction::new(j.window.lo, j.values, tail_from_json(j.lower_tail), tail_from_json(j.upper_tail))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ball_measure, sphere_measure, weighted_ball_measure};
    use crate::scalar::ratio;

    type Exact = RadialFunction<BigRational>;

    fn fp(q: u64) -> FieldParams {
        FieldParams::new(q).unwrap()
    }

    #[test]
    fn indicator_values() {
        let b = RadialFunction::<f64>::char_ball(0);
        assert_eq!(b.eval(2), 1.0);
        assert_eq!(b.eval(-1), 0.0);
        let s = RadialFunction::<f64>::char_sphere(3);
        assert_eq!((s.eval(2), s.eval(3), s.eval(4)), (0.0, 1.0, 0.0));
        let br = RadialFunction::bracket_with_base(2.0);
        assert_eq!(br.eval(-3), 0.125);
    }

    #[test]
    fn haar_integrals_are_exact() {
        for q in [2, 3, 7] {
            let f = fp(q);
            for k in -4..5 {
                assert_eq!(Exact::char_ball(k).haar_integral(&f).unwrap(), ball_measure(&f, k));
                assert_eq!(Exact::char_sphere(k).haar_integral(&f).unwrap(), sphere_measure(&f, k));
            }
        }
        // ⟨y⟩^{-2} with q = 2
        let br = Exact::bracket_with_base(ratio(4, 1));
        assert_eq!(br.haar_integral(&fp(2)).unwrap(), ratio(3, 2));
    }

    #[test]
    fn non_integrable_tails_are_named() {
        let br = Exact::bracket_with_base(ratio(2, 1));
        assert!(matches!(br.haar_integral(&fp(2)), Err(Error::NonIntegrable(Side::Lower))));
        let grow = Exact::new(0, vec![ratio(1, 1)], ExpPoly::zero(), ExpPoly::geometric(ratio(1, 1), ratio(3, 1))).unwrap();
        assert!(matches!(grow.haar_integral(&fp(3)), Err(Error::NonIntegrable(Side::Upper))));
    }

    #[test]
    fn linear_structure() {
        assert!(RadialFunction::<f64>::char_ball(0).scale(&0.0).is_zero());
        let sum = Exact::char_sphere(0).add(&Exact::char_ball(1));
        assert!(sum.equivalent(&Exact::char_ball(0)));
        assert_eq!(sum.window(), (0, 0));
        let diff = Exact::char_ball(0).sub(&Exact::char_ball(1));
        assert!(diff.equivalent(&Exact::char_sphere(0)));
    }

    #[test]
    fn shift_moves_balls() {
        let b = Exact::char_ball(0);
        assert!(b.shift(3).equivalent(&Exact::char_ball(-3)));
        assert!(b.shift(2).shift(-5).equivalent(&b.shift(-3)));
    }

    #[test]
    fn weighted_integral_of_indicators() {
        let f = fp(2);
        let alpha = 1.0;
        let b = RadialFunction::<f64>::char_ball(2);
        for k in -3..6 {
            let expect = weighted_ball_measure(&f, k.max(2), alpha, false).unwrap().to_f64();
            let got = b.weighted_ball_integral(&f, k, 2.0, alpha).unwrap();
            assert!((got - expect).abs() <= 1e-14 * expect, "k = {k}");
        }
        assert_eq!(RadialFunction::<f64>::zero().weighted_ball_integral(&f, 0, 2.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn polynomial_tail_integral_matches_brute_force() {
        // a_l = 1 + l/2 for l ≥ 1
        let f = RadialFunction::new(0, vec![1.0], ExpPoly::zero(), ExpPoly::from_groups(vec![Group { sigma: 1.0, poly: Poly::from_coeffs(vec![1.0, 0.5]) }])).unwrap();
        let field = fp(3);
        let got = f.weighted_ball_integral(&field, -2, 2.0, 0.5).unwrap();
        let brute: f64 = (-2..400).map(|l| f.ln_sphere_mass(&field, l, 2.0, 0.5).exp()).sum();
        assert!((got - brute).abs() < 1e-13 * brute);
    }

    #[test]
    fn total_weighted_integral_of_bracket() {
        // q = 2, N = 2, r = 1, α = 1: 2/3 + Σ_{l<0} 2^{2l}·2^{-2l}/2 diverges; N = 3 gives Σ 2^{l}/2 = 1/2
        let field = fp(2);
        let br = RadialFunction::bracket_with_base(8.0);
        let got = br.weighted_integral(&field, 1.0, 1.0).unwrap();
        assert!((got - (2.0 / 3.0 + 0.5)).abs() < 1e-14);
        let br = RadialFunction::bracket_with_base(4.0);
        assert!(matches!(br.weighted_integral(&field, 1.0, 1.0), Err(Error::NonIntegrable(Side::Lower))));
    }

    #[test]
    fn far_tail_integrals_stay_finite_in_log_space() {
        let f = RadialFunction::<f64>::char_ball(0);
        let field = fp(8);
        let ln = f.ln_weighted_ball_integral(&field, 2000, 2.0, 1.0).unwrap();
        let expect = ln_weighted_ball_measure_f64(8.0, 1.0, 2000);
        assert!((ln - expect).abs() < 1e-12 * expect.abs());
    }

    fn ln_weighted_ball_measure_f64(q: f64, a: f64, k: i64) -> f64 {
        (q - 1.0).ln() + (a - k as f64 * (a + 1.0)) * q.ln() - (q.powf(a + 1.0) - 1.0).ln()
    }

    #[test]
    fn json_round_trip() {
        let f = RadialFunction::new(
            -1,
            vec![0.5, 2.0],
            ExpPoly::geometric(3.0, 4.0),
            ExpPoly::from_groups(vec![Group { sigma: 0.5, poly: Poly::from_coeffs(vec![1.0, 2.0]) }]),
        )
        .unwrap();
        let s = f.to_json().unwrap();
        assert!(s.contains("\"window\":{\"lo\":-1,\"hi\":0}"));
        assert_eq!(RadialFunction::from_json(&s).unwrap(), f);
        assert!(RadialFunction::from_json(r#"{"window":{"lo":0,"hi":3},"values":[1],"lower_tail":null,"upper_tail":null}"#).is_err());
    }

    #[test]
    fn presets_parse() {
        let f = fp(2);
        assert_eq!(RadialFunction::parse("char_ball:-3", &f).unwrap(), RadialFunction::char_ball(-3));
        assert_eq!(RadialFunction::parse("char_sphere:2", &f).unwrap(), RadialFunction::char_sphere(2));
        assert_eq!(RadialFunction::parse("bracket:1", &f).unwrap(), RadialFunction::bracket_with_base(2.0));
        assert!(RadialFunction::parse("zero", &f).unwrap().is_zero());
        let json = RadialFunction::char_ball(1).to_json().unwrap();
        assert_eq!(RadialFunction::parse(&json, &f).unwrap(), RadialFunction::char_ball(1));
        for bad in ["ball:0", "char_ball", "char_ball:x", "bracket:-1", "zero:1"] {
            let e = RadialFunction::parse(bad, &f).unwrap_err().to_string();
            assert!(e.contains("bracket") || e.contains("valid"), "{bad}: {e}");
        }
    }
}
