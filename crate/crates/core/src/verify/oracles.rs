//! Brute-force references that avoid the closed forms they check.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::kernel::KernelSpec;
use crate::radial::{RadialFunction, MAX_TAIL_TERMS};
use crate::scalar::Scalar;
use crate::series::{certified_sum, Majorant};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleSum {
    pub value: f64,
    /// Upper bound on the omitted terms.
    pub tail_bound: f64,
}

/// `Σ_{l=−k−terms+1}^{−k} q^{αl}(q^l − q^{l−1})`, the weighted ball measure
/// summed shell by shell, with the geometric remainder bounded.
pub fn oracle_weighted_measure(q: f64, alpha: f64, k: i64, terms: usize) -> OracleSum {
    let ratio = q.powf(-(alpha + 1.0));
    let mut value = 0.0;
    // smallest terms first
    for i in (0..terms as i64).rev() {
        let l = (-k - i) as f64;
        value += q.powf(alpha * l) * (q.powf(l) - q.powf(l - 1.0));
    }
    let first_left_out = (-k - terms as i64) as f64;
    let tail_bound = (1.0 - 1.0 / q) * q.powf((alpha + 1.0) * first_left_out) / (1.0 - ratio);
    OracleSum { value, tail_bound }
}

/// Exact version for integer `α`: the partial sum and the exact remainder.
pub fn oracle_weighted_measure_exact(q: u64, alpha: i64, k: i64, terms: usize) -> (BigRational, BigRational) {
    let q = BigRational::from_integer(q.into());
    let mut value = BigRational::from_integer(0.into());
    for i in 0..terms as i64 {
        let l = -k - i;
        value += q.powi(alpha * l) * (q.powi(l) - q.powi(l - 1));
    }
    let one = BigRational::one();
    let ratio = q.powi(-(alpha + 1));
    let tail = (one.clone() - one.clone() / q.clone()) * q.powi((alpha + 1) * (-k - terms as i64)) / (one - ratio);
    (value, tail)
}

/// `(𝒯f)(s)` at `|s| = q^{-m}` straight from `∫ 𝒦(|s|,|t|) f(t) dt`, summed
/// sphere by sphere with the two-argument kernel. Tails of `f` are summed
/// until a geometric majorant certifies the rest below `tol` relative.
pub fn direct_operator(spec: &KernelSpec, field: &FieldParams, f: &RadialFunction, m: i64, tol: f64) -> Result<OracleSum> {
    let q = field.qf();
    let w = 1.0 - 1.0 / q;
    let s = q.powi(-m as i32);
    let term = |l: i64| -> f64 {
        let t = q.powi(-l as i32);
        let fl = f.eval(l);
        if fl == 0.0 {
            return 0.0;
        }
        spec.raw(field, s, t).unwrap_or(f64::NAN) * fl * t * w
    };
    let maj = spec.profile_majorants(field)?;
    let (lo, hi) = f.window();
    let mut value: f64 = (lo..=hi).map(term).sum();
    let mut tail_bound = 0.0;
    if !f.upper_tail().is_zero() {
        // l → +∞: 𝒦(q^{-m}, q^{-l}) = q^m k_{m−l} ≤ q^m a ρ^{m−l} once m − l ≤ lower_below
        let (big_m, d, sigma) = f.upper_tail().majorant();
        let (a, rho) = maj.lower;
        let start = (hi + 1).max(1).max(m - maj.lower_below);
        value += (hi + 1..start).map(term).sum::<f64>();
        let bound = Majorant {
            coef: w * q.powi(m as i32) * a * rho.powi(m as i32) * big_m,
            power: d as f64,
            rho: sigma / (rho * q),
        };
        let t = certified_sum(start, term, &bound, tol, MAX_TAIL_TERMS)
            .ok_or_else(|| Error::OperatorDiverges("function upper tail".into()))?;
        value += t.value;
        tail_bound += t.bound;
    }
    if !f.lower_tail().is_zero() {
        // l = −n → −∞: k_{m+n} ≤ a ρ^{m+n} once m + n ≥ upper_above
        let (big_m, d, sigma) = f.lower_tail().reflect().majorant();
        let (a, rho) = maj.upper;
        let start = (1 - lo).max(1).max(maj.upper_above - m);
        value += ((1 - lo)..start).map(|n| term(-n)).sum::<f64>();
        let bound = Majorant {
            coef: w * q.powi(m as i32) * a * rho.powi(m as i32) * big_m,
            power: d as f64,
            rho: sigma * rho * q,
        };
        let t = certified_sum(start, |n| term(-n), &bound, tol, MAX_TAIL_TERMS)
            .ok_or_else(|| Error::OperatorDiverges("function lower tail".into()))?;
        value += t.value;
        tail_bound += t.bound;
    }
    Ok(OracleSum { value, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::weighted_ball_measure;

    #[test]
    fn measure_examples() {
        let o = oracle_weighted_measure(2.0, 1.0, 0, 100);
        assert!((o.value - 2.0 / 3.0).abs() < 1e-14 && o.tail_bound < 1e-14);
        let o = oracle_weighted_measure(3.0, 2.0, 1, 100);
        assert!((o.value - 1.0 / 39.0).abs() < 1e-14);
        let (v, t) = oracle_weighted_measure_exact(5, 0, 3, 4);
        assert_eq!(v + t, BigRational::new(1.into(), 125.into()));
        let (v, t) = oracle_weighted_measure_exact(3, 2, -4, 10);
        let exact = weighted_ball_measure(&FieldParams::new(3).unwrap(), -4, 2.0, false).unwrap();
        assert_eq!(&(v + t), exact.exact().unwrap());
    }
}
