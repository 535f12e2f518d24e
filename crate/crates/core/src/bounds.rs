//! The operator-norm constant
//!
//! ```text
//! C_{r,q} = (1 − 1/q) [ k_0 + Σ_{l≥1} ( k_l q^{l(1−α/r)} + k_{−l} q^{l((α+1)/r − 1)} ) ]
//! ```
//!
//! with `k_j = 𝒦(1, q^j)`, plus the scalar bounds that accompany it.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::kernel::{Builtin, KernelSpec, TailDescriptor};
use crate::phi::PhiCertificate;
use crate::radial::MAX_TAIL_TERMS;
use crate::series::Majorant;

/// How [`BoundResult::value`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    ClosedForm,
    /// Partial sum plus a certified remainder below the requested tolerance.
    Truncated,
    /// Exact window part plus the summed tail majorant; an upper bound only.
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    #[serde(serialize_with = "finite_or_inf")]
    pub value: f64,
    pub mode: BoundMode,
    pub terms: Option<usize>,
    pub tail_bound: Option<f64>,
    pub finite: bool,
    pub condition: String,
    /// Whether `condition` holds for the inputs.
    pub condition_holds: bool,
}

fn finite_or_inf<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str("+inf")
    }
}

impl BoundResult {
    fn infinite(mode: BoundMode, condition: String) -> Self {
        BoundResult {
            value: f64::INFINITY,
            mode,
            terms: None,
            tail_bound: None,
            finite: false,
            condition,
            condition_holds: false,
        }
    }
}

pub const ALPHA_CONDITION: &str = "alpha+1<r";

/// `α + 1 < r`.
pub fn hlp_finiteness(r: f64, alpha: f64) -> bool {
    alpha + 1.0 < r
}

fn check_params(r: f64, alpha: f64) -> Result<()> {
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("r must be > 1, got {r}")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
    }
    Ok(())
}

/// Weight attached to `k_j` in the series.
fn weight(q: f64, r: f64, alpha: f64, j: i64) -> f64 {
    let e = if j >= 0 { 1.0 - alpha / r } else { 1.0 - (alpha + 1.0) / r };
    q.powf(j as f64 * e)
}

/// `k_j` times its weight, without `0 · ∞` far out.
fn series_term(spec: &KernelSpec, field: &FieldParams, r: f64, alpha: f64, j: i64) -> Result<f64> {
    let k = spec.profile(field, j)?;
    if k == 0.0 {
        return Ok(0.0);
    }
    let e = if j >= 0 { 1.0 - alpha / r } else { 1.0 - (alpha + 1.0) / r };
    Ok((k.ln() + j as f64 * e * field.qf().ln()).exp())
}

/// `C_{r,q}` for the kernel. Divergence is a result, not an error.
pub fn main_bound_constant(spec: &KernelSpec, field: &FieldParams, r: f64, alpha: f64, tol: f64) -> Result<BoundResult> {
    check_params(r, alpha)?;
    let q = field.qf();
    let w = 1.0 - 1.0 / q;
    let holds = hlp_finiteness(r, alpha);
    let u = q.powf((alpha + 1.0) / r - 1.0);
    let v = q.powf(-alpha / r);
    match spec {
        KernelSpec::Builtin { builtin } => {
            if !holds {
                let mode = if *builtin == Builtin::Hilbert { BoundMode::Truncated } else { BoundMode::ClosedForm };
                return Ok(BoundResult::infinite(mode, ALPHA_CONDITION.into()));
            }
            let closed = |x: f64| x / (1.0 - x);
            match builtin {
                Builtin::Hardy => Ok(closed_form(w * (1.0 + closed(u)))),
                Builtin::Hlp => Ok(closed_form(w * (1.0 + closed(u) + closed(v)))),
                Builtin::Hilbert => truncated_constant(spec, field, r, alpha, tol),
            }
        }
        KernelSpec::Table {
            table,
            lower_tail,
            upper_tail,
        } => {
            let lower = lower_tail.ok_or(Error::KernelUndefined(table.lo - 1))?;
            let upper = upper_tail.ok_or(Error::KernelUndefined(table.hi + 1))?;
            let bound_only = matches!(lower, TailDescriptor::Bound { .. }) || matches!(upper, TailDescriptor::Bound { .. });
            let mode = if bound_only { BoundMode::UpperBound } else { BoundMode::ClosedForm };
            let (c_lo, s_lo) = tail_params(lower);
            let (c_hi, s_hi) = tail_params(upper);
            // upper ratio x, lower ratio y: terms x^j for j → +∞, y^j for j → −∞
            let x = s_hi * q.powf(1.0 - alpha / r);
            let y = s_lo * q.powf(1.0 - (alpha + 1.0) / r);
            let condition = format!("sigma_upper*q^(1-alpha/r)<1 and sigma_lower*q^(1-(alpha+1)/r)>1 [{x:.6}<1, {y:.6}>1]");
            let up_ok = c_hi == 0.0 || x < 1.0;
            let lo_ok = c_lo == 0.0 || y > 1.0;
            if !(up_ok && lo_ok) {
                return Ok(BoundResult::infinite(mode, condition));
            }
            let mut explicit = 0.0;
            for (i, k) in table.values.iter().enumerate() {
                explicit += k * weight(q, r, alpha, table.lo + i as i64);
            }
            // upper tail: j from hi+1 on; the weight changes form at j = 0
            let mut tail = 0.0;
            if c_hi != 0.0 {
                let y_hi = s_hi * q.powf(1.0 - (alpha + 1.0) / r);
                for j in table.hi + 1..0 {
                    tail += c_hi * y_hi.powi(j as i32);
                }
                let start = (table.hi + 1).max(0);
                tail += c_hi * x.powi(start as i32) / (1.0 - x);
            }
            if c_lo != 0.0 {
                let x_lo = s_lo * q.powf(1.0 - alpha / r);
                for j in 0..table.lo {
                    tail += c_lo * x_lo.powi(j as i32);
                }
                let end = (table.lo - 1).min(-1);
                tail += c_lo * y.powi(end as i32) * y / (y - 1.0);
            }
            let value = w * (explicit + tail);
            Ok(BoundResult {
                value,
                mode,
                terms: None,
                tail_bound: bound_only.then_some(w * tail),
                finite: true,
                condition,
                condition_holds: true,
            })
        }
    }
}

fn tail_params(t: TailDescriptor) -> (f64, f64) {
    match t {
        TailDescriptor::Exact { c, sigma } => (c, sigma),
        TailDescriptor::Bound { a, rho } => (a, rho),
    }
}

fn closed_form(value: f64) -> BoundResult {
    BoundResult {
        value,
        mode: BoundMode::ClosedForm,
        terms: None,
        tail_bound: None,
        finite: true,
        condition: ALPHA_CONDITION.into(),
        condition_holds: true,
    }
}

/// Sums the series term by term until the two geometric majorant remainders
/// together fall below `tol`. Needs a profile known at every index.
pub fn truncated_constant(spec: &KernelSpec, field: &FieldParams, r: f64, alpha: f64, tol: f64) -> Result<BoundResult> {
    check_params(r, alpha)?;
    let q = field.qf();
    let w = 1.0 - 1.0 / q;
    let maj = spec.profile_majorants(field)?;
    let up = Majorant {
        coef: maj.upper.0,
        power: 0.0,
        rho: maj.upper.1 * q.powf(1.0 - alpha / r),
    };
    let down = Majorant {
        coef: maj.lower.0,
        power: 0.0,
        rho: q.powf((alpha + 1.0) / r - 1.0) / maj.lower.1,
    };
    let condition = if matches!(spec, KernelSpec::Builtin { .. }) {
        ALPHA_CONDITION.to_string()
    } else {
        "profile majorant ratios < 1".to_string()
    };
    if !up.converges() || !down.converges() {
        return Ok(BoundResult::infinite(BoundMode::Truncated, condition));
    }
    let up_from = maj.upper_above.max(1);
    let down_from = (-maj.lower_below).max(1);
    let mut sum = spec.profile(field, 0)?;
    let mut l: i64 = 0;
    loop {
        if l >= up_from - 1 && l >= down_from - 1 {
            let rest = up.remainder(l + 1).unwrap_or(f64::INFINITY) + down.remainder(l + 1).unwrap_or(f64::INFINITY);
            if w * rest < tol {
                return Ok(BoundResult {
                    value: w * sum,
                    mode: BoundMode::Truncated,
                    terms: Some(l as usize),
                    tail_bound: Some(w * rest),
                    finite: true,
                    condition,
                    condition_holds: true,
                });
            }
        }
        l += 1;
        if l as usize > MAX_TAIL_TERMS {
            return Err(Error::NoConvergence("bound constant series".into()));
        }
        sum += series_term(spec, field, r, alpha, l)? + series_term(spec, field, r, alpha, -l)?;
    }
}

/// `(1 − 1/q)[k_0 + Σ_{l=1}^{n} (…)]`.
pub fn partial_sum(spec: &KernelSpec, field: &FieldParams, r: f64, alpha: f64, n: usize) -> Result<f64> {
    let q = field.qf();
    let mut sum = spec.profile(field, 0)?;
    for l in 1..=n as i64 {
        sum += series_term(spec, field, r, alpha, l)? + series_term(spec, field, r, alpha, -l)?;
    }
    Ok((1.0 - 1.0 / q) * sum)
}

/// A predicted index at which the partial sums exceed `threshold`, and the
/// partial sum actually reached there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceWitness {
    pub terms: usize,
    pub partial_sum: f64,
}

/// For `α + 1 ≥ r` the `k_{−l}` terms of the Hardy and HLP series are
/// `u^l` with `u ≥ 1`, so the partial sum after `n` terms is at least
/// `(1 − 1/q)(1 + Σ_{l≤n} u^l)`. Returns the first `n` where that lower
/// bound passes `threshold`, with the real partial sum there.
pub fn divergence_witness(spec: &KernelSpec, field: &FieldParams, r: f64, alpha: f64, threshold: f64) -> Result<Option<DivergenceWitness>> {
    check_params(r, alpha)?;
    if hlp_finiteness(r, alpha) || !matches!(spec, KernelSpec::Builtin { builtin: Builtin::Hardy | Builtin::Hlp }) {
        return Ok(None);
    }
    let q = field.qf();
    let w = 1.0 - 1.0 / q;
    let u = q.powf((alpha + 1.0) / r - 1.0);
    let need = threshold / w - 1.0;
    let n = if u <= 1.0 + 1e-15 {
        need.ceil().max(1.0) as usize
    } else {
        // Σ_{l=1}^{n} u^l = u (u^n − 1)/(u − 1) > need
        (((need * (u - 1.0) / u) + 1.0).ln() / u.ln()).ceil().max(1.0) as usize
    };
    let mut n = n;
    let mut s = partial_sum(spec, field, r, alpha, n)?;
    // rounding in the prediction can leave the sum a hair short
    while s <= threshold {
        n += 1;
        s = partial_sum(spec, field, r, alpha, n)?;
    }
    Ok(Some(DivergenceWitness { terms: n, partial_sum: s }))
}

/// `C |τ|^{−(1+α)/r}` for `|τ| = q^{−l} < 1`, `C |τ|^{−α/r}` otherwise.
pub fn dilation_bound(q: f64, l: i64, r: f64, alpha: f64, c: f64) -> f64 {
    let l = l as f64;
    if l > 0.0 {
        c * q.powf(l * (1.0 + alpha) / r)
    } else {
        c * q.powf(l * alpha / r)
    }
}

/// `C_sm · C_class · C_{r,q}`, the constant the operator norm is checked against.
pub fn morrey_operator_constant(cert: &PhiCertificate, bound: &BoundResult) -> Option<f64> {
    Some(cert.dilation_constant()? * bound.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(q: u64) -> FieldParams {
        FieldParams::new(q).unwrap()
    }

    #[test]
    fn hlp_value() {
        let b = main_bound_constant(&KernelSpec::hlp(), &fp(2), 2.0, 0.5, 1e-13).unwrap();
        assert!((b.value - 5.785213507883244).abs() < 1e-12);
        assert_eq!(b.mode, BoundMode::ClosedForm);
        let t = truncated_constant(&KernelSpec::hlp(), &fp(2), 2.0, 0.5, 1e-13).unwrap();
        assert!((t.value - b.value).abs() < 1e-12);
        assert!(t.tail_bound.unwrap() < 1e-13);
    }

    #[test]
    fn hardy_value() {
        let b = main_bound_constant(&KernelSpec::hardy(), &fp(3), 3.0, 1.0, 1e-13).unwrap();
        assert!((b.value - 2.1741111311197705).abs() < 1e-13);
        let s = partial_sum(&KernelSpec::hardy(), &fp(3), 3.0, 1.0, 200).unwrap();
        assert!((s - b.value).abs() < 1e-12);
    }

    #[test]
    fn boundary_is_divergent() {
        let b = main_bound_constant(&KernelSpec::hlp(), &fp(2), 2.0, 1.0, 1e-12).unwrap();
        assert!(!b.finite && b.value.is_infinite());
        assert_eq!(b.condition, "alpha+1<r");
        let json = serde_json::to_value(&b).unwrap();
        assert_eq!(json["value"], "+inf");
        let wit = divergence_witness(&KernelSpec::hlp(), &fp(2), 2.0, 1.0, 1e6).unwrap().unwrap();
        assert!(wit.terms <= 2_000_000);
    }

    #[test]
    fn finiteness_predicate() {
        assert!(hlp_finiteness(2.0, 0.5));
        assert!(!hlp_finiteness(2.0, 1.0));
        assert!(hlp_finiteness(3.0, 1.99));
    }

    #[test]
    fn hlp_constant_is_not_monotone_in_r() {
        let c = |r: f64| main_bound_constant(&KernelSpec::hlp(), &fp(2), r, 0.5, 1e-13).unwrap().value;
        assert!(c(2.0) > c(2.5));
        assert!(c(2.5) < c(3.0) && c(3.0) < c(10.0));
        let h = |r: f64| main_bound_constant(&KernelSpec::hardy(), &fp(2), r, 0.5, 1e-13).unwrap().value;
        assert!(h(2.0) > h(3.0) && h(3.0) > h(10.0));
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(dilation_bound(2.0, 0, 2.0, 1.0, 3.0), 3.0);
        assert!((dilation_bound(2.0, 2, 2.0, 1.0, 1.0) - 4.0).abs() < 1e-15);
        assert!((dilation_bound(2.0, -2, 2.0, 1.0, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hilbert_is_between_hardy_and_hlp() {
        let f = fp(3);
        let h = main_bound_constant(&KernelSpec::hilbert(), &f, 3.0, 0.5, 1e-13).unwrap();
        assert_eq!(h.mode, BoundMode::Truncated);
        let hardy = main_bound_constant(&KernelSpec::hardy(), &f, 3.0, 0.5, 1e-13).unwrap().value;
        let hlp = main_bound_constant(&KernelSpec::hlp(), &f, 3.0, 0.5, 1e-13).unwrap().value;
        // 1/(1+q^j) ≤ min(1, q^{-j}) ≤ 2/(1+q^j)
        assert!(h.value <= hlp && hlp <= 2.0 * h.value);
        assert!(hardy > 0.0);
    }

    #[test]
    fn table_matches_builtin() {
        let f = fp(2);
        let hlp_table = KernelSpec::table(
            -1,
            vec![1.0, 1.0, 0.5],
            Some(TailDescriptor::Exact { c: 1.0, sigma: 1.0 }),
            Some(TailDescriptor::Exact { c: 1.0, sigma: 0.5 }),
        )
        .unwrap();
        let a = main_bound_constant(&hlp_table, &f, 2.5, 0.5, 1e-13).unwrap();
        let b = main_bound_constant(&KernelSpec::hlp(), &f, 2.5, 0.5, 1e-13).unwrap();
        assert!((a.value - b.value).abs() < 1e-12 * b.value);
        let t = truncated_constant(&hlp_table, &f, 2.5, 0.5, 1e-13).unwrap();
        assert!((t.value - b.value).abs() < 1e-12 * b.value);
        let missing = KernelSpec::table(0, vec![1.0], None, None).unwrap();
        assert!(main_bound_constant(&missing, &f, 2.0, 0.5, 1e-12).is_err());
    }

    #[test]
    fn bound_only_tails_give_upper_bound() {
        let f = fp(2);
        let k = KernelSpec::table(
            -1,
            vec![1.0, 1.0, 0.5],
            Some(TailDescriptor::Bound { a: 1.0, rho: 1.0 }),
            Some(TailDescriptor::Bound { a: 1.0, rho: 0.5 }),
        )
        .unwrap();
        let a = main_bound_constant(&k, &f, 2.5, 0.5, 1e-13).unwrap();
        assert_eq!(a.mode, BoundMode::UpperBound);
        assert!(a.tail_bound.unwrap() > 0.0);
    }
}
