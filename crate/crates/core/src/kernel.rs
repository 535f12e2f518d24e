//! Homogeneous kernels of degree `−1` and the operators they define.
//!
//! For radial `f` with profile `a_l` and `|s| = q^{-m}`, splitting
//! `∫ 𝒦(|s|,|t|) f(t) dt` over spheres and using homogeneity gives a
//! convolution on the valuation lattice,
//!
//! ```text
//! (𝒯f)_m = Σ_j g_j a_{m−j},     g_j = (1 − 1/q) · 𝒦(1, q^j) · q^j.
//! ```
//!
//! When `g` and `a` both have exponential-polynomial tails the output does
//! too, and [`apply_operator`] returns it in closed form. Each sequence is cut
//! into pieces (single window points and the two tail rays). For a pair of
//! pieces the summation range in `j` depends on `m` only through
//! `max`/`min` of affine expressions, so for `m` far enough left or right the
//! contribution is one exp-poly in `m`. Summing the left (right) regimes of
//! all pairs gives the output's lower (upper) tail; the band in between is
//! evaluated point by point.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expoly::{conv_sum, ExpPoly, Limit};
use crate::field::FieldParams;
use crate::radial::{RadialFunction, MAX_TAIL_TERMS};
use crate::scalar::Scalar;
use crate::series::{certified_sum, Majorant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    /// `𝒦(s,t) = s^{-1} [t ≤ s]`.
    Hardy,
    /// `𝒦(s,t) = 1/(s + t)`.
    Hilbert,
    /// `𝒦(s,t) = 1/max(s, t)`.
    Hlp,
}

/// Behaviour of the profile `k_j` beyond the table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TailDescriptor {
    /// `k_j = c · σ^j`.
    Exact { c: f64, sigma: f64 },
    /// Only `0 ≤ k_j ≤ a · ρ^j` is known.
    Bound { a: f64, rho: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<f64>,
}

/// A kernel through its reduced profile `k_j = 𝒦(1, q^j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, try_from = "KernelJson")]
pub enum KernelSpec {
    Builtin {
        builtin: Builtin,
    },
    Table {
        table: TableJson,
        lower_tail: Option<TailDescriptor>,
        upper_tail: Option<TailDescriptor>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum KernelJson {
    Builtin {
        builtin: Builtin,
    },
    Table {
        table: TableJson,
        #[serde(default)]
        lower_tail: Option<TailDescriptor>,
        #[serde(default)]
        upper_tail: Option<TailDescriptor>,
    },
}

impl TryFrom<KernelJson> for KernelSpec {
    type Error = Error;

    fn try_from(j: KernelJson) -> Result<Self> {
        match j {
            KernelJson::Builtin { builtin } => Ok(KernelSpec::Builtin { builtin }),
            KernelJson::Table {
                table,
                lower_tail,
                upper_tail,
            } => KernelSpec::table(table.lo, table.values, lower_tail, upper_tail),
        }
    }
}

impl KernelSpec {
    pub fn hardy() -> Self {
        KernelSpec::Builtin { builtin: Builtin::Hardy }
    }

    pub fn hilbert() -> Self {
        KernelSpec::Builtin { builtin: Builtin::Hilbert }
    }

    pub fn hlp() -> Self {
        KernelSpec::Builtin { builtin: Builtin::Hlp }
    }

    /// Profile table on `[lo, lo + len − 1]` with optional tail descriptors.
    pub fn table(
        lo: i64,
        values: Vec<f64>,
        lower_tail: Option<TailDescriptor>,
        upper_tail: Option<TailDescriptor>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("kernel table must be nonempty".into()));
        }
        if values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidParameter("kernel profile values must be finite and ≥ 0".into()));
        }
        for t in lower_tail.iter().chain(upper_tail.iter()) {
            let ok = match *t {
                TailDescriptor::Exact { c, sigma } => c >= 0.0 && c.is_finite() && sigma > 0.0 && sigma.is_finite(),
                TailDescriptor::Bound { a, rho } => a >= 0.0 && a.is_finite() && rho > 0.0 && rho.is_finite(),
            };
            if !ok {
                return Err(Error::InvalidParameter(format!("invalid kernel tail descriptor {t:?}")));
            }
        }
        let hi = lo + values.len() as i64 - 1;
        Ok(KernelSpec::Table {
            table: TableJson { lo, hi, values },
            lower_tail,
            upper_tail,
        })
    }

    /// `k_j = δ_{j0}`, so that `𝒯 = (1 − 1/q) · id`.
    pub fn identity() -> Self {
        let zero = Some(TailDescriptor::Exact { c: 0.0, sigma: 1.0 });
        KernelSpec::Table {
            table: TableJson {
                lo: 0,
                hi: 0,
                values: vec![1.0],
            },
            lower_tail: zero,
            upper_tail: zero,
        }
    }

    /// `hardy`, `hilbert`, `hlp`, `identity`, or a JSON object.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Ok(serde_json::from_str(s)?);
        }
        match s {
            "hardy" => Ok(Self::hardy()),
            "hilbert" => Ok(Self::hilbert()),
            "hlp" => Ok(Self::hlp()),
            "identity" => Ok(Self::identity()),
            _ => Err(Error::InvalidParameter(format!(
                "unknown kernel '{s}'; valid: hardy, hilbert, hlp, identity, or a JSON object"
            ))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            KernelSpec::Builtin { builtin } => format!("{builtin:?}").to_lowercase(),
            KernelSpec::Table { .. } => "table".into(),
        }
    }

    /// `k_j = 𝒦(1, q^j)`.
    pub fn profile(&self, field: &FieldParams, j: i64) -> Result<f64> {
        let q = field.qf();
        match self {
            KernelSpec::Builtin { builtin } => Ok(match builtin {
                Builtin::Hardy => {
                    if j <= 0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                Builtin::Hilbert => 1.0 / (1.0 + q.powi(j as i32)),
                Builtin::Hlp => q.powi(-j as i32).min(1.0),
            }),
            KernelSpec::Table {
                table,
                lower_tail,
                upper_tail,
            } => {
                let tail = if j < table.lo {
                    lower_tail
                } else if j > table.hi {
                    upper_tail
                } else {
                    return Ok(table.values[(j - table.lo) as usize]);
                };
                match tail {
                    None => Err(Error::KernelUndefined(j)),
                    Some(TailDescriptor::Exact { c, sigma }) => Ok(c * f64::powi(*sigma, j as i32)),
                    Some(TailDescriptor::Bound { .. }) => Err(Error::KernelNotExact(format!(
                        "profile at j = {j} is only bounded, not known"
                    ))),
                }
            }
        }
    }

    /// Upper bounds `k_j ≤ a ρ^j` below and above the explicit range, and
    /// where each starts to hold.
    pub fn profile_majorants(&self, field: &FieldParams) -> Result<ProfileMajorants> {
        let q = field.qf();
        match self {
            KernelSpec::Builtin { builtin } => Ok(match builtin {
                Builtin::Hardy => ProfileMajorants {
                    lower: (1.0, 1.0),
                    lower_below: 0,
                    upper: (0.0, 1.0),
                    upper_above: 1,
                },
                Builtin::Hilbert | Builtin::Hlp => ProfileMajorants {
                    lower: (1.0, 1.0),
                    lower_below: 0,
                    upper: (1.0, 1.0 / q),
                    upper_above: 0,
                },
            }),
            KernelSpec::Table {
                table,
                lower_tail,
                upper_tail,
            } => {
                let bound = |t: &Option<TailDescriptor>, j: i64| match t {
                    None => Err(Error::KernelUndefined(j)),
                    Some(TailDescriptor::Exact { c, sigma }) => Ok((*c, *sigma)),
                    Some(TailDescriptor::Bound { a, rho }) => Ok((*a, *rho)),
                };
                Ok(ProfileMajorants {
                    lower: bound(lower_tail, table.lo - 1)?,
                    lower_below: table.lo - 1,
                    upper: bound(upper_tail, table.hi + 1)?,
                    upper_above: table.hi + 1,
                })
            }
        }
    }

    /// The two-argument kernel `𝒦(s, t)` for `s, t > 0`.
    pub fn raw(&self, field: &FieldParams, s: f64, t: f64) -> Result<f64> {
        match self {
            KernelSpec::Builtin { builtin } => Ok(match builtin {
                Builtin::Hardy => {
                    if t <= s * (1.0 + 1e-12) {
                        1.0 / s
                    } else {
                        0.0
                    }
                }
                Builtin::Hilbert => 1.0 / (s + t),
                Builtin::Hlp => 1.0 / s.max(t),
            }),
            KernelSpec::Table { .. } => {
                let j = ((t / s).ln() / field.qf().ln()).round() as i64;
                Ok(self.profile(field, j)? / s)
            }
        }
    }

    /// The convolution weights `g_j = (1 − 1/q) k_j q^j` as a radial sequence,
    /// when the profile has closed-form tails.
    pub fn weights<T: Scalar>(&self, field: &FieldParams) -> Result<RadialFunction<T>> {
        let q: T = field.q_as();
        let w: T = field.unit_sphere();
        let conv = |x: f64| {
            T::from_f64(x).ok_or_else(|| Error::InvalidParameter(format!("non-finite kernel value {x}")))
        };
        match self {
            KernelSpec::Builtin { builtin } => {
                let lower = ExpPoly::geometric(w.clone(), q.clone());
                let upper = match builtin {
                    Builtin::Hardy => ExpPoly::zero(),
                    Builtin::Hlp => ExpPoly::geometric(w.clone(), T::one()),
                    Builtin::Hilbert => {
                        return Err(Error::KernelNotExact(
                            "the hilbert profile 1/(1+q^j) has no exponential-polynomial tails".into(),
                        ))
                    }
                };
                RadialFunction::new(0, vec![w], lower, upper)
            }
            KernelSpec::Table {
                table,
                lower_tail,
                upper_tail,
            } => {
                let tail = |t: &Option<TailDescriptor>, j: i64| -> Result<ExpPoly<T>> {
                    match t {
                        None => Err(Error::KernelUndefined(j)),
                        Some(TailDescriptor::Bound { .. }) => Err(Error::KernelNotExact(
                            "a bound-only tail cannot be convolved".into(),
                        )),
                        Some(TailDescriptor::Exact { c, sigma }) => {
                            Ok(ExpPoly::geometric(w.clone() * conv(*c)?, conv(*sigma)? * q.clone()))
                        }
                    }
                };
                let values = table
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| Ok(w.clone() * conv(*v)? * q.powi(table.lo + i as i64)))
                    .collect::<Result<Vec<T>>>()?;
                RadialFunction::new(
                    table.lo,
                    values,
                    tail(lower_tail, table.lo - 1)?,
                    tail(upper_tail, table.hi + 1)?,
                )
            }
        }
    }
}

impl FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// `k_j ≤ lower.0 · lower.1^j` for `j ≤ lower_below`, and likewise above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileMajorants {
    pub lower: (f64, f64),
    pub lower_below: i64,
    pub upper: (f64, f64),
    pub upper_above: i64,
}

/// `|τ| = q^{-l}` for the dilation `x ↦ f(τx)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationStep(pub i64);

/// `(D_τ f)_m = a_{m+l}`. Only `|τ|` matters for radial `f`.
pub fn dilate<T: Scalar>(f: &RadialFunction<T>, step: DilationStep) -> RadialFunction<T> {
    f.shift(step.0)
}

/// Outcome of checking `𝒦(ξs, ξt) = ξ^{-1} 𝒦(s, t)` on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Homogeneity {
    pub pass: bool,
    /// Largest relative violation.
    pub max_violation: f64,
    /// Degree estimated from the worst grid point; `−1` for a valid kernel.
    pub degree: f64,
}

/// Grid test with `s = q^{-a}`, `t = q^{-b}`, `ξ = q^{-c}` for `a, b, c ∈ [−span, span]`.
pub fn homogeneity_check(raw: impl Fn(f64, f64) -> f64, q: f64, span: i64, tol: f64) -> Homogeneity {
    let mut worst = Homogeneity {
        pass: true,
        max_violation: 0.0,
        degree: -1.0,
    };
    let p = |e: i64| q.powi(-e as i32);
    for a in -span..=span {
        for b in -span..=span {
            let base = raw(p(a), p(b));
            for c in -span..=span {
                if c == 0 {
                    continue;
                }
                let xi = p(c);
                let scaled = raw(xi * p(a), xi * p(b));
                let violation = if base == 0.0 {
                    if scaled == 0.0 { 0.0 } else { f64::INFINITY }
                } else {
                    (scaled * xi - base).abs() / base.abs()
                };
                if violation > worst.max_violation {
                    let degree = if base != 0.0 && scaled != 0.0 {
                        (scaled / base).ln() / xi.ln()
                    } else {
                        f64::NAN
                    };
                    worst = Homogeneity {
                        pass: false,
                        max_violation: violation,
                        degree,
                    };
                }
            }
        }
    }
    worst.pass = worst.max_violation <= tol;
    if worst.pass {
        worst.degree = -1.0;
    }
    worst
}

#[derive(Debug, Clone)]
struct Piece<T> {
    /// `None` is the infinite end.
    lo: Option<i64>,
    hi: Option<i64>,
    e: ExpPoly<T>,
    label: &'static str,
}

impl<T: Scalar> Piece<T> {
    fn point(&self) -> Option<(i64, T)> {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => Some((a, self.e.eval(a))),
            _ => None,
        }
    }
}

fn pieces<T: Scalar>(f: &RadialFunction<T>) -> Vec<Piece<T>> {
    let (lo, hi) = f.window();
    let mut out = Vec::new();
    if !f.lower_tail().is_zero() {
        out.push(Piece {
            lo: None,
            hi: Some(lo - 1),
            e: f.lower_tail().clone(),
            label: "lower tail",
        });
    }
    for (i, v) in f.values().iter().enumerate() {
        if !v.is_zero() {
            let p = lo + i as i64;
            out.push(Piece {
                lo: Some(p),
                hi: Some(p),
                e: ExpPoly::geometric(v.clone(), T::one()),
                label: "window",
            });
        }
    }
    if !f.upper_tail().is_zero() {
        out.push(Piece {
            lo: Some(hi + 1),
            hi: None,
            e: f.upper_tail().clone(),
            label: "upper tail",
        });
    }
    out
}

/// Contribution of one piece pair: `left` for `m ≤ left_until`, `right` for
/// `m ≥ right_from`, and a single product in between for two points.
struct Regimes<T> {
    left: ExpPoly<T>,
    left_until: i64,
    right: ExpPoly<T>,
    right_from: i64,
    middle: Option<(i64, T)>,
}

impl<T: Scalar> Regimes<T> {
    fn eval(&self, m: i64) -> T {
        if m <= self.left_until {
            self.left.eval(m)
        } else if m >= self.right_from {
            self.right.eval(m)
        } else {
            match &self.middle {
                Some((at, v)) if *at == m => v.clone(),
                _ => T::zero(),
            }
        }
    }
}

fn limit(end: Option<i64>, infinite: Limit) -> Limit {
    end.map_or(infinite, Limit::At)
}

fn pair_regimes<T: Scalar>(g: &Piece<T>, a: &Piece<T>) -> std::result::Result<Regimes<T>, String> {
    // A point against anything is a shifted copy of the other piece.
    if let Some((p, v)) = a.point() {
        return Ok(point_regimes(g, p, &v));
    }
    if let Some((p, v)) = g.point() {
        return Ok(point_regimes(a, p, &v));
    }
    let (gl, gh, al, ah) = (g.lo, g.hi, a.lo, a.hi);
    let diverges = |_| format!("kernel {} against function {}", g.label, a.label);

    // m → −∞: j runs over [max(gl, m − ah), min(gh, m − al)].
    let (left, left_until) = if let (Some(gl), Some(al)) = (gl, al) {
        (ExpPoly::zero(), gl + al - 1)
    } else {
        let lo = match ah {
            Some(ah) => gl.map_or(Limit::Shift(-ah), Limit::At),
            None => limit(gl, Limit::NegInf),
        };
        let hi = match al {
            Some(al) => Limit::Shift(-al),
            None => limit(gh, Limit::PosInf),
        };
        let until = [sum(gl, ah), sum(gh, al), sum(gh, ah)].into_iter().flatten().min();
        (conv_sum(&g.e, &a.e, lo, hi).map_err(diverges)?, until.unwrap_or(i64::MAX))
    };
    // m → +∞
    let (right, right_from) = if let (Some(gh), Some(ah)) = (gh, ah) {
        (ExpPoly::zero(), gh + ah + 1)
    } else {
        let lo = match ah {
            Some(ah) => Limit::Shift(-ah),
            None => limit(gl, Limit::NegInf),
        };
        let hi = match al {
            Some(al) => gh.map_or(Limit::Shift(-al), Limit::At),
            None => limit(gh, Limit::PosInf),
        };
        let from = [sum(gl, ah), sum(gh, al), sum(gl, al)].into_iter().flatten().max();
        (conv_sum(&g.e, &a.e, lo, hi).map_err(diverges)?, from.unwrap_or(i64::MIN))
    };
    Ok(Regimes {
        left,
        left_until,
        right,
        right_from,
        middle: None,
    })
}

fn sum(x: Option<i64>, y: Option<i64>) -> Option<i64> {
    Some(x? + y?)
}

/// `v · R(m − p)` where `R` is the piece `other`.
fn point_regimes<T: Scalar>(other: &Piece<T>, p: i64, v: &T) -> Regimes<T> {
    let moved = other.e.shift(-p).scale(v);
    match (other.lo, other.hi) {
        (Some(a), Some(b)) if a == b => Regimes {
            left: ExpPoly::zero(),
            left_until: a + p - 1,
            right: ExpPoly::zero(),
            right_from: a + p + 1,
            middle: Some((a + p, other.e.eval(a) * v.clone())),
        },
        (None, Some(b)) => Regimes {
            left: moved,
            left_until: b + p,
            right: ExpPoly::zero(),
            right_from: b + p + 1,
            middle: None,
        },
        (Some(a), None) => Regimes {
            left: ExpPoly::zero(),
            left_until: a + p - 1,
            right: moved,
            right_from: a + p,
            middle: None,
        },
        _ => unreachable!("pieces are points or rays"),
    }
}

/// Discrete convolution `(g * a)_m = Σ_j g_j a_{m−j}` in closed form.
pub fn convolve<T: Scalar>(g: &RadialFunction<T>, a: &RadialFunction<T>) -> Result<RadialFunction<T>> {
    let gp = pieces(g);
    let ap = pieces(a);
    let mut regimes = Vec::with_capacity(gp.len() * ap.len());
    let mut failures = Vec::new();
    for gi in &gp {
        for ai in &ap {
            match pair_regimes(gi, ai) {
                Ok(r) => regimes.push(r),
                Err(side) => failures.push(side),
            }
        }
    }
    if !failures.is_empty() {
        failures.dedup();
        return Err(Error::OperatorDiverges(failures.join("; ")));
    }
    if regimes.is_empty() {
        return Ok(RadialFunction::zero());
    }
    let ml = regimes.iter().map(|r| r.left_until).min().unwrap_or(0);
    let mr = regimes.iter().map(|r| r.right_from).max().unwrap_or(0);
    let lo = ml + 1;
    let hi = (mr - 1).max(lo);
    let mut lower = ExpPoly::zero();
    let mut upper = ExpPoly::zero();
    for r in &regimes {
        lower = lower.add(&r.left);
        upper = upper.add(&r.right);
    }
    let values = (lo..=hi)
        .map(|m| regimes.iter().fold(T::zero(), |acc, r| acc + r.eval(m)))
        .collect();
    Ok(RadialFunction::new(lo, values, lower, upper)?.canonical())
}

/// `𝒯f` in closed form. Kernels whose profile has no exponential-polynomial
/// tails (the Hilbert kernel, bound-only tables) are rejected with
/// [`Error::KernelNotExact`]; use [`apply_operator_truncated`] for those.
pub fn apply_operator<T: Scalar>(
    spec: &KernelSpec,
    field: &FieldParams,
    f: &RadialFunction<T>,
) -> Result<RadialFunction<T>> {
    convolve(&spec.weights::<T>(field)?, f)
}

/// `𝒯f` on an explicit window, by certified truncation of each output sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Truncated {
    /// Values on the requested window; nothing is represented outside it.
    pub function: RadialFunction,
    /// Largest certified bound on the omitted part of any output sum.
    pub remainder: f64,
}

pub fn apply_operator_truncated(
    spec: &KernelSpec,
    field: &FieldParams,
    f: &RadialFunction,
    window: (i64, i64),
    tol: f64,
) -> Result<Truncated> {
    let (wlo, whi) = window;
    if whi < wlo {
        return Err(Error::InvalidParameter("empty output window".into()));
    }
    let maj = spec.profile_majorants(field)?;
    let q = field.qf();
    let w = 1.0 - 1.0 / q;
    let g = |j: i64| -> Result<f64> { Ok(w * spec.profile(field, j)? * q.powi(j as i32)) };
    let (lo, hi) = f.window();
    let mut values = Vec::with_capacity((whi - wlo + 1) as usize);
    let mut remainder: f64 = 0.0;
    for m in wlo..=whi {
        let mut acc = 0.0;
        for n in lo..=hi {
            let a = f.eval(n);
            if a != 0.0 {
                acc += g(m - n)? * a;
            }
        }
        // upper tail of f: n > hi, kernel index j = m − n → −∞ where g_j ≤ w A (ρq)^j
        if !f.upper_tail().is_zero() {
            let (big_m, d, s) = f.upper_tail().majorant();
            let (ka, kr) = maj.lower;
            let rate = s / (kr * q);
            let start = (hi + 1).max(1).max(m - maj.lower_below);
            for n in hi + 1..start {
                acc += g(m - n)? * f.eval(n);
            }
            let bound = Majorant {
                coef: w * ka * (kr * q).powi(m as i32) * big_m,
                power: d as f64,
                rho: rate,
            };
            let tail = certified_sum(start, |n| g(m - n).unwrap_or(f64::NAN) * f.eval(n), &bound, tol, MAX_TAIL_TERMS)
                .ok_or_else(|| Error::OperatorDiverges(format!("kernel lower tail against function upper tail at m = {m}")))?;
            acc += tail.value;
            remainder = remainder.max(tail.bound);
        }
        // lower tail of f: n = −n' < lo, kernel index j = m + n' → +∞
        if !f.lower_tail().is_zero() {
            let reflected = f.lower_tail().reflect();
            let (big_m, d, s) = reflected.majorant();
            let (ka, kr) = maj.upper;
            let rate = s * kr * q;
            let start = (1 - lo).max(1).max(maj.upper_above - m);
            for np in (1 - lo)..start {
                acc += g(m + np)? * f.eval(-np);
            }
            let bound = Majorant {
                coef: w * ka * (kr * q).powi(m as i32) * big_m,
                power: d as f64,
                rho: rate,
            };
            let tail = certified_sum(start, |np| g(m + np).unwrap_or(f64::NAN) * f.eval(-np), &bound, tol, MAX_TAIL_TERMS)
                .ok_or_else(|| Error::OperatorDiverges(format!("kernel upper tail against function lower tail at m = {m}")))?;
            acc += tail.value;
            remainder = remainder.max(tail.bound);
        }
        values.push(acc);
    }
    Ok(Truncated {
        function: RadialFunction::from_window(wlo, values)?,
        remainder,
    })
}
