//! Weighted central Morrey norms
//!
//! ```text
//! ‖f‖ = sup_{k∈ℤ} φ(k) · ( q^k ∫_{B^k} |f|^r |y|^α dy )^{1/r}
//! ```
//!
//! computed exactly over all of `ℤ`. Let `T(k)` be the `r`-th power of the
//! term. On a finite window around the breakpoints of `φ` and the window
//! of `f` it is enumerated. Outside, both `φ` and `f` follow a single
//! segment/tail, so `T(k)` behaves like `k^e · exp(k · rate)`. The sign of
//! the rate decides between blow-up, a limit, and decay. In the decaying and
//! limit regimes enumeration continues until an explicit envelope proves
//! that no later term can beat the best one found.

use serde::Serialize;

use crate::error::{Error, Result, Side};
use crate::field::{FieldParams, integer_alpha};
use crate::phi::{PhiCertificate, PhiSpec};
use crate::radial::RadialFunction;
use crate::series::{leading_excess, ln_add};

/// Asymptotic rates closer to zero than this count as zero.
pub const RATE_TOL: f64 = 1e-12;
/// Relative slack when an envelope is compared with a limit value.
const LIMIT_TOL: f64 = 1e-13;
/// Terms within this relative distance of the maximum are ties.
const TIE_TOL: f64 = 1e-12;
const MAX_STEPS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct MorreyParams {
    pub field: FieldParams,
    pub r: f64,
    pub alpha: f64,
    pub phi: PhiSpec,
}

impl MorreyParams {
    pub fn new(field: FieldParams, r: f64, alpha: f64, phi: PhiSpec) -> Result<Self> {
        if !(r >= 1.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("r must be ≥ 1, got {r}")));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
        }
        Ok(MorreyParams { field, r, alpha, phi })
    }

    /// The unweighted space (`α = 0`), only for sanity comparisons.
    pub fn unweighted(field: FieldParams, r: f64, phi: PhiSpec) -> Result<Self> {
        let mut p = Self::new(field, r, 1.0, phi)?;
        p.alpha = 0.0;
        Ok(p)
    }

    pub fn q(&self) -> f64 {
        self.field.qf()
    }
}

/// Where the supremum is reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "k")]
pub enum Argmax {
    /// Attained; the smallest maximiser.
    Finite(i64),
    /// Approached (or unbounded) as `k → −∞`.
    TowardNegInfinity,
    /// Approached (or unbounded) as `k → +∞`.
    TowardPosInfinity,
    /// Every term is zero.
    Everywhere,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MorreyNorm {
    /// `+∞` when `f` is outside the space.
    pub value: f64,
    pub argmax: Argmax,
    /// Some tail sum had no closed form and was summed with a certified remainder.
    pub truncated: bool,
}

impl MorreyNorm {
    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    fn infinite(argmax: Argmax, truncated: bool) -> Self {
        MorreyNorm {
            value: f64::INFINITY,
            argmax,
            truncated,
        }
    }
}

/// `φ(k) (q^k ∫_{B^k} |f|^r ω_α)^{1/r}` for a single `k`.
pub fn morrey_term(f: &RadialFunction, params: &MorreyParams, k: i64) -> Result<f64> {
    let ln_w = f
        .ln_weighted_ball_integral(&params.field, k, params.r, params.alpha)
        .map_err(not_in_space)?;
    let ln_t = params.r * params.phi.ln_eval(params.q(), k) + k as f64 * params.q().ln() + ln_w;
    Ok((ln_t / params.r).exp())
}

fn not_in_space(e: Error) -> Error {
    match e {
        Error::NonIntegrable(side) => Error::NotInSpace(side),
        other => other,
    }
}

/// Running record of enumerated `ln T(k)`.
struct Terms {
    seen: Vec<(i64, f64)>,
}

impl Terms {
    fn best(&self) -> f64 {
        self.seen.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max)
    }

    fn push(&mut self, k: i64, ln_t: f64) {
        self.seen.push((k, ln_t));
    }

    /// Smallest `k` whose term ties the maximum.
    fn argmax(&self) -> (i64, f64) {
        let best = self.best();
        let k = self
            .seen
            .iter()
            .filter(|t| t.1 >= best - TIE_TOL)
            .map(|t| t.0)
            .min()
            .unwrap_or(0);
        (k, best)
    }
}

pub fn morrey_norm(f: &RadialFunction, params: &MorreyParams) -> Result<MorreyNorm> {
    if f.is_zero() {
        return Ok(MorreyNorm {
            value: 0.0,
            argmax: Argmax::Everywhere,
            truncated: false,
        });
    }
    let field = &params.field;
    let (r, alpha) = (params.r, params.alpha);
    let lnq = field.qf().ln();
    let lnw = (1.0 - 1.0 / field.qf()).ln();
    let phi = &params.phi;
    let truncated = f.upper_tail().as_geometric().is_none() && !f.upper_tail().is_zero()
        || f.lower_tail().as_geometric().is_none() && !f.lower_tail().is_zero();

    let (lo, hi) = f.window();
    let bps = phi.breakpoints();
    let kl0 = lo.min(bps.first().copied().unwrap_or(0)).min(0);
    let kr0 = (hi + 1).max(bps.last().copied().unwrap_or(0)).max(1);
    let ln_phi_r = |k: i64| r * phi.ln_eval(field.qf(), k);

    // Window: accumulate W_k leftwards from k = kr0.
    let mut terms = Terms { seen: Vec::new() };
    let mut ln_w = f.ln_upper_mass(field, kr0, r, alpha).map_err(not_in_space)?;
    let mut ln_w_at_lo = f64::NEG_INFINITY;
    for k in (kl0..=kr0).rev() {
        if k < kr0 {
            ln_w = ln_add(ln_w, f.ln_sphere_mass(field, k, r, alpha));
        }
        if k == lo {
            ln_w_at_lo = ln_w;
        }
        terms.push(k, ln_phi_r(k) + k as f64 * lnq + ln_w);
    }
    let ln_w_left = ln_w;

    // Right side, k > kr0: φ = c₊ q^{-β₊k}, f on its upper tail.
    let mut right_limit = f64::NEG_INFINITY;
    if let Some(lead) = f.upper_tail().leading_upper() {
        let seg = phi.last();
        let b = r * lead.sigma.ln() - (alpha + 1.0) * lnq;
        let a = (1.0 - seg.beta * r) * lnq;
        let e = lead.degree as f64 * r;
        let rate = a + b;
        if rate > RATE_TOL || (rate.abs() <= RATE_TOL && lead.degree > 0) {
            return Ok(MorreyNorm::infinite(Argmax::TowardPosInfinity, truncated));
        }
        let limit = rate.abs() <= RATE_TOL;
        let rate = if limit { 0.0 } else { rate };
        let rho = b.exp();
        let ln_core = r * seg.c.ln() + lnw + r * lead.coef.abs().ln();
        if limit {
            right_limit = ln_core - (-b.exp_m1()).ln();
        }
        let mut k = kr0;
        let mut steps = 0;
        loop {
            let kf = k as f64;
            let theta = (1.0 + 1.0 / kf).powf(e) * rho;
            if theta < 1.0 {
                let eps = leading_excess(f.upper_tail(), k);
                let ln_u = ln_core + kf * rate + r * eps.ln_1p() + e * kf.ln() - (1.0 - theta).ln();
                let done = if limit {
                    ln_u <= terms.best().max(right_limit) + LIMIT_TOL
                } else {
                    a + theta.ln() <= 0.0 && ln_u <= terms.best()
                };
                if done {
                    break;
                }
            }
            k += 1;
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::NoConvergence("Morrey supremum, k → +∞".into()));
            }
            let ln_wk = f.ln_upper_mass(field, k, r, alpha).map_err(not_in_space)?;
            terms.push(k, ln_phi_r(k) + k as f64 * lnq + ln_wk);
        }
    }

    // Left side, k = −n < kl0: φ = c₋ q^{-β₋k}, f on its lower tail.
    let seg = phi.first();
    let a = -(1.0 - seg.beta * r) * lnq;
    let ln_c = r * seg.c.ln();
    let mut left_limit = f64::NEG_INFINITY;
    let reflected = f.lower_tail().reflect();
    match reflected.leading_upper() {
        None => {
            if a > RATE_TOL {
                return Ok(MorreyNorm::infinite(Argmax::TowardNegInfinity, truncated));
            }
            // otherwise T is constant or decreasing to the left of kl0
        }
        Some(lead) => {
            let b = r * lead.sigma.ln() + (alpha + 1.0) * lnq;
            let e = lead.degree as f64 * r;
            if b < -RATE_TOL {
                let ln_total = ln_add(ln_w_at_lo, f.ln_lower_mass(field, r, alpha).map_err(not_in_space)?);
                if a > RATE_TOL {
                    return Ok(MorreyNorm::infinite(Argmax::TowardNegInfinity, truncated));
                }
                if a.abs() <= RATE_TOL {
                    left_limit = ln_c + ln_total;
                } else {
                    let mut ln_wk = ln_w_left;
                    let mut n = -kl0;
                    loop {
                        // T(−j) ≤ c^r e^{jA} W_total for every j ≥ n
                        if ln_c + n as f64 * a + ln_total <= terms.best() {
                            break;
                        }
                        n += 1;
                        if (n + kl0) as usize > MAX_STEPS {
                            return Err(Error::NoConvergence("Morrey supremum, k → −∞".into()));
                        }
                        ln_wk = ln_add(ln_wk, f.ln_sphere_mass(field, -n, r, alpha));
                        terms.push(-n, ln_c + n as f64 * a + ln_wk);
                    }
                }
            } else {
                let rate = a + b;
                if rate > RATE_TOL || (rate.abs() <= RATE_TOL && (b <= RATE_TOL || lead.degree > 0)) {
                    return Ok(MorreyNorm::infinite(Argmax::TowardNegInfinity, truncated));
                }
                let limit = rate.abs() <= RATE_TOL;
                let rate = if limit { 0.0 } else { rate };
                let ln_core = lnw + r * lead.coef.abs().ln();
                if limit {
                    left_limit = ln_c + ln_core - (-(-b).exp_m1()).ln();
                }
                // x_j = e^{jA} W_{−j} obeys x_j = e^A x_{j−1} + y_j. With y_j ≤ Y for
                // j > n, every later x_j stays below max(x_n, Y / (1 − e^A)).
                let ln_one_minus_ea = (-a.exp_m1()).ln();
                let mut ln_wk = ln_w_left;
                let mut n = -kl0;
                loop {
                    let eps = leading_excess(&reflected, n + 1);
                    let ln_y = ln_core + r * eps.ln_1p() + ln_sup_power_exp(e, rate, (n + 1) as f64);
                    let ln_x = n as f64 * a + ln_wk;
                    let ln_u = ln_c + ln_x.max(ln_y - ln_one_minus_ea);
                    let done = if limit {
                        ln_u <= terms.best().max(left_limit) + LIMIT_TOL
                    } else {
                        ln_u <= terms.best()
                    };
                    if done {
                        break;
                    }
                    n += 1;
                    if (n + kl0) as usize > MAX_STEPS {
                        return Err(Error::NoConvergence("Morrey supremum, k → −∞".into()));
                    }
                    ln_wk = ln_add(ln_wk, f.ln_sphere_mass(field, -n, r, alpha));
                    terms.push(-n, ln_c + n as f64 * a + ln_wk);
                }
            }
        }
    }

    let (k, best) = terms.argmax();
    let (ln_t, argmax) = if left_limit > best + TIE_TOL && left_limit >= right_limit {
        (left_limit, Argmax::TowardNegInfinity)
    } else if right_limit > best + TIE_TOL {
        (right_limit, Argmax::TowardPosInfinity)
    } else {
        (best, Argmax::Finite(k))
    };
    Ok(MorreyNorm {
        value: (ln_t / r).exp(),
        argmax,
        truncated,
    })
}

/// `ln sup_{x ≥ x0} x^e e^{x·rate}` for `rate ≤ 0` (`e = 0` when `rate = 0`).
fn ln_sup_power_exp(e: f64, rate: f64, x0: f64) -> f64 {
    let at = |x: f64| e * x.ln() + x * rate;
    if e == 0.0 || rate >= 0.0 {
        return at(x0);
    }
    at(x0.max(e / -rate))
}

/// `C (ω_α(B^η)/|B^η|)^{1/r} max(1, q^{-η/r})`, the bound on the norm of the
/// indicator of `B^η`.
pub fn char_ball_norm_bound(eta: i64, params: &MorreyParams, cert: &PhiCertificate) -> Result<f64> {
    let c = match (cert.in_class, cert.c_class) {
        (true, Some(c)) => c,
        _ => return Err(Error::NotInClass("the indicator bound needs a phi in the class".into())),
    };
    let q = params.q();
    let (r, alpha) = (params.r, params.alpha);
    let eta_f = eta as f64;
    let ln_ratio = match integer_alpha(alpha) {
        Some(0) => 0.0,
        _ => (q - 1.0).ln() + (alpha - eta_f * (alpha + 1.0)) * q.ln() - (q.powf(alpha + 1.0) - 1.0).ln() + eta_f * q.ln(),
    };
    Ok(c * (ln_ratio / r).exp() * q.powf(-eta_f / r).max(1.0))
}

/// `⟨y⟩^{-N}` together with whether its norm is guaranteed finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub function: RadialFunction,
    /// `N > (α+1)/r`.
    pub guaranteed_finite: bool,
}

pub fn japanese_bracket(n: f64, params: &MorreyParams) -> Result<Bracket> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::InvalidParameter(format!("bracket exponent must be > 0, got {n}")));
    }
    Ok(Bracket {
        function: RadialFunction::bracket_with_base(params.q().powf(n)),
        guaranteed_finite: n > (params.alpha + 1.0) / params.r,
    })
}

/// Side on which a function leaves the space, if the caller needs to name it.
pub fn divergent_side(norm: &MorreyNorm) -> Option<Side> {
    match (norm.is_finite(), norm.argmax) {
        (false, Argmax::TowardNegInfinity) => Some(Side::Lower),
        (false, Argmax::TowardPosInfinity) => Some(Side::Upper),
        _ => None,
    }
}
