//! Certified truncation of one-sided series.
//!
//! Every infinite sum that has no closed form is summed term by term until a
//! majorant `coef · n^power · rho^n` proves the remainder is below tolerance.
//! For `n ≥ N ≥ 1` and `θ = (1 + 1/N)^power · rho < 1`,
//!
//! ```text
//! Σ_{n≥N} n^power rho^n ≤ N^power rho^N / (1 − θ)
//! ```
//!
//! because consecutive majorant terms shrink by at most `θ`.

use crate::expoly::ExpPoly;

/// `|term(n)| ≤ coef · n^power · rho^n` for all `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Majorant {
    pub coef: f64,
    pub power: f64,
    pub rho: f64,
}

impl Majorant {
    /// Bound on `Σ_{n≥start} coef n^power rho^n`, if the geometric comparison applies.
    pub fn remainder(&self, start: i64) -> Option<f64> {
        if self.coef == 0.0 {
            return Some(0.0);
        }
        if start < 1 {
            return None;
        }
        let n = start as f64;
        let theta = (1.0 + 1.0 / n).powf(self.power) * self.rho;
        (theta < 1.0).then(|| self.coef * (self.power * n.ln() + n * self.rho.ln()).exp() / (1.0 - theta))
    }

    pub fn converges(&self) -> bool {
        self.coef == 0.0 || self.rho < 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSum {
    pub value: f64,
    /// Certified bound on what was left out.
    pub bound: f64,
    pub terms: usize,
}

/// `Σ_{n≥start} term(n)`, stopping once the remainder is below
/// `tol · Σ|term|`. `None` if the majorant does not converge or the budget
/// runs out first.
pub fn certified_sum(
    start: i64,
    mut term: impl FnMut(i64) -> f64,
    maj: &Majorant,
    tol: f64,
    max_terms: usize,
) -> Option<TailSum> {
    if !maj.converges() {
        return None;
    }
    let mut value = 0.0;
    let mut abs = 0.0;
    let mut n = start;
    for terms in 0..=max_terms {
        if let Some(bound) = maj.remainder(n) {
            if bound <= tol * abs || bound == 0.0 || (abs == 0.0 && bound < f64::MIN_POSITIVE) {
                return Some(TailSum { value, bound, terms });
            }
        }
        let t = term(n);
        value += t;
        abs += t.abs();
        n += 1;
    }
    None
}

/// Majorant of `l ↦ w · |E(l)|^p · x^l` on `l ≥ 1`.
pub fn power_majorant(e: &ExpPoly<f64>, p: f64, x: f64, w: f64) -> Majorant {
    let (m, d, s) = e.majorant();
    Majorant {
        coef: w * m.powf(p),
        power: d as f64 * p,
        rho: s.powf(p) * x,
    }
}

/// Relative size of everything but the leading term of `E` on `l ≥ k ≥ 1`:
/// `|E(l)| ≤ |c₀| l^{d₀} σ₀^l (1 + ε)` for all `l ≥ k`.
pub fn leading_excess(e: &ExpPoly<f64>, k: i64) -> f64 {
    let Some(lead) = e.leading_upper() else {
        return 0.0;
    };
    let k = k.max(1) as f64;
    let c0 = lead.coef.abs();
    let mut eps = 0.0;
    for g in e.groups() {
        let s = g.sigma / lead.sigma;
        for (i, c) in g.poly.coeffs().iter().enumerate() {
            if g.sigma == lead.sigma && i == lead.degree {
                continue;
            }
            let a = i as f64 - lead.degree as f64;
            eps += c.abs() / c0 * sup_power_geometric(a, s, k);
        }
    }
    eps
}

/// `sup_{x ≥ k} x^a s^x` for `0 < s ≤ 1`, with `a ≤ 0` when `s = 1`.
fn sup_power_geometric(a: f64, s: f64, k: f64) -> f64 {
    let at = |x: f64| (a * x.ln() + x * s.ln()).exp();
    if a <= 0.0 || s >= 1.0 {
        return at(k);
    }
    let peak = a / -s.ln();
    at(k.max(peak))
}

/// `ln(e^a + e^b)` without overflow.
pub fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `ln Σ_{l≥k} e^{ln_term(l)}` for `k ≥ 1`, given `e^{ln_term(l)} ≤ e^{ln_coef} l^power rho^l`.
///
/// Terms are rescaled by the majorant at `k`. With `l = k + n − 1` and
/// `l/k ≤ n`, the rescaled terms obey `n^power rho^{n−1}`, which is again a
/// [`Majorant`].
pub fn certified_ln_sum(
    k: i64,
    ln_term: impl Fn(i64) -> f64,
    ln_coef: f64,
    power: f64,
    rho: f64,
    tol: f64,
    max_terms: usize,
) -> Option<f64> {
    debug_assert!(k >= 1);
    if !(rho < 1.0) {
        return None;
    }
    if ln_coef == f64::NEG_INFINITY {
        return Some(f64::NEG_INFINITY);
    }
    let reference = ln_coef + power * (k as f64).ln() + k as f64 * rho.ln();
    let maj = Majorant {
        coef: 1.0 / rho,
        power,
        rho,
    };
    let s = certified_sum(1, |n| (ln_term(k + n - 1) - reference).exp(), &maj, tol, max_terms)?;
    Some(reference + s.value.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expoly::{Group, Poly};

    #[test]
    fn geometric_remainder_is_exact_bound() {
        let maj = Majorant { coef: 1.0, power: 0.0, rho: 0.5 };
        assert_eq!(maj.remainder(1), Some(1.0));
        let s = certified_sum(1, |n| 0.5f64.powi(n as i32), &maj, 1e-15, 1000).unwrap();
        assert!((s.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn polynomial_weighted_sum() {
        // Σ_{n≥1} n^2 / 2^n = 6
        let maj = Majorant { coef: 1.0, power: 2.0, rho: 0.5 };
        let s = certified_sum(1, |n| (n * n) as f64 / 2f64.powi(n as i32), &maj, 1e-15, 10_000).unwrap();
        assert!((s.value - 6.0).abs() < 1e-12);
        assert!(s.bound <= 1e-14 * 6.0);
    }

    #[test]
    fn divergent_majorant_is_rejected() {
        let maj = Majorant { coef: 1.0, power: 0.0, rho: 1.0 };
        assert!(certified_sum(1, |_| 1.0, &maj, 1e-12, 100).is_none());
    }

    #[test]
    fn log_sum_handles_huge_indices() {
        // Σ_{l≥k} 2^{-l} = 2^{1-k}, far beyond f64 range
        let k = 5000;
        let got = certified_ln_sum(k, |l| -(l as f64) * 2f64.ln(), 0.0, 0.0, 0.5, 1e-15, 10_000).unwrap();
        let expect = (1 - k) as f64 * 2f64.ln();
        assert!((got - expect).abs() < 1e-12 * expect.abs());
        assert!((ln_add(1000.0, 1000.0) - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn excess_bounds_subleading_terms() {
        // E(l) = 2 l + 5 + 3·(1/2)^l l^2
        let e = ExpPoly::from_groups(vec![
            Group { sigma: 1.0, poly: Poly::from_coeffs(vec![5.0, 2.0]) },
            Group { sigma: 0.5, poly: Poly::monomial(2, 3.0) },
        ]);
        for k in 1..30 {
            let eps = leading_excess(&e, k);
            for l in k..k + 50 {
                let lf = l as f64;
                assert!(e.eval(l).abs() <= 2.0 * lf * (1.0 + eps) * (1.0 + 1e-14));
            }
        }
    }
}
