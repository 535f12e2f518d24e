//! Exponential polynomials on the integers: finite sums `Σ σ^l · P(l)`.
//!
//! Tails of radial functions and of reduced kernel profiles live in this
//! class. It is closed under index shifts, pointwise sums and, crucially,
//! under discrete convolution over half-lines, which is what lets the
//! operators be evaluated in closed form. The workhorse is the discrete
//! antidifference of `ρ^j Q(j)`:
//!
//! ```text
//! ρ ≠ 1:  F(n) = ρ^n R(n),  deg R = deg Q,      ρ R(n+1) − R(n) = Q(n)
//! ρ = 1:  F(n) = R(n),      deg R = deg Q + 1,  R(n+1) − R(n)   = Q(n)
//! ```
//!
//! so that `Σ_{j=a}^{b} ρ^j Q(j) = F(b+1) − F(a)`, and an infinite end
//! contributes zero exactly when `F` vanishes there (`ρ > 1` at `−∞`,
//! `ρ < 1` at `+∞`).

use crate::scalar::Scalar;

/// Polynomial with coefficients in ascending degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    c: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(v: T) -> Self {
        Self::from_coeffs(vec![v])
    }

    pub fn monomial(degree: usize, coef: T) -> Self {
        let mut c = vec![T::zero(); degree + 1];
        c[degree] = coef;
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(c: Vec<T>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.c.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.c.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_i(&self, x: i64) -> T {
        match self.c.len() {
            0 => T::zero(),
            1 => self.c[0].clone(),
            _ => self.eval(&T::from_i64(x)),
        }
    }

    /// Sum of absolute coefficients; bounds `|P(x)| / |x|^deg` for `|x| ≥ 1`.
    pub fn abs_coeff_sum(&self) -> T {
        self.c.iter().fold(T::zero(), |acc, c| acc + c.abs_val())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).cloned().unwrap_or_else(T::zero);
            let b = other.c.get(i).cloned().unwrap_or_else(T::zero);
            let scale = a.abs_val() + b.abs_val();
            let s = a + b;
            out.push(if T::cancelled(&s, &scale) { T::zero() } else { s });
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_coeffs(self.c.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    /// `x ↦ P(x + s)`.
    pub fn shift(&self, s: i64) -> Self {
        if s == 0 || self.c.len() <= 1 {
            return self.clone();
        }
        let st = T::from_i64(s);
        let mut out = vec![T::zero(); self.c.len()];
        for (d, cd) in self.c.iter().enumerate() {
            let mut spow = T::one();
            // (x+s)^d = Σ_k C(d,k) s^(d-k) x^k, iterate k downward so s^(d-k) grows.
            for k in (0..=d).rev() {
                let term = cd.clone() * T::binomial(d as u32, k as u32) * spow.clone();
                out[k] = out[k].clone() + term;
                spow = spow * st.clone();
            }
        }
        Self::from_coeffs(out)
    }

    /// Coefficients of `P(m − j)` grouped by powers of `m`: entry `a` is the
    /// polynomial in `j` multiplying `m^a`.
    fn split_difference(&self) -> Vec<Self> {
        let n = self.c.len();
        (0..n)
            .map(|a| {
                let mut cj = vec![T::zero(); n - a];
                for d in a..n {
                    let sign = if (d - a) % 2 == 0 { T::one() } else { -T::one() };
                    cj[d - a] = self.c[d].clone() * T::binomial(d as u32, a as u32) * sign;
                }
                Self::from_coeffs(cj)
            })
            .collect()
    }
}

/// One end of a summation range. `Shift(s)` stands for `m + s` where `m` is
/// the free output index of a convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    NegInf,
    At(i64),
    Shift(i64),
    PosInf,
}

impl Limit {
    fn succ(self) -> Self {
        match self {
            Limit::At(c) => Limit::At(c + 1),
            Limit::Shift(s) => Limit::Shift(s + 1),
            other => other,
        }
    }
}

/// A sum over an infinite range whose terms do not decay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Divergent {
    pub at: Limit,
}

/// Antidifference of `j ↦ ρ^j Q(j)`.
#[derive(Debug, Clone)]
pub enum Antidifference<T> {
    Geometric { rho: T, r: Poly<T> },
    Polynomial(Poly<T>),
}

impl<T: Scalar> Antidifference<T> {
    pub fn new(rho: &T, q: &Poly<T>) -> Self {
        let d = match q.degree() {
            None => {
                return Antidifference::Geometric {
                    rho: rho.clone(),
                    r: Poly::zero(),
                }
            }
            Some(d) => d,
        };
        let qc = q.coeffs();
        if rho.is_one() {
            let mut r = vec![T::zero(); d + 2];
            for i in (0..=d).rev() {
                let mut acc = qc[i].clone();
                for (k, rk) in r.iter().enumerate().skip(i + 2) {
                    acc = acc - T::binomial(k as u32, i as u32) * rk.clone();
                }
                r[i + 1] = acc / T::from_i64(i as i64 + 1);
            }
            Antidifference::Polynomial(Poly::from_coeffs(r))
        } else {
            let denom = rho.clone() - T::one();
            let mut r = vec![T::zero(); d + 1];
            for i in (0..=d).rev() {
                let mut acc = qc[i].clone();
                for (k, rk) in r.iter().enumerate().skip(i + 1) {
                    acc = acc - rho.clone() * T::binomial(k as u32, i as u32) * rk.clone();
                }
                r[i] = acc / denom.clone();
            }
            Antidifference::Geometric {
                rho: rho.clone(),
                r: Poly::from_coeffs(r),
            }
        }
    }

    pub fn at(&self, n: i64) -> T {
        match self {
            Antidifference::Geometric { rho, r } => {
                if r.is_zero() {
                    T::zero()
                } else {
                    rho.powi(n) * r.eval_i(n)
                }
            }
            Antidifference::Polynomial(r) => r.eval_i(n),
        }
    }

    /// Value at an infinite end: `Some(0)` when the antidifference vanishes
    /// there, `None` when the series diverges.
    fn at_infinity(&self, negative: bool) -> Option<T> {
        match self {
            Antidifference::Geometric { r, .. } if r.is_zero() => Some(T::zero()),
            Antidifference::Polynomial(r) if r.is_zero() => Some(T::zero()),
            Antidifference::Geometric { rho, .. } => {
                let vanishes = if negative { *rho > T::one() } else { *rho < T::one() };
                vanishes.then(T::zero)
            }
            Antidifference::Polynomial(_) => None,
        }
    }
}

/// Exponential polynomial `l ↦ Σ σ_i^l P_i(l)` with distinct `σ_i > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPoly<T> {
    groups: Vec<Group<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Group<T> {
    pub sigma: T,
    pub poly: Poly<T>,
}

/// Dominant term of an exp-poly toward one end of the lattice.
#[derive(Debug, Clone)]
pub struct Leading<T> {
    pub sigma: T,
    pub degree: usize,
    pub coef: T,
}

impl<T: Scalar> ExpPoly<T> {
    pub fn zero() -> Self {
        ExpPoly { groups: Vec::new() }
    }

    pub fn geometric(c: T, sigma: T) -> Self {
        Self::from_groups(vec![Group {
            sigma,
            poly: Poly::constant(c),
        }])
    }

    pub fn from_groups(groups: Vec<Group<T>>) -> Self {
        let mut out = ExpPoly::zero();
        for g in groups {
            out.push_group(g);
        }
        out
    }

    fn push_group(&mut self, g: Group<T>) {
        if g.poly.is_zero() {
            return;
        }
        if let Some(pos) = self.groups.iter().position(|h| h.sigma == g.sigma) {
            let merged = self.groups[pos].poly.add(&g.poly);
            if merged.is_zero() {
                self.groups.remove(pos);
            } else {
                self.groups[pos].poly = merged;
            }
        } else {
            let pos = self
                .groups
                .iter()
                .position(|h| h.sigma > g.sigma)
                .unwrap_or(self.groups.len());
            self.groups.insert(pos, g);
        }
    }

    pub fn groups(&self) -> &[Group<T>] {
        &self.groups
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// A single `c·σ^l` term, if that is all this is.
    pub fn as_geometric(&self) -> Option<(T, T)> {
        match self.groups.as_slice() {
            [g] if g.poly.degree() == Some(0) => Some((g.poly.coeffs()[0].clone(), g.sigma.clone())),
            _ => None,
        }
    }

    pub fn eval(&self, l: i64) -> T {
        self.groups.iter().fold(T::zero(), |acc, g| {
            acc + g.sigma.powi(l) * g.poly.eval_i(l)
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for g in &other.groups {
            out.push_group(g.clone());
        }
        out
    }

    pub fn scale(&self, k: &T) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::from_groups(
            self.groups
                .iter()
                .map(|g| Group {
                    sigma: g.sigma.clone(),
                    poly: g.poly.scale(k),
                })
                .collect(),
        )
    }

    /// `l ↦ E(l + s)`.
    pub fn shift(&self, s: i64) -> Self {
        Self::from_groups(
            self.groups
                .iter()
                .map(|g| Group {
                    sigma: g.sigma.clone(),
                    poly: g.poly.shift(s).scale(&g.sigma.powi(s)),
                })
                .collect(),
        )
    }

    /// `l ↦ E(l) · f^l`.
    pub fn scale_sigma(&self, f: &T) -> Self {
        Self::from_groups(
            self.groups
                .iter()
                .map(|g| Group {
                    sigma: g.sigma.clone() * f.clone(),
                    poly: g.poly.clone(),
                })
                .collect(),
        )
    }

    /// `n ↦ E(−n)`.
    pub fn reflect(&self) -> Self {
        Self::from_groups(
            self.groups
                .iter()
                .map(|g| Group {
                    sigma: T::one() / g.sigma.clone(),
                    poly: Poly::from_coeffs(
                        g.poly
                            .coeffs()
                            .iter()
                            .enumerate()
                            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c.clone() })
                            .collect(),
                    ),
                })
                .collect(),
        )
    }

    /// Same exp-poly over another scalar type; `None` if a coefficient does not convert.
    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<ExpPoly<U>> {
        let mut groups = Vec::with_capacity(self.groups.len());
        for g in &self.groups {
            let coeffs = g.poly.coeffs().iter().map(&f).collect::<Option<Vec<U>>>()?;
            groups.push(Group {
                sigma: f(&g.sigma)?,
                poly: Poly::from_coeffs(coeffs),
            });
        }
        Some(ExpPoly::from_groups(groups))
    }

    /// `(M, D, σ_max)` with `|E(l)| ≤ M · l^D · σ_max^l` for every `l ≥ 1`.
    pub fn majorant(&self) -> (T, usize, T) {
        let m = self
            .groups
            .iter()
            .fold(T::zero(), |acc, g| acc + g.poly.abs_coeff_sum());
        let d = self.groups.iter().filter_map(|g| g.poly.degree()).max().unwrap_or(0);
        let s = self.groups.last().map(|g| g.sigma.clone()).unwrap_or_else(T::zero);
        (m, d, s)
    }

    /// Dominant term as `l → +∞` (largest σ).
    pub fn leading_upper(&self) -> Option<Leading<T>> {
        self.groups.last().map(Self::leading_of)
    }

    /// Dominant term as `l → −∞` (smallest σ).
    pub fn leading_lower(&self) -> Option<Leading<T>> {
        self.groups.first().map(Self::leading_of)
    }

    fn leading_of(g: &Group<T>) -> Leading<T> {
        Leading {
            sigma: g.sigma.clone(),
            degree: g.poly.degree().unwrap_or(0),
            coef: g.poly.leading().cloned().unwrap_or_else(T::zero),
        }
    }

    /// `Σ_{l=lo}^{hi} E(l)` with `lo ∈ {NegInf, At}`, `hi ∈ {At, PosInf}`.
    pub fn sum_range(&self, lo: Limit, hi: Limit) -> Result<T, Divergent> {
        debug_assert!(!matches!(lo, Limit::Shift(_) | Limit::PosInf));
        debug_assert!(!matches!(hi, Limit::Shift(_) | Limit::NegInf));
        if let (Limit::At(a), Limit::At(b)) = (lo, hi) {
            if a > b {
                return Ok(T::zero());
            }
        }
        let mut total = T::zero();
        for g in &self.groups {
            let anti = Antidifference::new(&g.sigma, &g.poly);
            let upper = match hi.succ() {
                Limit::At(c) => anti.at(c),
                _ => anti.at_infinity(false).ok_or(Divergent { at: Limit::PosInf })?,
            };
            let lower = match lo {
                Limit::At(c) => anti.at(c),
                _ => anti.at_infinity(true).ok_or(Divergent { at: Limit::NegInf })?,
            };
            total = total + upper - lower;
        }
        Ok(total)
    }
}

impl ExpPoly<f64> {
    /// `ln |E(l)|`, evaluated relative to the group that dominates at `l` so
    /// that huge `σ^l` never materialise. `−∞` where `E` vanishes.
    pub fn ln_abs(&self, l: i64) -> f64 {
        let dominant = if l >= 0 { self.groups.last() } else { self.groups.first() };
        let Some(dom) = dominant else {
            return f64::NEG_INFINITY;
        };
        let s0 = dom.sigma;
        let inner: f64 = self
            .groups
            .iter()
            .map(|g| (g.sigma / s0).powi(l as i32) * g.poly.eval_i(l))
            .sum();
        l as f64 * s0.ln() + inner.abs().ln()
    }
}

/// `m ↦ Σ_{j=lo}^{hi} G(j) · A(m − j)` as an exp-poly in `m`.
///
/// The caller guarantees the range is non-empty for the `m` it will use the
/// result at; ends may depend on `m` through [`Limit::Shift`].
pub fn conv_sum<T: Scalar>(
    g: &ExpPoly<T>,
    a: &ExpPoly<T>,
    lo: Limit,
    hi: Limit,
) -> Result<ExpPoly<T>, Divergent> {
    let mut out = ExpPoly::zero();
    let upper_end = hi.succ();
    for gg in &g.groups {
        for ga in &a.groups {
            let rho = gg.sigma.clone() / ga.sigma.clone();
            let resonant = gg.sigma == ga.sigma;
            let rho = if resonant { T::one() } else { rho };
            for (pow_m, cj) in ga.poly.split_difference().into_iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let q = gg.poly.mul(&cj);
                let anti = Antidifference::new(&rho, &q);
                let hi_part = eval_at_limit(&anti, upper_end, pow_m, gg, ga, resonant, false)?;
                let lo_part = eval_at_limit(&anti, lo, pow_m, gg, ga, resonant, true)?;
                out = out.add(&hi_part).add(&lo_part.scale(&-T::one()));
            }
        }
    }
    Ok(out)
}

/// `σ_a^m · m^pow · F(limit)` as an exp-poly in `m`.
fn eval_at_limit<T: Scalar>(
    anti: &Antidifference<T>,
    limit: Limit,
    pow_m: usize,
    gg: &Group<T>,
    ga: &Group<T>,
    resonant: bool,
    is_lower: bool,
) -> Result<ExpPoly<T>, Divergent> {
    let mono = |coef: T| Poly::monomial(pow_m, coef);
    match limit {
        Limit::At(c) => Ok(ExpPoly::from_groups(vec![Group {
            sigma: ga.sigma.clone(),
            poly: mono(anti.at(c)),
        }])),
        Limit::Shift(s) => {
            let g = match anti {
                Antidifference::Geometric { rho, r } => Group {
                    sigma: gg.sigma.clone(),
                    poly: r.shift(s).mul(&mono(rho.powi(s))),
                },
                Antidifference::Polynomial(r) => {
                    debug_assert!(resonant);
                    Group {
                        sigma: ga.sigma.clone(),
                        poly: r.shift(s).mul(&mono(T::one())),
                    }
                }
            };
            Ok(ExpPoly::from_groups(vec![g]))
        }
        Limit::NegInf | Limit::PosInf => {
            let negative = matches!(limit, Limit::NegInf);
            debug_assert_eq!(negative, is_lower);
            anti.at_infinity(negative)
                .map(|_| ExpPoly::zero())
                .ok_or(Divergent { at: limit })
        }
    }
}
