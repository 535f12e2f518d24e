//! Sphere averages of functions on `F_p((t))`, estimated by Monte Carlo.
//!
//! A function that depends on digits and not only on `|x|` is reduced to its
//! radial part `f̄`, whose value on `S^v` is the mean of `f` over that sphere.
//! Each sphere is sampled with its own seeded stream, so results do not depend
//! on how the work is scheduled.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldParams, HaarSampler, LaurentElement, Region};
use crate::radial::RadialFunction;

pub const MIN_SAMPLES: usize = 100;

/// A function evaluable on digit-model elements, zero off a band of spheres.
pub trait DigitFunction: Sync {
    /// `f(x) = 0` unless `v(x) ∈ [lo, hi]`.
    fn support(&self) -> (i64, i64);
    /// How many digits from the leading one `eval` reads.
    fn depth(&self) -> usize;
    fn eval(&self, x: &LaurentElement) -> f64;
}

/// `f(x) = a_{v(x)} · factors[digit_{v(x)+position}(x)]`.
///
/// Position 0 is the leading digit, uniform on `1..p` over a sphere; later
/// positions are uniform on `0..p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DigitModel {
    pub p: u32,
    pub lo: i64,
    pub sphere_values: Vec<f64>,
    pub position: usize,
    pub factors: Vec<f64>,
}

impl DigitModel {
    pub fn new(p: u32, lo: i64, sphere_values: Vec<f64>, position: usize, factors: Vec<f64>) -> Result<Self> {
        if sphere_values.is_empty() {
            return Err(Error::InvalidParameter("digit model needs at least one sphere".into()));
        }
        if factors.len() != p as usize {
            return Err(Error::InvalidParameter(format!("need {p} digit factors, got {}", factors.len())));
        }
        Ok(DigitModel {
            p,
            lo,
            sphere_values,
            position,
            factors,
        })
    }

    /// `[digit_{v+position}(x) = digit]` on spheres `lo..=hi`.
    pub fn digit_indicator(p: u32, lo: i64, hi: i64, position: usize, digit: u32) -> Result<Self> {
        let factors = (0..p).map(|d| if d == digit { 1.0 } else { 0.0 }).collect();
        Self::new(p, lo, vec![1.0; (hi - lo + 1).max(0) as usize], position, factors)
    }

    /// A radial function with finite support, lifted to the digit model.
    pub fn radial(f: &RadialFunction, p: u32) -> Result<Self> {
        if !f.lower_tail().is_zero() || !f.upper_tail().is_zero() {
            return Err(Error::InvalidParameter("only finitely supported functions can be lifted".into()));
        }
        Self::new(p, f.lo(), f.values().to_vec(), 0, vec![1.0; p as usize])
    }

    /// The exact sphere average.
    pub fn exact_average(&self) -> RadialFunction {
        let digits: Vec<f64> = if self.position == 0 {
            self.factors[1..].to_vec()
        } else {
            self.factors.clone()
        };
        let mean = digits.iter().sum::<f64>() / digits.len() as f64;
        let values = self.sphere_values.iter().map(|a| a * mean).collect();
        RadialFunction::from_window(self.lo, values).expect("nonempty window")
    }
}

impl DigitFunction for DigitModel {
    fn support(&self) -> (i64, i64) {
        (self.lo, self.lo + self.sphere_values.len() as i64 - 1)
    }

    fn depth(&self) -> usize {
        self.position + 1
    }

    fn eval(&self, x: &LaurentElement) -> f64 {
        let Some(v) = x.valuation() else {
            return 0.0;
        };
        let (lo, hi) = self.support();
        if v < lo || v > hi {
            return 0.0;
        }
        let d = x.digit(v + self.position as i64).unwrap_or(0);
        self.sphere_values[(v - lo) as usize] * self.factors[d as usize]
    }
}

/// Seed of the stream used for sphere `v`.
pub(crate) fn sphere_seed(seed: u64, v: i64) -> u64 {
    seed ^ (v as u64).wrapping_add(0x51).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Sphere-by-sphere Monte Carlo estimate of `f̄`.
#[derive(Debug, Clone, PartialEq)]
pub struct Radialized {
    /// Sample means on the support, zero elsewhere.
    pub function: RadialFunction,
    /// Standard error of each mean.
    pub std_err: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    values: Vec<Vec<f64>>,
}

impl Radialized {
    /// `(mean |f|^r)^{1/r}` per sphere. Its Morrey norm is the Monte Carlo
    /// estimate of the norm of `f`, since that norm sees `f` only through
    /// sphere integrals of `|f|^r`.
    pub fn moment_root(&self, r: f64) -> RadialFunction {
        let values = self
            .values
            .iter()
            .map(|vs| (vs.iter().map(|x| x.abs().powf(r)).sum::<f64>() / vs.len() as f64).powf(1.0 / r))
            .collect();
        RadialFunction::from_window(self.function.lo(), values).expect("nonempty window")
    }
}

pub fn radialize(f: &dyn DigitFunction, field: &FieldParams, samples: usize, seed: u64) -> Result<Radialized> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!("need at least {MIN_SAMPLES} samples per sphere, got {samples}")));
    }
    field.digit_prime()?;
    let (lo, hi) = f.support();
    if hi < lo {
        return Err(Error::InvalidParameter("empty support".into()));
    }
    let depth = f.depth();
    let values = (lo..=hi)
        .into_par_iter()
        .map(|v| {
            let mut sampler = HaarSampler::new(field, sphere_seed(seed, v))?;
            (0..samples)
                .map(|_| Ok(f.eval(&sampler.sample(Region::Sphere(v), depth)?)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let mut means = Vec::with_capacity(values.len());
    let mut std_err = Vec::with_capacity(values.len());
    for vs in &values {
        let (m, se) = mean_and_se(vs);
        means.push(m);
        std_err.push(se);
    }
    Ok(Radialized {
        function: RadialFunction::from_window(lo, means)?,
        std_err,
        samples,
        seed,
        values,
    })
}

pub(crate) fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}
