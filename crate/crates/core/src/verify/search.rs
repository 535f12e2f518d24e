//! Randomised lower-bound search for the operator norm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{apply_operator, KernelSpec};
use crate::morrey::{morrey_norm, MorreyParams};
use crate::radial::RadialFunction;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Support of the candidate functions.
    pub window: (i64, i64),
    pub restarts: usize,
    /// Hill-climbing passes per restart.
    pub iters: usize,
    /// Random functions tried before climbing.
    pub random: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            window: (-12, 12),
            restarts: 20,
            iters: 12,
            random: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best: RadialFunction,
    pub ratio: f64,
    /// Ratio of the indicator of the unit ball, the first candidate.
    pub start_ratio: f64,
    /// Best ratio among the purely random candidates.
    pub random_ratio: f64,
    pub evaluations: usize,
    pub seed: u64,
}

/// `‖𝒯f‖ / ‖f‖`, or 0 when `f` has zero or infinite norm.
pub fn operator_ratio(spec: &KernelSpec, params: &MorreyParams, f: &RadialFunction) -> Result<f64> {
    let nf = morrey_norm(f, params)?;
    if nf.value == 0.0 || !nf.is_finite() {
        return Ok(0.0);
    }
    let tf = apply_operator(spec, &params.field, f)?;
    Ok(morrey_norm(&tf, params)?.value / nf.value)
}

fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let density = rng.random_range(0.1..1.0);
    (0..n)
        .map(|_| {
            if rng.random_bool(density) {
                (rng.random_range(-4.0..4.0f64)).exp()
            } else {
                0.0
            }
        })
        .collect()
}

struct Climber<'a> {
    spec: &'a KernelSpec,
    params: &'a MorreyParams,
    lo: i64,
    evaluations: usize,
}

impl Climber<'_> {
    fn ratio(&mut self, a: &[f64]) -> Result<f64> {
        self.evaluations += 1;
        operator_ratio(self.spec, self.params, &RadialFunction::from_window(self.lo, a.to_vec())?)
    }

    /// Coordinate-wise multiplicative moves with a shrinking factor.
    fn climb(&mut self, mut a: Vec<f64>, iters: usize) -> Result<(Vec<f64>, f64)> {
        let mut best = self.ratio(&a)?;
        let mut factor: f64 = 4.0;
        for _ in 0..iters {
            let mut improved = false;
            for i in 0..a.len() {
                let scale = a.iter().cloned().fold(0.0, f64::max).max(1.0);
                let old = a[i];
                let candidates = if old == 0.0 {
                    [scale / factor, scale, 0.0]
                } else {
                    [old * factor, old / factor, 0.0]
                };
                for c in candidates {
                    if c == old {
                        continue;
                    }
                    a[i] = c;
                    let r = self.ratio(&a)?;
                    if r > best * (1.0 + 1e-12) {
                        best = r;
                        improved = true;
                        break;
                    }
                    a[i] = old;
                }
            }
            if !improved {
                factor = factor.sqrt();
                if factor < 1.001 {
                    break;
                }
            }
        }
        Ok((a, best))
    }
}

/// Best `‖𝒯f‖/‖f‖` over nonnegative `f` supported on the window. Candidates
/// are the unit-ball indicator, `random` seeded random vectors, and `restarts`
/// hill climbs. Deterministic for a given seed.
pub fn empirical_operator_norm(spec: &KernelSpec, params: &MorreyParams, search: &SearchConfig) -> Result<SearchResult> {
    let (lo, hi) = search.window;
    if hi < lo {
        return Err(Error::InvalidParameter("empty search window".into()));
    }
    let n = (hi - lo + 1) as usize;
    let start = RadialFunction::char_ball(0);
    let start_ratio = operator_ratio(spec, params, &start)?;

    let randoms = (0..search.random)
        .into_par_iter()
        .map(|i| {
            let a = random_vector(&mut seeded(search.seed, 1 + i as u64), n);
            let r = operator_ratio(spec, params, &RadialFunction::from_window(lo, a.clone())?)?;
            Ok((a, r))
        })
        .collect::<Result<Vec<_>>>()?;

    let climbs = (0..search.restarts)
        .into_par_iter()
        .map(|i| {
            let init = match i {
                0 => (lo..=hi).map(|m| if m >= 0 { 1.0 } else { 0.0 }).collect(),
                1 => (lo..=hi).map(|m| if m == 0 { 1.0 } else { 0.0 }).collect(),
                _ => random_vector(&mut seeded(search.seed, (1 << 32) + i as u64), n),
            };
            let mut c = Climber {
                spec,
                params,
                lo,
                evaluations: 0,
            };
            let (a, r) = c.climb(init, search.iters)?;
            Ok((a, r, c.evaluations))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best = (start.clone(), start_ratio);
    let mut random_ratio = 0.0f64;
    for (a, r) in &randoms {
        random_ratio = random_ratio.max(*r);
        if *r > best.1 {
            best = (RadialFunction::from_window(lo, a.clone())?, *r);
        }
    }
    let mut evaluations = 1 + randoms.len();
    for (a, r, e) in &climbs {
        evaluations += e;
        if *r > best.1 {
            best = (RadialFunction::from_window(lo, a.clone())?, *r);
        }
    }
    Ok(SearchResult {
        best: best.0.canonical(),
        ratio: best.1,
        start_ratio,
        random_ratio,
        evaluations,
        seed: search.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldParams;
    use crate::phi::PhiSpec;

    #[test]
    fn identity_ratio_is_exact() {
        let params = MorreyParams::new(FieldParams::new(3).unwrap(), 2.0, 0.5, PhiSpec::lebesgue(2.0)).unwrap();
        let cfg = SearchConfig {
            window: (-3, 3),
            restarts: 2,
            iters: 2,
            random: 10,
            seed: 5,
        };
        let s = empirical_operator_norm(&KernelSpec::identity(), &params, &cfg).unwrap();
        assert!((s.ratio - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn search_never_loses_the_start() {
        let params = MorreyParams::new(FieldParams::new(2).unwrap(), 2.0, 0.5, PhiSpec::lebesgue(2.0)).unwrap();
        let cfg = SearchConfig {
            window: (-4, 4),
            restarts: 3,
            iters: 3,
            random: 20,
            seed: 1,
        };
        let s = empirical_operator_norm(&KernelSpec::hlp(), &params, &cfg).unwrap();
        assert!(s.ratio >= s.start_ratio);
        assert!(s.ratio <= 5.785213507883244);
        let again = empirical_operator_norm(&KernelSpec::hlp(), &params, &cfg).unwrap();
        assert_eq!(s, again);
    }
}
