//! Statistical check that operators only see the sphere averages.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{HaarSampler, Region};
use crate::kernel::{apply_operator, apply_operator_truncated, KernelSpec};
use crate::morrey::{morrey_norm, MorreyParams};
use crate::radialize::{mean_and_se, radialize, sphere_seed, DigitFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Probe {
    pub m: i64,
    /// `𝒯f(s)` from sphere sums of the raw kernel against `f` itself.
    pub direct: f64,
    pub direct_se: f64,
    /// `𝒯f̄` from the convolution applied to the estimated radial part.
    pub radial: f64,
    pub radial_se: f64,
    /// `|direct − radial|` in combined standard errors.
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadializationCheck {
    pub probes: Vec<Probe>,
    pub within_3_sigma: bool,
    pub norm_f: f64,
    pub norm_fbar: f64,
    pub contraction_holds: bool,
    pub samples: usize,
    pub seed: u64,
}

/// Compares `𝒯f` and `𝒯f̄` at each probe `|s| = q^{-m}` and checks
/// `‖f̄‖ ≤ ‖f‖`. The two estimates use independent sample streams.
pub fn mc_check_radialization(
    spec: &KernelSpec,
    f: &dyn DigitFunction,
    params: &MorreyParams,
    probes: &[i64],
    samples: usize,
    seed: u64,
) -> Result<RadializationCheck> {
    let field = &params.field;
    let (lo, hi) = f.support();
    if hi < lo {
        return Err(Error::InvalidParameter("the function must declare a nonempty support".into()));
    }
    let q = field.qf();
    let w = 1.0 - 1.0 / q;
    let bar = radialize(f, field, samples, seed)?;

    let tfbar = match apply_operator(spec, field, &bar.function) {
        Ok(g) => probes.iter().map(|&m| g.eval(m)).collect::<Vec<_>>(),
        Err(Error::KernelNotExact(_)) => {
            let (plo, phi) = (probes.iter().min().copied().unwrap_or(0), probes.iter().max().copied().unwrap_or(0));
            let t = apply_operator_truncated(spec, field, &bar.function, (plo, phi), 1e-15)?;
            probes.iter().map(|&m| t.function.eval(m)).collect()
        }
        Err(e) => return Err(e),
    };

    let independent = seed ^ 0xA5A5_5A5A_0F0F_F0F0;
    let depth = f.depth();
    // per sphere: samples of f on S^l, shared by all probes
    let spheres = (lo..=hi)
        .into_par_iter()
        .map(|l| {
            let mut sampler = HaarSampler::new(field, sphere_seed(independent, l))?;
            (0..samples)
                .map(|_| {
                    let t = sampler.sample(Region::Sphere(l), depth)?;
                    let norm = t.valuation().map_or(0.0, |v| q.powi(-v as i32));
                    Ok((norm, f.eval(&t)))
                })
                .collect::<Result<Vec<(f64, f64)>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::with_capacity(probes.len());
    for (pi, &m) in probes.iter().enumerate() {
        let s = q.powi(-m as i32);
        let mut direct = 0.0;
        let mut var_direct = 0.0;
        let mut var_radial = 0.0;
        for (i, l) in (lo..=hi).enumerate() {
            let sphere = q.powi(-l as i32) * w;
            let xs = spheres[i]
                .iter()
                .map(|(t, v)| Ok(spec.raw(field, s, *t)? * v * sphere))
                .collect::<Result<Vec<f64>>>()?;
            let (mean, se) = mean_and_se(&xs);
            direct += mean;
            var_direct += se * se;
            // weight of f̄_l in (𝒯f̄)_m
            let g = spec.raw(field, s, q.powi(-l as i32))? * sphere;
            var_radial += (g * bar.std_err[i]).powi(2);
        }
        let (direct_se, radial_se) = (var_direct.sqrt(), var_radial.sqrt());
        let combined = (var_direct + var_radial).sqrt();
        let diff = (direct - tfbar[pi]).abs();
        let z = if combined > 0.0 { diff / combined } else if diff <= 1e-12 * direct.abs() { 0.0 } else { f64::INFINITY };
        out.push(Probe {
            m,
            direct,
            direct_se,
            radial: tfbar[pi],
            radial_se,
            z,
        });
    }
    let norm_fbar = morrey_norm(&bar.function, params)?.value;
    let norm_f = morrey_norm(&bar.moment_root(params.r), params)?.value;
    Ok(RadializationCheck {
        within_3_sigma: out.iter().all(|p| p.z <= 3.0),
        probes: out,
        norm_f,
        norm_fbar,
        contraction_holds: norm_fbar <= norm_f * (1.0 + 1e-12),
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldParams;
    use crate::phi::PhiSpec;
    use crate::radialize::DigitModel;

    #[test]
    fn perturbed_function_agrees() {
        let params = MorreyParams::new(FieldParams::p_series(3).unwrap(), 2.0, 0.5, PhiSpec::lebesgue(2.0)).unwrap();
        let f = DigitModel::new(3, -1, vec![1.0, 2.0, 0.5], 1, vec![1.0, 2.0, 1.0]).unwrap();
        for spec in [KernelSpec::hlp(), KernelSpec::hilbert()] {
            let c = mc_check_radialization(&spec, &f, &params, &[-2, 0, 2], 2000, 9).unwrap();
            assert!(c.within_3_sigma, "{c:?}");
            assert!(c.contraction_holds);
        }
    }
}
