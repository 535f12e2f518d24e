//! Executable checks for every quantitative statement the library models.
//!
//! [`verify_suite`] runs a fixed list of check families (see [`MANIFEST`]).
//! Families run in parallel; checks come back in manifest order and every
//! randomised check derives its seed from the configured one, so two runs
//! with the same configuration agree on everything except timings.

pub mod mc;
pub mod oracles;
pub mod search;

use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{divergence_witness, hlp_finiteness, main_bound_constant, morrey_operator_constant, truncated_constant, dilation_bound};
use crate::error::{Error, Result};
use crate::expoly::ExpPoly;
use crate::field::{ball_measure, sphere_measure, weighted_ball_measure, weighted_sphere_measure, FieldParams, is_prime};
use crate::kernel::{apply_operator, apply_operator_truncated, dilate, homogeneity_check, DilationStep, KernelSpec};
use crate::morrey::{char_ball_norm_bound, japanese_bracket, morrey_norm, MorreyParams};
use crate::phi::{phi_certificate, PhiSpec};
use crate::radial::RadialFunction;
use crate::radialize::DigitModel;
use crate::scalar::rel_diff;

pub use mc::{mc_check_radialization, Probe, RadializationCheck};
pub use oracles::{direct_operator, oracle_weighted_measure, oracle_weighted_measure_exact, OracleSum};
pub use search::{empirical_operator_norm, operator_ratio, SearchConfig, SearchResult};

/// Check families and what each one establishes.
pub const MANIFEST: &[(&str, &str)] = &[
    ("weighted-measure", "closed form of the weighted ball measure equals its shell sum"),
    ("measure-decomposition", "a ball is its outer sphere plus the next ball"),
    ("indicator-norm-bound", "norm of a ball indicator is below the class-constant bound"),
    ("bracket-membership", "the Japanese bracket is in the Lebesgue-phi space exactly when N > (alpha+1)/r"),
    ("phi-class", "class certificates accept the presets and reject growth"),
    ("phi-submultiplicative", "submultiplicativity constants hold on a wide box"),
    ("dilation-identity", "Lebesgue-phi norms scale exactly under dilation"),
    ("dilation-bound", "pure-power phi norms obey the dilation bounds"),
    ("kernel-homogeneity", "builtin kernels are homogeneous of degree -1"),
    ("convolution-vs-definition", "the lattice convolution equals sphere sums of the kernel integral"),
    ("operator-positivity", "nonnegative input gives nonnegative output"),
    ("scale-commutation", "operators commute with dilations"),
    ("hardy-indicator", "Hardy operator maps the unit-ball indicator to the bracket of order one, exactly"),
    ("bound-closed-vs-truncated", "closed-form constants equal their certified partial sums"),
    ("finiteness-boundary", "the constant is finite exactly when alpha+1 < r"),
    ("operator-bound", "empirical operator norm stays below C_sm·C_class·C"),
    ("radialization", "operators see only sphere averages, and averaging does not raise the norm (statistical)"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub family: String,
    pub status: Status,
    pub measured: f64,
    pub bound: f64,
    pub tol: f64,
    pub seed: Option<u64>,
    /// Wall time of the whole family, in milliseconds.
    pub ms: u64,
    pub detail: String,
    /// Inputs that reproduce the check; always present for failures.
    pub repro: Option<serde_json::Value>,
}

impl Check {
    fn new(family: &str, name: String, ok: bool, measured: f64, bound: f64, tol: f64) -> Self {
        Check {
            name,
            family: family.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            bound,
            tol,
            seed: None,
            ms: 0,
            detail: String::new(),
            repro: None,
        }
    }

    fn skip(family: &str, name: String, detail: String) -> Self {
        Check {
            status: Status::Skip,
            detail,
            ..Check::new(family, name, true, f64::NAN, f64::NAN, 0.0)
        }
    }

    fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    fn repro(mut self, v: serde_json::Value) -> Self {
        self.repro = Some(v);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub qs: Vec<u64>,
    pub rs: Vec<f64>,
    pub alphas: Vec<f64>,
    pub seed: u64,
    /// Samples per sphere for the statistical checks.
    pub mc_samples: usize,
    /// Digit-model functions per statistical check.
    pub mc_functions: usize,
    /// Random functions per randomised identity check.
    pub random_functions: usize,
    pub search: SearchConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            qs: vec![2, 3, 5],
            rs: vec![1.5, 2.0, 3.0],
            alphas: vec![0.25, 0.5, 1.0],
            seed: 0,
            mc_samples: 20_000,
            mc_functions: 3,
            random_functions: 10,
            search: SearchConfig {
                window: (-6, 6),
                restarts: 4,
                iters: 4,
                random: 100,
                seed: 0,
            },
        }
    }
}

impl VerifyConfig {
    /// A small grid for smoke runs.
    pub fn quick() -> Self {
        VerifyConfig {
            qs: vec![2, 3],
            rs: vec![2.0, 3.0],
            alphas: vec![0.5, 1.0],
            mc_samples: 2_000,
            mc_functions: 2,
            random_functions: 4,
            search: SearchConfig {
                window: (-4, 4),
                restarts: 2,
                iters: 2,
                random: 20,
                seed: 0,
            },
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        for &q in &self.qs {
            FieldParams::new(q)?;
        }
        if self.rs.iter().any(|r| !(*r > 1.0 && r.is_finite())) {
            return Err(Error::InvalidParameter("every r must be > 1".into()));
        }
        if self.alphas.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(Error::InvalidParameter("every alpha must be > 0".into()));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<(u64, f64, f64)> {
        let mut out = Vec::new();
        for &q in &self.qs {
            for &r in &self.rs {
                for &a in &self.alphas {
                    out.push((q, r, a));
                }
            }
        }
        out
    }

    fn seed_for(&self, family: usize, item: u64) -> u64 {
        self.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add((family as u64) << 32)
            .wrapping_add(item)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    status: Status,
    measured: f64,
    bound: f64,
    tol: f64,
    seed: Option<u64>,
    ms: u64,
}

impl VerificationReport {
    /// No non-skipped check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The report without timings; identical across runs with the same config.
    pub fn body(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        if let Some(checks) = v.get_mut("checks").and_then(|c| c.as_array_mut()) {
            for c in checks {
                if let Some(o) = c.as_object_mut() {
                    o.remove("ms");
                }
            }
        }
        Ok(serde_json::to_string_pretty(&v)?)
    }

    /// One row per check: `name,status,measured,bound,tol,seed,ms`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.checks {
            w.serialize(CsvRow {
                name: &c.name,
                status: c.status,
                measured: c.measured,
                bound: c.bound,
                tol: c.tol,
                seed: c.seed,
                ms: c.ms,
            })
            .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

type Family = fn(&VerifyConfig, usize) -> Result<Vec<Check>>;

const FAMILIES: &[Family] = &[
    weighted_measure,
    measure_decomposition,
    indicator_norm_bound,
    bracket_membership,
    phi_class,
    phi_submultiplicative,
    dilation_identity,
    dilation_bounds,
    kernel_homogeneity,
    convolution_vs_definition,
    operator_positivity,
    scale_commutation,
    hardy_indicator,
    bound_closed_vs_truncated,
    finiteness_boundary,
    operator_bound,
    radialization,
];

/// Runs every family. Failures are recorded, not raised; only an invalid
/// configuration is an error.
pub fn verify_suite(config: &VerifyConfig) -> Result<VerificationReport> {
    config.validate()?;
    let results: Vec<Vec<Check>> = FAMILIES
        .par_iter()
        .enumerate()
        .map(|(i, family)| {
            let t = Instant::now();
            let name = MANIFEST[i].0;
            let mut checks = match family(config, i) {
                Ok(c) => c,
                Err(e) => vec![Check::new(name, format!("{name}[error]"), false, f64::NAN, f64::NAN, 0.0).detail(e.to_string())],
            };
            let ms = t.elapsed().as_millis() as u64;
            for c in &mut checks {
                c.ms = ms;
                if c.status == Status::Fail && c.repro.is_none() {
                    c.repro = Some(serde_json::json!({ "family": name, "config": config }));
                }
            }
            checks
        })
        .collect();
    let mut checks: Vec<Check> = results.into_iter().flatten().collect();
    let missing: Vec<&str> = MANIFEST
        .iter()
        .map(|m| m.0)
        .filter(|f| !checks.iter().any(|c| c.family == *f))
        .collect();
    checks.push(
        Check::new("manifest", "manifest-complete".into(), missing.is_empty(), missing.len() as f64, 0.0, 0.0)
            .detail(if missing.is_empty() { String::new() } else { format!("no checks for {}", missing.join(", ")) }),
    );
    Ok(VerificationReport {
        config: config.clone(),
        checks,
    })
}

fn field(q: u64) -> Result<FieldParams> {
    FieldParams::new(q)
}

fn phi_presets(r: f64) -> Vec<(String, PhiSpec)> {
    vec![
        (format!("lebesgue({r})"), PhiSpec::lebesgue(r)),
        (format!("central({})", 2.0 * r), PhiSpec::central(2.0 * r)),
        (format!("envelope({r})"), PhiSpec::envelope(r)),
    ]
}

/// Nonnegative function with window in `[−5, 5]` and optional tails that keep
/// it in the Lebesgue-phi space for `(q, r, α)`.
pub fn random_radial(rng: &mut ChaCha8Rng, q: f64, r: f64, alpha: f64) -> RadialFunction {
    let lo = rng.random_range(-5..=0);
    let hi = rng.random_range(lo..=5);
    let values = (lo..=hi)
        .map(|_| if rng.random_bool(0.8) { rng.random_range(0.0..3.0) } else { 0.0 })
        .collect();
    let lower = if rng.random_bool(0.5) {
        ExpPoly::geometric(rng.random_range(0.1..2.0), q.powf((alpha + 1.0) / r) * rng.random_range(1.5..3.0))
    } else {
        ExpPoly::zero()
    };
    let upper = if rng.random_bool(0.5) {
        ExpPoly::geometric(rng.random_range(0.1..2.0), rng.random_range(0.2..0.9))
    } else {
        ExpPoly::zero()
    };
    RadialFunction::new(lo, values, lower, upper).expect("nonempty window")
}

fn weighted_measure(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let f = field(q)?;
        for &alpha in &cfg.alphas {
            let mut worst: f64 = 0.0;
            let mut exact_ok = true;
            for k in -10..=10 {
                let closed = weighted_ball_measure(&f, k, alpha, false)?;
                let o = oracle_weighted_measure(f.qf(), alpha, k, 400);
                worst = worst.max(rel_diff(closed.to_f64(), o.value));
                if let Some(x) = closed.exact() {
                    let (v, t) = oracle_weighted_measure_exact(q, alpha as i64, k, 40);
                    exact_ok &= &(v + t) == x;
                }
            }
            out.push(
                Check::new("weighted-measure", format!("weighted-measure[q={q},alpha={alpha}]"), worst <= 1e-12 && exact_ok, worst, 1e-12, 1e-12)
                    .detail(if exact_ok { "" } else { "exact rational mismatch" }),
            );
        }
    }
    Ok(out)
}

fn measure_decomposition(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let f = field(q)?;
        let mut bad = 0usize;
        for k in -20..=20 {
            if ball_measure(&f, k) != sphere_measure(&f, k) + ball_measure(&f, k + 1) {
                bad += 1;
            }
            for &alpha in &cfg.alphas {
                let b = weighted_ball_measure(&f, k, alpha, false)?;
                let b1 = weighted_ball_measure(&f, k + 1, alpha, false)?;
                let s = weighted_sphere_measure(&f, k, alpha);
                let ok = match (b.exact(), b1.exact(), s.exact()) {
                    (Some(b), Some(b1), Some(s)) => *b == s.clone() + b1.clone(),
                    _ => rel_diff(b.to_f64(), s.to_f64() + b1.to_f64()) <= 1e-13,
                };
                bad += usize::from(!ok);
            }
        }
        out.push(Check::new("measure-decomposition", format!("measure-decomposition[q={q}]"), bad == 0, bad as f64, 0.0, 0.0));
    }
    Ok(out)
}

fn indicator_norm_bound(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (q, r, alpha) in cfg.grid() {
        for (name, phi) in phi_presets(r) {
            let cert = phi_certificate(&phi, r, q as f64);
            if !cert.in_class {
                continue;
            }
            let p = MorreyParams::new(field(q)?, r, alpha, phi)?;
            let mut worst: f64 = 0.0;
            for eta in -15..=15 {
                let n = morrey_norm(&RadialFunction::char_ball(eta), &p)?.value;
                worst = worst.max(n / char_ball_norm_bound(eta, &p, &cert)?);
            }
            out.push(Check::new(
                "indicator-norm-bound",
                format!("indicator-norm-bound[q={q},r={r},alpha={alpha},phi={name}]"),
                worst <= 1.0 + 1e-9,
                worst,
                1.0,
                1e-9,
            ));
        }
    }
    Ok(out)
}

fn bracket_membership(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (q, r, alpha) in cfg.grid() {
        let p = MorreyParams::new(field(q)?, r, alpha, PhiSpec::lebesgue(r))?;
        let edge = (alpha + 1.0) / r;
        let mut bad = 0usize;
        for d in [-0.2, -0.05, 0.05, 0.2] {
            let n = edge + d;
            if n <= 0.0 {
                continue;
            }
            let b = japanese_bracket(n, &p)?;
            let finite = morrey_norm(&b.function, &p)?.is_finite();
            bad += usize::from(finite != (n > edge) || finite != b.guaranteed_finite);
        }
        out.push(Check::new("bracket-membership", format!("bracket-membership[q={q},r={r},alpha={alpha}]"), bad == 0, bad as f64, 0.0, 0.0));
    }
    Ok(out)
}

fn phi_class(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        for &r in &cfg.rs {
            let mut bad = 0usize;
            for (_, phi) in phi_presets(r) {
                bad += usize::from(!phi_certificate(&phi, r, q as f64).in_class);
            }
            // grows on k ≥ 0, and decays too fast on k < 0
            for beta in [-0.5, 2.0 / r] {
                bad += usize::from(phi_certificate(&PhiSpec::power(1.0, beta)?, r, q as f64).in_class);
            }
            out.push(Check::new("phi-class", format!("phi-class[q={q},r={r}]"), bad == 0, bad as f64, 0.0, 0.0));
        }
    }
    Ok(out)
}

fn phi_submultiplicative(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let qf = q as f64;
        for &r in &cfg.rs {
            let mut specs = phi_presets(r);
            specs.push(("two-slope(0.1,0.6)".into(), PhiSpec::two_slope(0.1, 0.6)));
            for (name, phi) in specs {
                let cert = phi_certificate(&phi, r, qf);
                let expected = phi.beta_minus() >= phi.beta_plus() - 1e-12;
                let mut worst: f64 = 0.0;
                if let Some(c) = cert.c_sm {
                    for s in -40..=40 {
                        for t in -40..=40 {
                            worst = worst.max(phi.eval(qf, s + t) / (c * phi.eval(qf, s) * phi.eval(qf, t)));
                        }
                    }
                }
                let ok = cert.submultiplicative == expected && worst <= 1.0 + 1e-12;
                out.push(Check::new("phi-submultiplicative", format!("phi-submultiplicative[q={q},r={r},phi={name}]"), ok, worst, 1.0, 1e-12));
            }
        }
    }
    Ok(out)
}

fn dilation_identity(cfg: &VerifyConfig, fam: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, (q, r, alpha)) in cfg.grid().into_iter().enumerate() {
        let seed = cfg.seed_for(fam, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = MorreyParams::new(field(q)?, r, alpha, PhiSpec::lebesgue(r))?;
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.random_functions {
            let f = random_radial(&mut rng, q as f64, r, alpha);
            let base = morrey_norm(&f, &p)?.value.powf(r);
            if base == 0.0 {
                continue;
            }
            for l in -8..=8 {
                let d = morrey_norm(&dilate(&f, DilationStep(l)), &p)?.value.powf(r);
                let expect = (q as f64).powf(l as f64 * (1.0 + alpha)) * base;
                worst = worst.max(rel_diff(d, expect));
            }
        }
        out.push(Check::new("dilation-identity", format!("dilation-identity[q={q},r={r},alpha={alpha}]"), worst <= 1e-12, worst, 0.0, 1e-12).seed(seed));
    }
    Ok(out)
}

fn dilation_bounds(cfg: &VerifyConfig, fam: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, (q, r, alpha)) in cfg.grid().into_iter().enumerate() {
        let seed = cfg.seed_for(fam, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for beta in [0.0, 0.5 / r, 1.0 / r] {
            let phi = PhiSpec::power(1.0, beta)?;
            let cert = phi_certificate(&phi, r, q as f64);
            let Some(c) = cert.dilation_constant() else {
                out.push(Check::new("dilation-bound", format!("dilation-bound[q={q},r={r},alpha={alpha},beta={beta}]"), false, f64::NAN, f64::NAN, 0.0).detail("no certificate"));
                continue;
            };
            let p = MorreyParams::new(field(q)?, r, alpha, phi)?;
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.random_functions {
                let f = random_radial(&mut rng, q as f64, r, alpha);
                let nf = morrey_norm(&f, &p)?;
                if !nf.is_finite() || nf.value == 0.0 {
                    continue;
                }
                for l in -10..=10 {
                    let nd = morrey_norm(&dilate(&f, DilationStep(l)), &p)?.value;
                    worst = worst.max(nd / (dilation_bound(q as f64, l, r, alpha, c) * nf.value));
                }
            }
            out.push(
                Check::new("dilation-bound", format!("dilation-bound[q={q},r={r},alpha={alpha},beta={beta:.4}]"), worst <= 1.0 + 1e-12, worst, 1.0, 1e-12)
                    .seed(seed),
            );
        }
    }
    Ok(out)
}

fn kernel_homogeneity(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let f = field(q)?;
        for spec in [KernelSpec::hardy(), KernelSpec::hilbert(), KernelSpec::hlp()] {
            let h = homogeneity_check(|s, t| spec.raw(&f, s, t).unwrap_or(f64::NAN), f.qf(), 4, 1e-12);
            out.push(Check::new("kernel-homogeneity", format!("kernel-homogeneity[{},q={q}]", spec.name()), h.pass, h.max_violation, 0.0, 1e-12));
        }
        let h = homogeneity_check(|s, t| 1.0 / (s * s + t * t), f.qf(), 4, 1e-12);
        let ok = !h.pass && (h.degree + 2.0).abs() < 1e-9;
        out.push(
            Check::new("kernel-homogeneity", format!("kernel-homogeneity[degree-2 rejected,q={q}]"), ok, h.degree, -2.0, 1e-9)
                .detail("a kernel of degree -2 must fail with that degree reported"),
        );
    }
    Ok(out)
}

/// `𝒯f` on `[m0, m1]`, closed form where available.
fn operator_values(spec: &KernelSpec, f: &FieldParams, g: &RadialFunction, m0: i64, m1: i64) -> Result<Vec<f64>> {
    match apply_operator(spec, f, g) {
        Ok(t) => Ok((m0..=m1).map(|m| t.eval(m)).collect()),
        Err(Error::KernelNotExact(_)) => {
            let t = apply_operator_truncated(spec, f, g, (m0, m1), 1e-16)?;
            Ok((m0..=m1).map(|m| t.function.eval(m)).collect())
        }
        Err(e) => Err(e),
    }
}

fn convolution_vs_definition(cfg: &VerifyConfig, fam: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, &q) in cfg.qs.iter().enumerate() {
        let f = field(q)?;
        let seed = cfg.seed_for(fam, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let funcs: Vec<_> = (0..cfg.random_functions).map(|_| random_radial(&mut rng, q as f64, 2.0, 0.5)).collect();
        for spec in [KernelSpec::hardy(), KernelSpec::hilbert(), KernelSpec::hlp()] {
            let mut worst: f64 = 0.0;
            let mut witness = None;
            for g in &funcs {
                let vals = operator_values(&spec, &f, g, -8, 8)?;
                for (j, m) in (-8..=8).enumerate() {
                    let d = direct_operator(&spec, &f, g, m, 1e-15)?;
                    let e = rel_diff(vals[j], d.value);
                    if e > worst {
                        worst = e;
                        witness = Some(g.clone());
                    }
                }
            }
            let mut c = Check::new(
                "convolution-vs-definition",
                format!("convolution-vs-definition[{},q={q}]", spec.name()),
                worst <= 1e-9,
                worst,
                0.0,
                1e-9,
            )
            .seed(seed);
            if worst > 1e-9 {
                c = c.repro(serde_json::to_value(witness)?);
            }
            out.push(c);
        }
    }
    Ok(out)
}

fn operator_positivity(cfg: &VerifyConfig, fam: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, &q) in cfg.qs.iter().enumerate() {
        let f = field(q)?;
        let seed = cfg.seed_for(fam, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.random_functions {
            let g = random_radial(&mut rng, q as f64, 2.0, 0.5);
            for spec in [KernelSpec::hardy(), KernelSpec::hilbert(), KernelSpec::hlp()] {
                for v in operator_values(&spec, &f, &g, -12, 12)? {
                    worst = worst.max(-v);
                }
            }
        }
        out.push(Check::new("operator-positivity", format!("operator-positivity[q={q}]"), worst <= 1e-12, worst, 0.0, 1e-12).seed(seed));
    }
    Ok(out)
}

fn scale_commutation(cfg: &VerifyConfig, fam: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, &q) in cfg.qs.iter().enumerate() {
        let f = field(q)?;
        let seed = cfg.seed_for(fam, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = 0usize;
        for _ in 0..cfg.random_functions {
            let g = random_radial(&mut rng, q as f64, 2.0, 0.5);
            let l = rng.random_range(-6..=6);
            for spec in [KernelSpec::hardy(), KernelSpec::hlp()] {
                let a = apply_operator(&spec, &f, &dilate(&g, DilationStep(l)))?;
                let b = dilate(&apply_operator(&spec, &f, &g)?, DilationStep(l));
                bad += usize::from(!a.equivalent(&b));
            }
        }
        out.push(Check::new("scale-commutation", format!("scale-commutation[q={q}]"), bad == 0, bad as f64, 0.0, 0.0).seed(seed));
    }
    Ok(out)
}

fn hardy_indicator(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let f = field(q)?;
        let got = apply_operator(&KernelSpec::hardy(), &f, &RadialFunction::<BigRational>::char_ball(0))?;
        let expect = RadialFunction::bracket_with_base(f.q_rat());
        let ok = got.equivalent(&expect);
        out.push(Check::new("hardy-indicator", format!("hardy-indicator[q={q}]"), ok, f64::from(u8::from(!ok)), 0.0, 0.0).detail("exact rational arithmetic"));
    }
    Ok(out)
}

fn bound_closed_vs_truncated(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (q, r, alpha) in cfg.grid() {
        if !hlp_finiteness(r, alpha) {
            continue;
        }
        let f = field(q)?;
        for spec in [KernelSpec::hardy(), KernelSpec::hlp()] {
            let c = main_bound_constant(&spec, &f, r, alpha, 1e-13)?;
            let t = truncated_constant(&spec, &f, r, alpha, 1e-13)?;
            let e = rel_diff(c.value, t.value);
            out.push(Check::new(
                "bound-closed-vs-truncated",
                format!("bound-closed-vs-truncated[{},q={q},r={r},alpha={alpha}]", spec.name()),
                e <= 1e-12,
                e,
                0.0,
                1e-12,
            ));
        }
    }
    // Only the k_{-l} part shrinks as r grows; the k_l part q^{-lα/r} grows,
    // so the Hardy constant is monotone and the HLP one is not.
    for &q in &cfg.qs {
        for &alpha in &cfg.alphas {
            let f = field(q)?;
            let mut prev = f64::INFINITY;
            let mut bad = 0usize;
            for i in 0..40 {
                let r = alpha + 1.05 + 0.25 * i as f64;
                let v = main_bound_constant(&KernelSpec::hardy(), &f, r, alpha, 1e-13)?.value;
                bad += usize::from(v > prev);
                prev = v;
            }
            out.push(Check::new("bound-closed-vs-truncated", format!("bound-monotone-in-r[hardy,q={q},alpha={alpha}]"), bad == 0, bad as f64, 0.0, 0.0));
        }
    }
    Ok(out)
}

fn finiteness_boundary(cfg: &VerifyConfig, _: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let f = field(q)?;
        for &r in &cfg.rs {
            let mut bad = 0usize;
            for d in [-0.05, 0.0, 0.05] {
                let alpha = r - 1.0 + d;
                if alpha <= 0.0 {
                    continue;
                }
                for spec in [KernelSpec::hardy(), KernelSpec::hlp(), KernelSpec::hilbert()] {
                    let b = main_bound_constant(&spec, &f, r, alpha, 1e-12)?;
                    bad += usize::from(b.finite != hlp_finiteness(r, alpha));
                }
            }
            out.push(Check::new("finiteness-boundary", format!("finiteness-boundary[q={q},r={r}]"), bad == 0, bad as f64, 0.0, 0.0));
            let alpha = r - 1.0;
            if alpha > 0.0 {
                let w = divergence_witness(&KernelSpec::hlp(), &f, r, alpha, 1e6)?;
                let (ok, measured, detail) = match w {
                    Some(w) => (w.partial_sum > 1e6, w.partial_sum, format!("{} terms", w.terms)),
                    None => (false, f64::NAN, "no witness".into()),
                };
                out.push(Check::new("finiteness-boundary", format!("partial-sums-diverge[hlp,q={q},r={r},alpha={alpha}]"), ok, measured, 1e6, 0.0).detail(detail));
            }
        }
    }
    Ok(out)
}

fn operator_bound(cfg: &VerifyConfig, fam: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, (q, r, alpha)) in cfg.grid().into_iter().enumerate() {
        for spec in [KernelSpec::hardy(), KernelSpec::hlp()] {
            let name = format!("operator-bound[{},q={q},r={r},alpha={alpha}]", spec.name());
            if !hlp_finiteness(r, alpha) {
                out.push(Check::skip("operator-bound", name, "alpha+1<r fails: the constant is infinite".into()));
                continue;
            }
            let phi = PhiSpec::lebesgue(r);
            let cert = phi_certificate(&phi, r, q as f64);
            let p = MorreyParams::new(field(q)?, r, alpha, phi)?;
            let bound = main_bound_constant(&spec, &p.field, r, alpha, 1e-13)?;
            let limit = morrey_operator_constant(&cert, &bound).unwrap_or(f64::NAN);
            let search = SearchConfig {
                seed: cfg.seed_for(fam, i as u64),
                ..cfg.search.clone()
            };
            let s = empirical_operator_norm(&spec, &p, &search)?;
            out.push(
                Check::new("operator-bound", name, s.ratio <= limit * (1.0 + 1e-9), s.ratio, limit, 1e-9)
                    .seed(search.seed)
                    .detail(format!("{} evaluations; raw constant {}", s.evaluations, bound.value))
                    .repro(serde_json::to_value(&s.best)?),
            );
        }
    }
    Ok(out)
}

/// Random digit-dependent function on a few spheres.
pub fn random_digit_model(rng: &mut ChaCha8Rng, p: u32) -> DigitModel {
    let lo = rng.random_range(-3..=0);
    let len = rng.random_range(1..=4);
    let values = (0..len).map(|_| rng.random_range(0.2..3.0)).collect();
    let position = rng.random_range(0..=2);
    let factors = (0..p).map(|_| rng.random_range(0.0..2.0)).collect();
    DigitModel::new(p, lo, values, position, factors).expect("valid digit model")
}

fn radialization(cfg: &VerifyConfig, fam: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, &q) in cfg.qs.iter().enumerate() {
        if !is_prime(q) {
            continue;
        }
        let field = FieldParams::p_series(q as u32)?;
        let p = MorreyParams::new(field, 2.0, 0.5, PhiSpec::lebesgue(2.0))?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed_for(fam, i as u64));
        for j in 0..cfg.mc_functions {
            let f = random_digit_model(&mut rng, q as u32);
            let seed = cfg.seed_for(fam, ((i as u64) << 16) + j as u64);
            let c = mc_check_radialization(&KernelSpec::hlp(), &f, &p, &[-4, -2, 0, 2, 4], cfg.mc_samples, seed)?;
            let zmax = c.probes.iter().map(|p| p.z).fold(0.0, f64::max);
            let ok = c.within_3_sigma && c.contraction_holds;
            let mut check = Check::new("radialization", format!("radialization[hlp,q={q},#{j}] (statistical)"), ok, zmax, 3.0, 0.0)
                .seed(seed)
                .detail(format!("norm(fbar)={} norm(f)={}", c.norm_fbar, c.norm_f));
            if !ok {
                check = check.repro(serde_json::to_value(&f)?);
            }
            out.push(check);
        }
    }
    Ok(out)
}
