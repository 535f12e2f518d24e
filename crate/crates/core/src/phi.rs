//! Piecewise log-linear weights `φ: ℤ → (0, ∞)` and their certificates.
//!
//! A [`PhiSpec`] is a list of segments; the segment starting at `b` applies
//! from `k = b` up to the next start, and on it `φ(k) = c · q^{-βk}`. Writing
//! `φ = q^{-g}` makes `g` piecewise linear, which is what turns the class
//! constants and the submultiplicativity constant into finite searches.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, Side};

/// Slopes closer than this are treated as equal.
pub const SLOPE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    /// `None` is `−∞`; only the first segment may have it.
    pub start: Option<i64>,
    pub c: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiSpec {
    segments: Vec<Segment>,
}

impl PhiSpec {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let Some(first) = segments.first() else {
            return Err(Error::InvalidParameter("phi needs at least one segment".into()));
        };
        if first.start.is_some() {
            return Err(Error::InvalidParameter("the first phi segment must start at -inf".into()));
        }
        let mut prev: Option<i64> = None;
        for s in &segments {
            if !(s.c > 0.0 && s.c.is_finite()) || !s.beta.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "phi segment needs c > 0 and finite beta, got c = {}, beta = {}",
                    s.c, s.beta
                )));
            }
            if let Some(b) = s.start {
                if prev.is_some_and(|p| b <= p) {
                    return Err(Error::InvalidParameter("phi segment starts must increase".into()));
                }
                prev = Some(b);
            } else if !std::ptr::eq(s, first) {
                return Err(Error::InvalidParameter("only the first phi segment may start at -inf".into()));
            }
        }
        Ok(PhiSpec { segments })
    }

    /// `φ(k) = c · q^{-βk}` everywhere.
    pub fn power(c: f64, beta: f64) -> Result<Self> {
        Self::new(vec![Segment { start: None, c, beta }])
    }

    /// `φ(k) = |B^k|^{1/r}`: the Morrey norm is the weighted `L^r` norm.
    pub fn lebesgue(r: f64) -> Self {
        PhiSpec {
            segments: vec![Segment { start: None, c: 1.0, beta: 1.0 / r }],
        }
    }

    /// `φ(k) = |B^k|^{1/t}`.
    pub fn central(t: f64) -> Self {
        PhiSpec {
            segments: vec![Segment { start: None, c: 1.0, beta: 1.0 / t }],
        }
    }

    /// `φ(k) = min(1, q^{-k/r})`.
    pub fn envelope(r: f64) -> Self {
        PhiSpec {
            segments: vec![
                Segment { start: None, c: 1.0, beta: 0.0 },
                Segment { start: Some(0), c: 1.0, beta: 1.0 / r },
            ],
        }
    }

    /// Two pure powers glued at `k = 0`.
    pub fn two_slope(beta_minus: f64, beta_plus: f64) -> Self {
        PhiSpec {
            segments: vec![
                Segment { start: None, c: 1.0, beta: beta_minus },
                Segment { start: Some(0), c: 1.0, beta: beta_plus },
            ],
        }
    }

    /// Preset name (`lebesgue`, `lebesgue(r)`, `central(t)`, `envelope`,
    /// `envelope(r)`) or a JSON object. Bare names take `r` from the caller.
    pub fn parse(s: &str, r: f64) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Ok(serde_json::from_str(s)?);
        }
        let (name, arg) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| unknown_phi(s))?;
                let v = f64::from_str(inner.trim()).map_err(|_| unknown_phi(s))?;
                (name.trim(), Some(v))
            }
            None => (s, None),
        };
        let positive = |v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::InvalidParameter(format!("phi preset argument must be positive, got {v}")))
            }
        };
        match (name, arg) {
            ("lebesgue", a) => Ok(Self::lebesgue(positive(a.unwrap_or(r))?)),
            ("envelope", a) => Ok(Self::envelope(positive(a.unwrap_or(r))?)),
            ("central", Some(t)) => Ok(Self::central(positive(t)?)),
            _ => Err(unknown_phi(s)),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Finite segment starts, ascending.
    pub fn breakpoints(&self) -> Vec<i64> {
        self.segments.iter().filter_map(|s| s.start).collect()
    }

    pub fn segment_at(&self, k: i64) -> &Segment {
        self.segments
            .iter()
            .rev()
            .find(|s| s.start.is_none_or(|b| b <= k))
            .unwrap_or(&self.segments[0])
    }

    pub fn first(&self) -> &Segment {
        &self.segments[0]
    }

    pub fn last(&self) -> &Segment {
        self.segments.last().unwrap_or(&self.segments[0])
    }

    /// Rate of the leftmost segment, `β−`.
    pub fn beta_minus(&self) -> f64 {
        self.first().beta
    }

    /// Rate of the rightmost segment, `β+`.
    pub fn beta_plus(&self) -> f64 {
        self.last().beta
    }

    pub fn eval(&self, q: f64, k: i64) -> f64 {
        self.ln_eval(q, k).exp()
    }

    pub fn ln_eval(&self, q: f64, k: i64) -> f64 {
        let s = self.segment_at(k);
        s.c.ln() - s.beta * k as f64 * q.ln()
    }

    /// `g(k) = −log_q φ(k)`.
    fn g(&self, q: f64, k: i64) -> f64 {
        -self.ln_eval(q, k) / q.ln()
    }
}

fn unknown_phi(s: &str) -> Error {
    Error::InvalidParameter(format!(
        "unknown phi preset '{s}'; valid: lebesgue, lebesgue(r), central(t), envelope, envelope(r), or a JSON object"
    ))
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let json = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        f.write_str(&json)
    }
}

/// Whether `φ` lies in `Φ_{r,q}` and with which constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassCertificate {
    pub in_class: bool,
    /// Least `C` with `φ(k) ≤ C` on `k ≥ 0` and `φ(k) ≤ C q^{-k/r}` on `k < 0`.
    pub c_class: Option<f64>,
    /// Where the constant is attained.
    pub witness: Option<i64>,
    /// Direction in which the bound fails.
    pub violation: Option<Side>,
}

/// Whether `φ(s+t) ≤ C φ(s) φ(t)` for some finite `C`, and the least one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubmultCertificate {
    pub submultiplicative: bool,
    pub c_sm: Option<f64>,
    /// A pair attaining `C_sm`, or one with a large ratio when none is finite.
    pub witness: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiCertificate {
    pub in_class: bool,
    pub c_class: Option<f64>,
    pub submultiplicative: bool,
    pub c_sm: Option<f64>,
    pub class: ClassCertificate,
    pub submult: SubmultCertificate,
}

impl PhiCertificate {
    /// `C_sm · C_class`, the constant in the dilation bounds.
    pub fn dilation_constant(&self) -> Option<f64> {
        Some(self.c_sm? * self.c_class?)
    }
}

pub fn phi_certificate(phi: &PhiSpec, r: f64, q: f64) -> PhiCertificate {
    let class = phi_class_check(phi, r, q);
    let submult = phi_submult_check(phi, q);
    PhiCertificate {
        in_class: class.in_class,
        c_class: class.c_class,
        submultiplicative: submult.submultiplicative,
        c_sm: submult.c_sm,
        class,
        submult,
    }
}

/// Class test. Each segment's ratio `φ(k)` or `φ(k) q^{k/r}` is monotone, so
/// the supremum sits at a segment end inside `[k ≥ 0]` or `[k < 0]`, or is
/// approached at infinity where the asymptotic slopes decide.
pub fn phi_class_check(phi: &PhiSpec, r: f64, q: f64) -> ClassCertificate {
    let violation = if phi.beta_plus() < -SLOPE_TOL {
        Some(Side::Upper)
    } else if phi.beta_minus() > 1.0 / r + SLOPE_TOL {
        Some(Side::Lower)
    } else {
        None
    };
    if violation.is_some() {
        return ClassCertificate {
            in_class: false,
            c_class: None,
            witness: None,
            violation,
        };
    }
    let mut candidates = vec![0, -1];
    for b in phi.breakpoints() {
        candidates.extend([b, b - 1]);
    }
    let ratio = |k: i64| {
        let ln = phi.ln_eval(q, k);
        if k >= 0 {
            ln
        } else {
            ln + k as f64 / r * q.ln()
        }
    };
    let (witness, best) = candidates
        .into_iter()
        .map(|k| (k, ratio(k)))
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| {
            if v > acc.1 || (v == acc.1 && k < acc.0) {
                (k, v)
            } else {
                acc
            }
        });
    ClassCertificate {
        in_class: true,
        c_class: Some(best.exp()),
        witness: Some(witness),
        violation: None,
    }
}

/// Submultiplicativity test. `C_sm = q^{c0}` with
/// `c0 = sup_{s,t} g(s) + g(t) − g(s+t)`. When `β− < β+` the deficit grows
/// without bound along `s = −n, t = n`. Otherwise it is constant along every
/// direction that leaves the breakpoint region, so the supremum is reached on
/// a box around the breakpoints; the box is doubled as a cross-check.
pub fn phi_submult_check(phi: &PhiSpec, q: f64) -> SubmultCertificate {
    let bps = phi.breakpoints();
    let reach = bps.iter().map(|b| b.abs()).max().unwrap_or(0);
    let radius = 4 * (reach + 1) + 4;
    if phi.beta_minus() < phi.beta_plus() - SLOPE_TOL {
        let n = 2 * radius;
        return SubmultCertificate {
            submultiplicative: false,
            c_sm: None,
            witness: Some((-n, n)),
        };
    }
    let deficit = |s: i64, t: i64| phi.g(q, s) + phi.g(q, t) - phi.g(q, s + t);
    let search = |rad: i64| {
        let mut best = (f64::NEG_INFINITY, (0, 0));
        for s in -rad..=rad {
            for t in -rad..=rad {
                let d = deficit(s, t);
                if d > best.0 + 1e-15 {
                    best = (d, (s, t));
                }
            }
        }
        best
    };
    let (c0, witness) = search(radius);
    let (c0_wide, witness_wide) = search(2 * radius);
    let (c0, witness) = if c0_wide > c0 + 1e-12 { (c0_wide, witness_wide) } else { (c0, witness) };
    SubmultCertificate {
        submultiplicative: true,
        c_sm: Some(q.powf(c0)),
        witness: Some(witness),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum StartJson {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct SegmentJson {
    #[serde(default)]
    start: Option<StartJson>,
    c: f64,
    beta: f64,
}

#[derive(Serialize, Deserialize)]
struct PhiJson {
    segments: Vec<SegmentJson>,
}

impl Serialize for PhiSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PhiJson {
            segments: self
                .segments
                .iter()
                .map(|seg| SegmentJson {
                    start: Some(match seg.start {
                        None => StartJson::Text("-inf".into()),
                        Some(b) => StartJson::Int(b),
                    }),
                    c: seg.c,
                    beta: seg.beta,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhiSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PhiJson::deserialize(d)?;
        let mut segments = Vec::with_capacity(j.segments.len());
        for s in j.segments {
            let start = match s.start {
                None => None,
                Some(StartJson::Int(b)) => Some(b),
                Some(StartJson::Text(t)) if t == "-inf" => None,
                Some(StartJson::Text(t)) => return Err(D::Error::custom(format!("bad segment start '{t}'"))),
            };
            segments.push(Segment { start, c: s.c, beta: s.beta });
        }
        PhiSpec::new(segments).map_err(D::Error::custom)
    }
}
