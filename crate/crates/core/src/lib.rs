//! Radial analysis on local fields: weighted central Morrey norms and
//! homogeneous integral operators, computed exactly over the whole valuation
//! lattice.
//!
//! A radial function on a local field with residue parameter `q` is a
//! sequence `a_m`, its value on the sphere `|x| = q^{-m}`. [`RadialFunction`]
//! stores a finite window plus exponential-polynomial tails on both sides, so
//! sums over all of `ℤ` have closed forms and infinite suprema can be decided.
//!
//! ```
//! use lfmorrey::{FieldParams, KernelSpec, MorreyParams, PhiSpec, RadialFunction};
//!
//! let field = FieldParams::new(2)?;
//! let params = MorreyParams::new(field, 2.0, 1.0, PhiSpec::lebesgue(2.0))?;
//! let ball = RadialFunction::char_ball(0);
//! let norm = lfmorrey::morrey_norm(&ball, &params)?;
//! assert!((norm.value - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
//!
//! let image = lfmorrey::apply_operator(&KernelSpec::hardy(), &field, &ball)?;
//! assert!(image.equivalent(&RadialFunction::bracket_with_base(2.0)));
//! # Ok::<(), lfmorrey::Error>(())
//! ```
//!
//! Modules, bottom up: [`field`] (measures, digit arithmetic, Haar sampling),
//! [`expoly`] and [`series`] (closed-form and certified sums), [`radial`],
//! [`phi`] and [`morrey`] (norms), [`kernel`] (operators), [`bounds`]
//! (operator-norm constants), [`radialize`] and [`verify`] (Monte Carlo and
//! the check suite).

pub mod bounds;
pub mod error;
pub mod expoly;
pub mod field;
pub mod kernel;
pub mod morrey;
pub mod phi;
pub mod radial;
pub mod radialize;
pub mod scalar;
pub mod series;
pub mod verify;

pub use bounds::{dilation_bound, hlp_finiteness, main_bound_constant, BoundMode, BoundResult};
pub use error::{Error, Result, Side};
pub use field::{ball_measure, sample_haar, sphere_measure, weighted_ball_measure, FieldParams, LaurentElement, Region};
pub use kernel::{apply_operator, apply_operator_truncated, dilate, homogeneity_check, DilationStep, KernelSpec};
pub use morrey::{char_ball_norm_bound, japanese_bracket, morrey_norm, Argmax, MorreyNorm, MorreyParams};
pub use phi::{phi_certificate, PhiCertificate, PhiSpec};
pub use radial::RadialFunction;
pub use radialize::{radialize, DigitFunction, DigitModel};
pub use scalar::{Scalar, Value};
pub use verify::{verify_suite, VerificationReport, VerifyConfig};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/field.md")]
    struct Field;
    #[doc = include_str!("../../../book/src/radial.md")]
    struct Radial;
    #[doc = include_str!("../../../book/src/morrey.md")]
    struct Morrey;
    #[doc = include_str!("../../../book/src/operators.md")]
    struct Operators;
    #[doc = include_str!("../../../book/src/bounds.md")]
    struct Bounds;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
