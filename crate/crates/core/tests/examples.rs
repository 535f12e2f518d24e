//! Worked values through the public API, one test per operation.

use lfmorrey::bounds::{partial_sum, morrey_operator_constant};
use lfmorrey::field::{weighted_sphere_measure, HaarSampler};
use lfmorrey::scalar::ratio;
use lfmorrey::verify::{empirical_operator_norm, oracle_weighted_measure, SearchConfig};
use lfmorrey::*;
use num_rational::BigRational;

fn fp(q: u64) -> FieldParams {
    FieldParams::new(q).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn ball_and_sphere_measures() {
    assert_eq!(ball_measure(&fp(2), 0), ratio(1, 1));
    assert_eq!(ball_measure(&fp(2), 3), ratio(1, 8));
    assert_eq!(ball_measure(&fp(3), -2), ratio(9, 1));
    assert_eq!(sphere_measure(&fp(2), 0), ratio(1, 2));
    assert_eq!(sphere_measure(&fp(2), 1), ratio(1, 4));
    assert_eq!(sphere_measure(&fp(5), -1), ratio(4, 1));
}

#[test]
fn weighted_ball_values() {
    assert_eq!(weighted_ball_measure(&fp(2), 0, 1.0, false).unwrap().exact(), Some(&ratio(2, 3)));
    assert_eq!(weighted_ball_measure(&fp(2), 5, 0.0, true).unwrap().exact(), Some(&ratio(1, 32)));
    assert_eq!(weighted_ball_measure(&fp(3), 1, 2.0, false).unwrap().exact(), Some(&ratio(1, 39)));
    assert!(weighted_ball_measure(&fp(2), 0, 0.0, false).is_err());
    assert!(close(oracle_weighted_measure(2.0, 1.0, 0, 100).value, 2.0 / 3.0, 1e-14));
    assert!(close(oracle_weighted_measure(3.0, 2.0, 1, 100).value, 1.0 / 39.0, 1e-14));
    let s = weighted_sphere_measure(&fp(4), 2, 1.0).to_f64();
    assert!(close(s, 4f64.powi(-2) * 0.75 * 4f64.powi(-2), 1e-15));
}

#[test]
fn laurent_norms_and_arithmetic() {
    let t2 = LaurentElement::monomial(2, 2, 1, 10).unwrap();
    assert_eq!(t2.norm(), ratio(1, 4));
    assert_eq!(LaurentElement::zero(3, 10).norm(), ratio(0, 1));
    let x = LaurentElement::from_digits(3, -3, vec![1, 0, 0, 0, 1], 10).unwrap();
    assert_eq!(x.norm(), ratio(27, 1));

    let one = LaurentElement::monomial(2, 0, 1, 10).unwrap();
    assert!(one.add(&one).unwrap().is_zero());
    let a = LaurentElement::monomial(5, -2, 3, 10).unwrap();
    let b = LaurentElement::monomial(5, 4, 2, 10).unwrap();
    assert_eq!(a.mul(&b).unwrap().norm(), a.norm() * b.norm());
    assert_eq!(a.mul(&b).unwrap().norm(), ratio(1, 25));
    assert_eq!(a.add(&b).unwrap().norm(), ratio(25, 1));
    assert!(one.add(&LaurentElement::monomial(2, 0, 1, 8).unwrap()).is_err());
}

#[test]
fn haar_sampling_fractions() {
    let field = FieldParams::p_series(3).unwrap();
    let n = 100_000;
    let mut s = HaarSampler::new(&field, 17).unwrap();
    let inner = (0..n)
        .filter(|_| s.sample(Region::Ball(2), 12).unwrap().valuation().is_none_or(|v| v >= 3))
        .count() as f64
        / n as f64;
    let sigma = (1.0 / 3.0 * 2.0 / 3.0 / n as f64).sqrt();
    assert!((inner - 1.0 / 3.0).abs() < 3.0 * sigma, "{inner}");
    assert_eq!(sample_haar(&field, Region::Sphere(0), 8, 5).unwrap(), sample_haar(&field, Region::Sphere(0), 8, 5).unwrap());
    assert!(sample_haar(&field, Region::Ball(0), 0, 5).is_err());
}

#[test]
fn radial_function_values_and_integrals() {
    let ball = RadialFunction::<f64>::char_ball(0);
    assert_eq!(ball.eval(2), 1.0);
    assert_eq!(ball.eval(-1), 0.0);
    let b = japanese_bracket(1.0, &MorreyParams::new(fp(2), 2.0, 1.0, PhiSpec::lebesgue(2.0)).unwrap()).unwrap();
    assert_eq!(b.function.eval(-3), 0.125);
    assert_eq!(b.function.eval(-2), 0.25);

    let q = fp(3);
    assert_eq!(RadialFunction::<BigRational>::char_ball(0).haar_integral(&q).unwrap(), ratio(1, 1));
    assert_eq!(RadialFunction::<BigRational>::char_ball(2).haar_integral(&q).unwrap(), ratio(1, 9));
    assert_eq!(RadialFunction::<BigRational>::char_sphere(1).haar_integral(&q).unwrap(), ratio(2, 9));
    let bracket2 = RadialFunction::<BigRational>::bracket_with_base(ratio(4, 1));
    assert_eq!(bracket2.haar_integral(&fp(2)).unwrap(), ratio(3, 2));
    assert!(RadialFunction::<f64>::bracket_with_base(2.0).haar_integral(&fp(2)).is_err());
}

#[test]
fn weighted_ball_integral_of_indicators() {
    let f = fp(2);
    for (eta, k) in [(0, -3), (0, 0), (0, 4), (-2, 1)] {
        let got = RadialFunction::char_ball(eta).weighted_ball_integral(&f, k, 2.0, 1.0).unwrap();
        let want = weighted_ball_measure(&f, eta.max(k), 1.0, false).unwrap().to_f64();
        assert!(close(got, want, 1e-14), "{eta} {k}");
    }
    assert_eq!(RadialFunction::zero().weighted_ball_integral(&f, 0, 2.0, 1.0).unwrap(), 0.0);
}

#[test]
fn radial_arithmetic() {
    assert!(RadialFunction::<f64>::char_ball(0).scale(&0.0).is_zero());
    let s = RadialFunction::<BigRational>::char_sphere(0).add(&RadialFunction::char_ball(1));
    assert!(s.equivalent(&RadialFunction::char_ball(0)));
}

#[test]
fn phi_values_and_certificates() {
    assert_eq!(PhiSpec::lebesgue(2.0).eval(2.0, 2), 0.5);
    assert_eq!(PhiSpec::envelope(2.0).eval(2.0, -5), 1.0);
    assert_eq!(PhiSpec::central(4.0).eval(2.0, 4), 0.5);

    let leb = phi_certificate(&PhiSpec::lebesgue(2.0), 2.0, 2.0);
    assert!(leb.in_class && leb.c_class == Some(1.0));
    let steep = phi_certificate(&PhiSpec::power(1.0, 1.0).unwrap(), 2.0, 2.0);
    assert!(!steep.in_class && steep.class.violation == Some(Side::Lower));
    let env = phi_certificate(&PhiSpec::envelope(2.0), 2.0, 2.0);
    assert!(env.in_class && env.c_class == Some(1.0) && !env.submultiplicative);
    let pure = phi_certificate(&PhiSpec::power(0.5, 0.25).unwrap(), 2.0, 2.0);
    assert!(pure.submultiplicative && close(pure.c_sm.unwrap(), 2.0, 1e-12));
    assert!(phi_certificate(&PhiSpec::two_slope(0.75, 0.25), 2.0, 3.0).submultiplicative);
}

#[test]
fn morrey_norm_values() {
    let p = MorreyParams::new(fp(2), 2.0, 1.0, PhiSpec::lebesgue(2.0)).unwrap();
    let n = morrey_norm(&RadialFunction::char_ball(0), &p).unwrap();
    assert!(close(n.value, (2.0f64 / 3.0).sqrt(), 1e-14));
    let env = MorreyParams::new(fp(2), 2.0, 1.0, PhiSpec::envelope(2.0)).unwrap();
    let n = morrey_norm(&RadialFunction::char_ball(0), &env).unwrap();
    assert!(close(n.value, (2.0f64 / 3.0).sqrt(), 1e-14));
    assert_eq!(n.argmax, Argmax::Finite(0));

    let scaled = morrey_norm(&RadialFunction::char_ball(3).scale(&-2.5), &p).unwrap().value;
    assert!(close(scaled, 2.5 * morrey_norm(&RadialFunction::char_ball(3), &p).unwrap().value, 1e-14));

    let cert = phi_certificate(&p.phi, 2.0, 2.0);
    assert!(close(char_ball_norm_bound(0, &p, &cert).unwrap(), (2.0f64 / 3.0).sqrt(), 1e-14));
}

#[test]
fn bracket_boundary() {
    let p = MorreyParams::new(fp(2), 2.0, 1.0, PhiSpec::lebesgue(2.0)).unwrap();
    for (n, finite) in [(1.2, true), (1.0, false), (0.5, false)] {
        let b = japanese_bracket(n, &p).unwrap();
        assert_eq!(b.guaranteed_finite, finite);
        assert_eq!(morrey_norm(&b.function, &p).unwrap().is_finite(), finite, "N = {n}");
    }
}

#[test]
fn kernel_profiles() {
    let f = fp(2);
    assert_eq!(KernelSpec::hardy().profile(&f, 0).unwrap(), 1.0);
    assert_eq!(KernelSpec::hardy().profile(&f, 1).unwrap(), 0.0);
    assert_eq!(KernelSpec::hlp().profile(&f, 3).unwrap(), 0.125);
    assert_eq!(KernelSpec::hilbert().profile(&f, 0).unwrap(), 0.5);

    for spec in [KernelSpec::hardy(), KernelSpec::hlp(), KernelSpec::hilbert()] {
        assert!(homogeneity_check(|s, t| spec.raw(&f, s, t).unwrap(), 2.0, 6, 1e-12).pass);
    }
    let bad = homogeneity_check(|s, t| 1.0 / (s * s + t * t), 2.0, 6, 1e-12);
    assert!(!bad.pass && close(bad.degree, -2.0, 1e-9));
}

#[test]
fn operator_images() {
    let f = fp(2);
    let ball = RadialFunction::<BigRational>::char_ball(0);
    let hardy = apply_operator(&KernelSpec::hardy(), &f, &ball).unwrap();
    assert!(hardy.equivalent(&RadialFunction::bracket_with_base(ratio(2, 1))));
    let hlp = apply_operator(&KernelSpec::hlp(), &f, &ball).unwrap();
    assert_eq!(hlp.eval(0), ratio(1, 1));
    assert_eq!(hlp.eval(4), ratio(1, 1) + ratio(4, 2));

    let g = RadialFunction::<BigRational>::char_sphere(-1).scale(&ratio(3, 1));
    let lhs = apply_operator(&KernelSpec::hlp(), &f, &ball.add(&g)).unwrap();
    let rhs = hlp.add(&apply_operator(&KernelSpec::hlp(), &f, &g).unwrap());
    assert!(lhs.equivalent(&rhs));
}

#[test]
fn dilations() {
    let ball = RadialFunction::<f64>::char_ball(0);
    assert!(dilate(&ball, DilationStep(3)).equivalent(&RadialFunction::char_ball(-3)));
    let twice = dilate(&dilate(&ball, DilationStep(2)), DilationStep(-5));
    assert!(twice.equivalent(&dilate(&ball, DilationStep(-3))));

    let p = MorreyParams::new(fp(3), 2.0, 0.5, PhiSpec::lebesgue(2.0)).unwrap();
    let f = RadialFunction::bracket_with_base(9.0);
    let base = morrey_norm(&f, &p).unwrap().value.powi(2);
    let d = morrey_norm(&dilate(&f, DilationStep(2)), &p).unwrap().value.powi(2);
    assert!(close(d, 3f64.powf(3.0) * base, 1e-12));
}

#[test]
fn radialization_of_digit_functions() {
    let field = FieldParams::p_series(2).unwrap();
    let lead = DigitModel::digit_indicator(2, -2, 2, 0, 1).unwrap();
    let r = radialize(&lead, &field, 2000, 1).unwrap();
    assert!((-2..=2).all(|m| r.function.eval(m) == 1.0));

    let field = FieldParams::p_series(3).unwrap();
    let second = DigitModel::digit_indicator(3, -2, 2, 1, 1).unwrap();
    let r = radialize(&second, &field, 20_000, 2).unwrap();
    for m in -2..=2 {
        assert!((r.function.eval(m) - 1.0 / 3.0).abs() < 3.0 * r.std_err[(m + 2) as usize] + 1e-12);
    }
}

#[test]
fn bound_constants() {
    let hlp = main_bound_constant(&KernelSpec::hlp(), &fp(2), 2.0, 0.5, 1e-12).unwrap();
    let u = 2f64.powf(-0.25);
    assert!(close(hlp.value, 0.5 * (1.0 + 2.0 * u / (1.0 - u)), 1e-14));
    assert!(close(hlp.value, 5.785213507883244, 1e-14));

    let div = main_bound_constant(&KernelSpec::hlp(), &fp(2), 2.0, 1.0, 1e-12).unwrap();
    assert!(!div.finite && !div.condition_holds && div.condition == "alpha+1<r");

    let hardy = main_bound_constant(&KernelSpec::hardy(), &fp(3), 3.0, 1.0, 1e-12).unwrap();
    let u = 3f64.powf(-1.0 / 3.0);
    assert!(close(hardy.value, 2.0 / 3.0 * (1.0 + u / (1.0 - u)), 1e-14));
    assert!(close(partial_sum(&KernelSpec::hardy(), &fp(3), 3.0, 1.0, 200).unwrap(), hardy.value, 1e-12));

    assert!(hlp_finiteness(2.0, 0.5) && !hlp_finiteness(2.0, 1.0) && hlp_finiteness(3.0, 1.99));
    assert_eq!(dilation_bound(2.0, 0, 2.0, 1.0, 1.7), 1.7);
    assert!(close(dilation_bound(2.0, 2, 2.0, 1.0, 1.0), 4.0, 1e-15));
    assert!(close(dilation_bound(2.0, -2, 2.0, 1.0, 1.0), 0.5, 1e-15));
}

#[test]
fn search_examples() {
    let p = MorreyParams::new(fp(2), 2.0, 0.5, PhiSpec::lebesgue(2.0)).unwrap();
    let cfg = SearchConfig {
        window: (-6, 6),
        restarts: 3,
        iters: 3,
        random: 50,
        seed: 4,
    };
    let s = empirical_operator_norm(&KernelSpec::hlp(), &p, &cfg).unwrap();
    assert!(s.start_ratio <= s.ratio);
    let cert = phi_certificate(&p.phi, 2.0, 2.0);
    let bound = main_bound_constant(&KernelSpec::hlp(), &p.field, 2.0, 0.5, 1e-12).unwrap();
    assert!(s.ratio <= morrey_operator_constant(&cert, &bound).unwrap());

    let id = empirical_operator_norm(&KernelSpec::identity(), &p, &cfg).unwrap();
    assert!(close(id.ratio, 0.5, 1e-14));
    assert!(empirical_operator_norm(&KernelSpec::hlp(), &p, &SearchConfig { window: (1, 0), ..cfg }).is_err());
}

#[test]
fn verify_suite_examples() {
    let report = verify_suite(&VerifyConfig::quick()).unwrap();
    assert!(report.passed());
    let divergent = VerifyConfig {
        rs: vec![2.0],
        alphas: vec![1.0],
        ..VerifyConfig::quick()
    };
    let report = verify_suite(&divergent).unwrap();
    assert!(report.passed());
    assert!(report.checks.iter().any(|c| c.name.starts_with("operator-bound") && c.status == lfmorrey::verify::Status::Skip));
}
