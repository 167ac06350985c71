//! Carlson forms: reference values, symmetry, homogeneity and agreement with
//! the half-line quadrature oracle.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use proptest::prelude::*;

use elliptix_core::carlson::{self, CarlsonConfig};
use elliptix_core::oracle::{self, QuadratureSpec};
use elliptix_core::Error;

fn cfg() -> CarlsonConfig {
    CarlsonConfig::default()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(re: f64) -> Complex64 {
    c(re, 0.0)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[track_caller]
fn close(a: Complex64, b: Complex64, tol: f64) {
    assert!(rel(a, b) <= tol, "{a} vs {b}: rel {:e} > {tol:e}", rel(a, b));
}

// Reference values below were computed with mpmath at 30 digits.

#[test]
fn rf_values() {
    assert_eq!(carlson::rf(r(0.0), r(1.0), r(1.0), &cfg()).unwrap(), r(FRAC_PI_2));
    close(carlson::rf(r(1.0), r(1.0), r(1.0), &cfg()).unwrap(), r(1.0), 1e-15);
    close(carlson::rf(r(0.0), r(0.5), r(1.0), &cfg()).unwrap(), r(1.8540746773013719184), 2e-16);
    close(
        carlson::rf(c(1.0, 2.0), c(3.0, -1.0), c(0.0, 0.5), &cfg()).unwrap(),
        c(0.77537584894819784211, -0.23333582598821382014),
        1e-15,
    );
}

#[test]
fn rc_values() {
    close(carlson::rc(r(0.0), r(1.0), &cfg()).unwrap(), r(FRAC_PI_2), 1e-15);
    close(carlson::rc(r(4.0), r(4.0), &cfg()).unwrap(), r(0.5), 1e-15);
    close(carlson::rc(r(1.0), r(2.0), &cfg()).unwrap(), r(0.78539816339744830962), 1e-15);
    close(
        carlson::rc(c(-1.0, 1.0), r(2.0), &cfg()).unwrap(),
        c(0.79728351576163350584, -0.28916175509447218058),
        1e-15,
    );
}

#[test]
fn rc_principal_value_for_negative_y() {
    // R_C(x, y) for y < 0 is the Cauchy principal value, which is real.
    let v = carlson::rc(r(2.0), r(-1.0), &cfg()).unwrap();
    let spec = QuadratureSpec::default();
    // √(x/(x−y)) R_C(x−y, −y) worked out independently: R_C(3, 1) = atanh(√(2/3))/√2.
    let expected = (2.0f64 / 3.0).sqrt() * ((2.0f64 / 3.0).sqrt().atanh() / 2f64.sqrt());
    close(v, r(expected), 1e-15);
    assert_eq!(v.im, 0.0);
    // Away from the axis the oracle applies directly.
    close(
        carlson::rc(r(2.0), c(-1.0, 0.5), &cfg()).unwrap(),
        oracle::quad_rc(r(2.0), c(-1.0, 0.5), &spec).unwrap(),
        1e-12,
    );
}

#[test]
fn rd_values() {
    close(carlson::rd(r(1.0), r(1.0), r(1.0), &cfg()).unwrap(), r(1.0), 1e-15);
    close(carlson::rd(r(0.0), r(2.0), r(1.0), &cfg()).unwrap(), r(1.7972103521033883112), 1e-15);
    close(
        carlson::rd(c(0.0, 2.0), r(1.0), c(3.0, -1.0), &cfg()).unwrap(),
        c(0.30789094075286460586, -0.043334559274745515575),
        1e-15,
    );
    // E(0) = R_F(0,1,1) − 0·R_D(0,1,1) = π/2 with a finite R_D.
    let rd = carlson::rd(r(0.0), r(1.0), r(1.0), &cfg()).unwrap();
    assert!(rd.re.is_finite() && rd.norm() > 0.0);
}

#[test]
fn rj_values() {
    close(
        carlson::rj(r(0.0), r(1.0), r(1.0), r(1.0), &cfg()).unwrap(),
        carlson::rd(r(0.0), r(1.0), r(1.0), &cfg()).unwrap(),
        1e-15,
    );
    close(carlson::rj(r(2.0), r(2.0), r(2.0), r(2.0), &cfg()).unwrap(), r(2f64.powf(-1.5)), 1e-15);
    close(
        carlson::rj(r(0.0), r(0.5), r(1.0), r(0.75), &cfg()).unwrap(),
        r(3.7625362015822084977),
        1e-15,
    );
    close(
        carlson::rj(c(1.0, 1.0), r(2.0), c(3.0, -1.0), c(0.5, 0.5), &cfg()).unwrap(),
        c(0.54235903981276101208, -0.2999860058442677815),
        1e-14,
    );
}

#[test]
fn rj_negative_p_is_principal_value() {
    // mpmath's value carries the limit from above in its imaginary part; the
    // principal value is its real part.
    let v = carlson::rj(r(1.0), r(2.0), r(3.0), r(-1.0), &cfg()).unwrap();
    close(v, r(-0.093240452438676412015), 1e-14);
}

#[test]
fn rj_reduces_to_pi() {
    // Π(n, m) = R_F(0, 1−m, 1) + (n/3) R_J(0, 1−m, 1, 1−n) with n = 0.25, m = 0.5.
    let rf = carlson::rf(r(0.0), r(0.5), r(1.0), &cfg()).unwrap();
    let rj = carlson::rj(r(0.0), r(0.5), r(1.0), r(0.75), &cfg()).unwrap();
    close(rf + rj * (0.25 / 3.0), r(2.1676193607665559599), 1e-15);
}

#[test]
fn rejects_bad_arguments() {
    let zero = r(0.0);
    assert!(matches!(carlson::rf(zero, zero, r(1.0), &cfg()), Err(Error::Domain { .. })));
    assert!(matches!(carlson::rc(r(1.0), zero, &cfg()), Err(Error::Domain { .. })));
    assert!(matches!(carlson::rd(r(1.0), r(1.0), zero, &cfg()), Err(Error::Domain { .. })));
    assert!(matches!(carlson::rd(zero, zero, r(1.0), &cfg()), Err(Error::Domain { .. })));
    assert!(matches!(carlson::rj(r(1.0), r(2.0), r(3.0), zero, &cfg()), Err(Error::Domain { .. })));
    assert!(matches!(carlson::rf(r(f64::NAN), r(1.0), r(1.0), &cfg()), Err(Error::Domain { .. })));
    assert!(CarlsonConfig::new(1e-3, 64).is_err());
    assert!(CarlsonConfig::new(1e-15, 8).is_err());
    assert!(CarlsonConfig::new(0.0, 64).is_err());
}

#[test]
fn iteration_counts_are_bounded() {
    let corpus = [
        (r(0.0), r(0.5), r(1.0), r(0.75)),
        (c(1.0, 2.0), c(3.0, -1.0), c(0.0, 0.5), c(2.0, 1.0)),
        (r(1e-8), r(1.0), r(1e4), r(3.0)),
        (c(0.1, 3.0), c(0.2, -3.0), r(5.0), c(0.01, 0.01)),
        (r(0.0), r(1e-6), r(1.0), r(1.0 - 1e-6)),
    ];
    for (x, y, z, p) in corpus {
        let counts = [
            carlson::rf_counted(x, y, z, &cfg()).unwrap().iterations,
            carlson::rd_counted(x, y, z, &cfg()).unwrap().iterations,
            carlson::rc_counted(x, y, &cfg()).unwrap().iterations,
            carlson::rj_counted(x, y, z, p, &cfg()).unwrap().iterations,
        ];
        assert!(counts.iter().all(|&n| n <= 40), "{x} {y} {z} {p}: {counts:?}");
    }
}

#[test]
fn limited_iterations_report_non_convergence() {
    let tight = CarlsonConfig::new(1e-300, 16).unwrap();
    let result = carlson::rf(r(0.5), r(1.0), r(2.0), &tight);
    assert!(matches!(result, Err(Error::NonConvergence { routine: "rf", .. })), "{result:?}");
}

/// Complex arguments with positive real part, spread over several decades.
fn arg() -> impl Strategy<Value = Complex64> {
    (0.01f64..10.0, -5.0f64..5.0).prop_map(|(re, im)| c(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rf_is_symmetric(x in arg(), y in arg(), z in arg()) {
        let v = carlson::rf(x, y, z, &cfg()).unwrap();
        for (a, b, d) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
            prop_assert!(rel(carlson::rf(a, b, d, &cfg()).unwrap(), v) <= 1e-14);
        }
    }

    #[test]
    fn rj_is_symmetric_in_first_three(x in arg(), y in arg(), z in arg(), p in arg()) {
        let v = carlson::rj(x, y, z, p, &cfg()).unwrap();
        for (a, b, d) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
            prop_assert!(rel(carlson::rj(a, b, d, p, &cfg()).unwrap(), v) <= 1e-14);
        }
    }

    #[test]
    fn rd_is_symmetric_in_first_two(x in arg(), y in arg(), z in arg()) {
        let v = carlson::rd(x, y, z, &cfg()).unwrap();
        prop_assert!(rel(carlson::rd(y, x, z, &cfg()).unwrap(), v) <= 1e-14);
    }

    #[test]
    fn homogeneity(x in arg(), y in arg(), z in arg(), p in arg(), lambda in 0.01f64..100.0) {
        let s = |w: Complex64| w * lambda;
        let half = lambda.powf(-0.5);
        let three_halves = lambda.powf(-1.5);
        prop_assert!(rel(carlson::rf(s(x), s(y), s(z), &cfg()).unwrap(), carlson::rf(x, y, z, &cfg()).unwrap() * half) <= 1e-13);
        prop_assert!(rel(carlson::rc(s(x), s(y), &cfg()).unwrap(), carlson::rc(x, y, &cfg()).unwrap() * half) <= 1e-13);
        prop_assert!(rel(carlson::rd(s(x), s(y), s(z), &cfg()).unwrap(), carlson::rd(x, y, z, &cfg()).unwrap() * three_halves) <= 1e-13);
        prop_assert!(rel(carlson::rj(s(x), s(y), s(z), s(p), &cfg()).unwrap(), carlson::rj(x, y, z, p, &cfg()).unwrap() * three_halves) <= 1e-13);
    }

    #[test]
    fn degenerate_forms_agree(x in arg(), y in arg(), z in arg()) {
        prop_assert!(rel(carlson::rc(x, y, &cfg()).unwrap(), carlson::rf(x, y, y, &cfg()).unwrap()) <= 1e-14);
        prop_assert!(rel(carlson::rj(x, y, z, z, &cfg()).unwrap(), carlson::rd(x, y, z, &cfg()).unwrap()) <= 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn agrees_with_defining_integrals(x in arg(), y in arg(), z in arg(), p in arg()) {
        let spec = QuadratureSpec::default();
        prop_assert!(rel(carlson::rf(x, y, z, &cfg()).unwrap(), oracle::quad_rf(x, y, z, &spec).unwrap()) <= 1e-10);
        prop_assert!(rel(carlson::rc(x, y, &cfg()).unwrap(), oracle::quad_rc(x, y, &spec).unwrap()) <= 1e-10);
        prop_assert!(rel(carlson::rd(x, y, z, &cfg()).unwrap(), oracle::quad_rd(x, y, z, &spec).unwrap()) <= 1e-10);
        prop_assert!(rel(carlson::rj(x, y, z, p, &cfg()).unwrap(), oracle::quad_rj(x, y, z, p, &spec).unwrap()) <= 1e-10);
    }
}
