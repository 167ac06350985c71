//! The K/Π identity: both sides, the differential equation, classification
//! and region maps.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use elliptix_core::elliptic::BranchPolicy;
use elliptix_core::identity::{self, GridSpec, Klass, ToleranceConfig};
use elliptix_core::{CarlsonConfig, Singularity};

const P: BranchPolicy = BranchPolicy::CALIBRATED;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(re: f64) -> Complex64 {
    c(re, 0.0)
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn y(x: f64) -> Complex64 {
    identity::lhs_y(r(x), P, &tol()).unwrap()
}

fn f(x: f64) -> Complex64 {
    identity::rhs_f(r(x)).unwrap()
}

/// The closed form without its constant: (x−1)^{3/2} √(1+3x) / x.
fn shape(x: f64) -> Complex64 {
    f(x) / (-PI / 12.0)
}

/// `count` points of (lo, hi) at least 0.01 from either end and from the
/// given excluded points.
fn samples(rng: &mut StdRng, lo: f64, hi: f64, count: usize, exclude: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.gen_range(lo + 0.01..hi - 0.01);
        if exclude.iter().all(|e| (x - e).abs() >= 0.01) {
            out.push(x);
        }
    }
    out
}

// Reference values below were computed with mpmath at 30 digits, with the
// branch convention of `BranchPolicy::CALIBRATED`.

#[test]
fn argument_map_values() {
    assert!((identity::map_n(r(0.5)).unwrap() - r(-0.6)).norm() < 1e-15);
    assert!((identity::map_m(r(0.5)).unwrap() - r(-5.4)).norm() < 1e-14);
    assert!((identity::map_n(r(2.0)).unwrap() - r(15.0 / 7.0)).norm() < 1e-15);
    assert!((identity::map_m(r(2.0)).unwrap() - r(135.0 / 7.0)).norm() < 1e-13);
    assert!((identity::coef(r(0.5)).unwrap() - r(5.0 / 6.0)).norm() < 1e-15);
    assert!((identity::ode_rhs_factor(r(-1.0)).unwrap() - r(-0.5)).norm() < 1e-15);
    assert!((identity::ode_rhs_factor(r(2.0)).unwrap() - r(17.0 / 14.0)).norm() < 1e-15);
    assert!(identity::ode_rhs_factor(r(0.0)).is_err());
    assert!(identity::ode_rhs_factor(r(1.0)).is_err());
    assert!(identity::ode_rhs_factor(r(-1.0 / 3.0)).is_err());
}

#[test]
fn both_sides_at_known_points() {
    assert_eq!(y(1.0 / 3.0), r(0.0));
    assert!((y(-1.0) - r(PI / 3.0)).norm() < 1e-15);
    assert!((f(-1.0) - r(PI / 3.0)).norm() < 1e-15);
    assert_eq!(f(1.0), r(0.0));
    assert!((f(2.0) - r(-0.34632803675275340173)).norm() < 1e-15);
    assert!((f(-2.0) - r(1.5209170034901044614)).norm() < 1e-15);
    assert!((f(-0.2) - c(0.0, -1.0882796185405306197)).norm() < 1e-15);
    assert!((y(2.0) - f(2.0)).norm() < 1e-12);
    assert!((y(-2.0) - f(-2.0)).norm() < 1e-12);
    assert!((y(-0.2) - f(-0.2)).norm() < 1e-12);
    assert!(y(0.5).norm() < 1e-12);
    assert!(identity::rhs_f(r(0.0)).is_err());
}

#[test]
fn derivative_values() {
    let d = |x: f64| identity::dy_dx_analytic(r(x), P, &tol()).unwrap();
    assert!(d(0.5).norm() < 1e-10, "{}", d(0.5));
    assert!((d(-2.0) - r(-0.45627510104703133841)).norm() < 1e-11, "{}", d(-2.0));
    assert!((d(3.0) - r(-0.44230314973219388401)).norm() < 1e-11, "{}", d(3.0));
    for x in [0.5, -2.0, 3.0, -0.2, 0.1] {
        let res = identity::ode_residual(r(x), P, &tol()).unwrap();
        assert!(res < 1e-9, "x={x}: {res:e}");
    }
    // Where both maps vanish the derivative formulas have zero denominators.
    assert!(identity::dy_dx_analytic(r(1.0 / 3.0), P, &tol()).is_err());
}

#[test]
fn identity_holds_on_each_interval() {
    let mut rng = StdRng::seed_from_u64(0x1d_e471);
    for x in samples(&mut rng, 0.0, 1.0, 1000, &[]) {
        assert!(y(x).norm() <= 1e-10, "x={x}: {}", y(x));
    }
    for (lo, hi) in [(-10.0, -1.0 / 3.0), (-1.0 / 3.0, 0.0), (1.0, 10.0)] {
        for x in samples(&mut rng, lo, hi, 200, &[-1.0]) {
            let err = (y(x) - f(x)).norm() / f(x).norm().max(1.0);
            assert!(err <= 1e-10, "x={x}: y={} f={}", y(x), f(x));
        }
    }
}

/// Only the calibrated pair of cut sides satisfies the identity at
/// arguments that put `m` (and, for x > 1, `n`) on a branch cut.
#[test]
fn calibration_selects_a_unique_policy() {
    let points = [-0.2, -0.1, 1.5, 2.5];
    let passing: Vec<BranchPolicy> = BranchPolicy::all()
        .into_iter()
        .filter(|&policy| {
            points.iter().all(|&x| {
                let y = identity::lhs_y(r(x), policy, &tol()).unwrap();
                (y - f(x)).norm() < 1e-10
            })
        })
        .collect();
    assert_eq!(passing, vec![BranchPolicy::CALIBRATED]);
    assert_eq!(BranchPolicy::default(), BranchPolicy::CALIBRATED);
}

/// On each interval where y is not identically zero, y/shape is a constant;
/// the closed form asserts that constant is −π/12 on all three.
#[test]
fn integration_constant_is_the_same_on_every_interval() {
    let mut rng = StdRng::seed_from_u64(0xc0_4574);
    for (lo, hi) in [(-10.0, -1.0 / 3.0), (-1.0 / 3.0, 0.0), (1.0, 10.0)] {
        let xs = samples(&mut rng, lo, hi, 50, &[-1.0]);
        let constants: Vec<Complex64> = xs.iter().map(|&x| y(x) / shape(x)).collect();
        for (x, k) in xs.iter().zip(&constants) {
            assert!((k - r(-PI / 12.0)).norm() < 1e-10, "({lo}, {hi}) x={x}: C={k}");
        }
    }
}

#[test]
fn classification_examples() {
    let inside = identity::classify(c(0.5, 0.1), P, &tol());
    assert_eq!(inside.klass, Klass::Zero);
    assert!(inside.resid_zero.unwrap() <= tol().classify_tol());
    let outside = identity::classify(c(-2.0, 2.0), P, &tol());
    assert_eq!(outside.klass, Klass::ClosedForm);
    assert!(outside.resid_f.unwrap() <= tol().classify_tol());
    for s in Singularity::ALL {
        let e = identity::classify(r(s.location()), P, &tol());
        assert_eq!(e.klass, Klass::Singular);
        assert!(e.y.is_none() && e.resid_f.is_none() && e.note.is_some());
    }
}

#[test]
fn classification_is_pure() {
    for z in [c(0.5, 0.1), c(-2.0, 2.0), c(3.0, 0.5), c(0.1, -0.3)] {
        assert_eq!(identity::classify(z, P, &tol()), identity::classify(z, P, &tol()));
    }
}

#[test]
fn small_region_maps() {
    let basin = identity::region_map(&GridSpec::new(0.2, 0.8, -0.1, 0.1, 3, 3).unwrap(), P, &tol()).unwrap();
    assert_eq!(basin.count(Klass::Zero), 9);
    let far = identity::region_map(&GridSpec::new(-3.0, -2.0, 1.0, 2.0, 3, 3).unwrap(), P, &tol()).unwrap();
    assert_eq!(far.count(Klass::ClosedForm), 9);
    let around_pole = identity::region_map(&GridSpec::new(-1.0, 1.0, -1.0, 1.0, 3, 3).unwrap(), P, &tol()).unwrap();
    assert_eq!(around_pole.cell(1, 1).z, r(0.0));
    assert_eq!(around_pole.cell(1, 1).klass, Klass::Singular);
    assert_eq!(around_pole.cell(2, 1).klass, Klass::Singular);
    assert_eq!(around_pole.cell(0, 0).z, c(-1.0, -1.0));
}

#[test]
fn refinement_keeps_shared_nodes() {
    let coarse = GridSpec::new(-0.5, 3.5, -0.6, 0.6, 9, 7).unwrap();
    let a = identity::region_map(&coarse, P, &tol()).unwrap();
    for k in [2, 3] {
        let fine = coarse.refined(k);
        let b = identity::region_map(&fine, P, &tol()).unwrap();
        for j in 0..coarse.ny {
            for i in 0..coarse.nx {
                let (u, v) = (a.cell(i, j), b.cell(k * i, k * j));
                assert_eq!(u.z, v.z);
                assert_eq!(u.klass, v.klass, "node {i},{j} at {}", u.z);
            }
        }
    }
}

#[test]
fn grid_presets_and_validation() {
    assert_eq!(GridSpec::preset("fig1").unwrap(), GridSpec::FIG1);
    assert_eq!(GridSpec::preset("fig2").unwrap(), GridSpec::FIG2);
    assert!(GridSpec::preset("fig3").is_err());
    assert!(GridSpec::new(1.0, 0.0, 0.0, 1.0, 4, 4).is_err());
    assert!(GridSpec::new(0.0, 1.0, 0.0, 1.0, 1, 4).is_err());
    assert!(GridSpec::new(0.0, f64::NAN, 0.0, 1.0, 4, 4).is_err());
    assert!(GridSpec::new(0.0, 1.0, 0.0, 1.0, 10_000, 10_000).is_err());
    let g = GridSpec::new(0.0, 1.0, -1.0, 1.0, 5, 3).unwrap();
    assert_eq!(g.node(4, 2), c(1.0, 1.0));
    assert_eq!(g.node(2, 1), c(0.5, 0.0));
}

#[test]
fn tolerance_validation() {
    let carlson = CarlsonConfig::default();
    assert!(ToleranceConfig::new(1e-8, 1e-6, carlson).is_ok());
    assert!(ToleranceConfig::new(0.0, 1e-6, carlson).is_err());
    assert!(ToleranceConfig::new(1e-8, -1.0, carlson).is_err());
    assert!(ToleranceConfig::new(1e-16, 1e-6, carlson).is_err());
}

/// Whether the exception region reaches the real segment (1, 6.74) is left
/// open by the source; this reports what a fine strip around the axis shows
/// and checks only that the report is self-consistent.
#[test]
fn exception_region_near_the_real_axis() {
    let strip = GridSpec::new(1.01, 6.73, -0.05, 0.05, 287, 11).unwrap();
    let grid = identity::region_map(&strip, P, &tol()).unwrap();
    let axis_row = 5;
    assert_eq!(grid.cell(0, axis_row).z.im, 0.0);
    let neither = grid.count(Klass::Neither);
    let on_axis = (0..strip.nx).filter(|&i| grid.cell(i, axis_row).klass == Klass::Neither).count();
    eprintln!(
        "strip {}x{} around (1.01, 6.73): {neither} neither cells, {on_axis} on the axis; touches: {}",
        strip.nx,
        strip.ny,
        on_axis > 0
    );
    assert_eq!(grid.count(Klass::Zero), 0);
    for i in 0..strip.nx {
        let cell = grid.cell(i, axis_row);
        let x = cell.z.re;
        let real_axis_verdict = (y(x) - f(x)).norm() <= tol().classify_tol();
        assert_eq!(cell.klass == Klass::ClosedForm, real_axis_verdict, "x={x}");
    }
}

/// The worst closed-form residual over the exception rectangle, reported,
/// with its classification checked against its residuals.
#[test]
fn worst_point_of_the_exception_rectangle() {
    let rect = GridSpec::new(1.0, 6.74, -0.97, 0.97, 116, 40).unwrap();
    let grid = identity::region_map(&rect, P, &tol()).unwrap();
    let worst = grid
        .cells
        .iter()
        .filter(|e| e.klass != Klass::Singular)
        .max_by(|a, b| a.resid_f.unwrap().total_cmp(&b.resid_f.unwrap()))
        .unwrap();
    let again = identity::classify(worst.z, P, &tol());
    eprintln!(
        "max |y - f| = {:e} at {} ({})",
        again.resid_f.unwrap(),
        again.z,
        again.klass
    );
    assert_eq!(&again, worst);
    let t = tol().classify_tol();
    let expected = if again.resid_zero.unwrap() <= t {
        Klass::Zero
    } else if again.resid_f.unwrap() <= t {
        Klass::ClosedForm
    } else {
        Klass::Neither
    };
    assert_eq!(again.klass, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn labels_follow_residuals(re in -4.0f64..8.0, im in -2.0f64..2.0) {
        let e = identity::classify(c(re, im), P, &tol());
        let t = tol().classify_tol();
        match e.klass {
            Klass::Singular => prop_assert!(e.note.is_some() && e.y.is_none()),
            Klass::Zero => prop_assert!(e.resid_zero.unwrap() <= t),
            Klass::ClosedForm => prop_assert!(e.resid_zero.unwrap() > t && e.resid_f.unwrap() <= t),
            Klass::Neither => prop_assert!(e.resid_zero.unwrap() > t && e.resid_f.unwrap() > t),
        }
        if let (Some(y), Some(f)) = (e.y, e.f) {
            prop_assert_eq!(e.resid_zero.unwrap(), y.norm());
            prop_assert_eq!(e.resid_f.unwrap(), (y - f).norm());
        }
    }

    #[test]
    fn ode_holds_off_the_axis(re in -3.0f64..5.0, im in 0.05f64..1.5) {
        let z = c(re, im);
        prop_assume!(identity::nearby_singularity(z, 0.05).is_none());
        let res = identity::ode_residual(z, P, &tol()).unwrap();
        prop_assert!(res < 1e-8, "z={z}: {res:e}");
    }
}
