//! Carlson symmetric elliptic integrals R_F, R_C, R_D and R_J.
//!
//! All four are evaluated with the duplication theorem followed by a
//! truncated Taylor expansion about the mean of the reduced arguments
//! (fifth order for R_F, sixth for R_D/R_J, seventh for R_C). Arguments are
//! complex; the principal branch of every square root is used.
//!
//! An argument lying exactly on the negative real axis is read as the limit
//! from the upper half-plane, which is what the principal square root
//! returns. Callers that need the other side pass an argument with a tiny
//! negative imaginary part (see [`crate::elliptic::BranchPolicy`]).
//!
//! The duplication iteration for R_J is only known to track the integral
//! definition when the arguments lie in the right half-plane (or in a few
//! special configurations). Outside that region the integral is split at a
//! real abscissa `N`: the head `[0, N]` is integrated numerically along a
//! path that is equivalent to the real axis, and the tail is R_J of the
//! shifted arguments, which do satisfy the condition. See [`shift`].

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

mod shift;

/// Double-precision complex value used for every argument and result.
pub type ComplexScalar = Complex64;

/// Offset used to place an argument infinitesimally off a branch cut.
pub const CUT_OFFSET: f64 = 1e-300;

/// Termination settings for the duplication iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlsonConfig {
    rel_tol: f64,
    max_iters: usize,
}

impl CarlsonConfig {
    pub const DEFAULT_REL_TOL: f64 = 1e-15;
    pub const DEFAULT_MAX_ITERS: usize = 64;

    /// Requires `0 < rel_tol < 1e-6` and `max_iters >= 16`.
    pub fn new(rel_tol: f64, max_iters: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1e-6) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must lie in (0, 1e-6), got {rel_tol:e}"
            )));
        }
        if max_iters < 16 {
            return Err(Error::InvalidConfig(format!(
                "max_iters must be at least 16, got {max_iters}"
            )));
        }
        Ok(CarlsonConfig { rel_tol, max_iters })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_iters(&self) -> usize {
        self.max_iters
    }
}

impl Default for CarlsonConfig {
    fn default() -> Self {
        CarlsonConfig {
            rel_tol: Self::DEFAULT_REL_TOL,
            max_iters: Self::DEFAULT_MAX_ITERS,
        }
    }
}

/// A value together with the number of duplication steps that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counted {
    pub value: ComplexScalar,
    pub iterations: usize,
}

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

fn is_negative_real(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

fn is_nonnegative_real(z: Complex64) -> bool {
    z.im == 0.0 && z.re >= 0.0
}

/// Maps a signed-zero imaginary part to `+0.0` so that the principal
/// square root resolves exact negative reals to the upper side.
fn normalize(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

fn check_finite(name: &'static str, z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(normalize(z))
    } else {
        Err(Error::domain(name, z, "non-finite argument"))
    }
}

fn finite_result(routine: &'static str, v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(routine, v, "non-finite result"))
    }
}

fn max_norm(center: Complex64, points: &[Complex64]) -> f64 {
    points
        .iter()
        .map(|&p| (center - p).norm())
        .fold(0.0, f64::max)
}

/// R_F(x, y, z) = 1/2 ∫₀^∞ dt / √((t+x)(t+y)(t+z)).
pub fn rf(x: ComplexScalar, y: ComplexScalar, z: ComplexScalar, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    rf_counted(x, y, z, cfg).map(|c| c.value)
}

pub fn rf_counted(x: ComplexScalar, y: ComplexScalar, z: ComplexScalar, cfg: &CarlsonConfig) -> Result<Counted> {
    let x = check_finite("x", x)?;
    let y = check_finite("y", y)?;
    let z = check_finite("z", z)?;
    let zeros = [x, y, z].iter().filter(|v| is_zero(**v)).count();
    if zeros > 1 {
        return Err(Error::domain("x,y,z", Complex64::new(0.0, 0.0), "two or more zero arguments"));
    }
    // R_F(0, y, y) = π / (2√y) exactly; this pins K(0) = E(0) = π/2 to the
    // correctly rounded value instead of the duplication result.
    if zeros == 1 {
        let (u, v) = match (is_zero(x), is_zero(y)) {
            (true, _) => (y, z),
            (_, true) => (x, z),
            _ => (x, y),
        };
        if u == v {
            return Ok(Counted {
                value: finite_result("rf", Complex64::new(FRAC_PI_2, 0.0) / u.sqrt())?,
                iterations: 0,
            });
        }
    }
    let c = rf_duplication(x, y, z, cfg)?;
    log::trace!("rf converged after {} iterations", c.iterations);
    Ok(Counted {
        value: finite_result("rf", c.value)?,
        iterations: c.iterations,
    })
}

fn rf_duplication(x0: Complex64, y0: Complex64, z0: Complex64, cfg: &CarlsonConfig) -> Result<Counted> {
    let a0 = (x0 + y0 + z0) / 3.0;
    let q = (3.0 * cfg.rel_tol).powf(-1.0 / 6.0) * max_norm(a0, &[x0, y0, z0]);
    let (mut x, mut y, mut z, mut a) = (x0, y0, z0, a0);
    let mut scale = 1.0;
    let mut iterations = 0;
    while scale * q >= a.norm() {
        if iterations >= cfg.max_iters {
            return Err(Error::NonConvergence {
                routine: "rf",
                iterations,
            });
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        z = (z + lambda) * 0.25;
        a = (a + lambda) * 0.25;
        scale *= 0.25;
        iterations += 1;
    }
    let dx = (a0 - x0) * scale / a;
    let dy = (a0 - y0) * scale / a;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
    Ok(Counted {
        value: series / a.sqrt(),
        iterations,
    })
}

/// R_C(x, y) = R_F(x, y, y). For real `x >= 0` and real `y < 0` the Cauchy
/// principal value is returned.
pub fn rc(x: ComplexScalar, y: ComplexScalar, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    rc_counted(x, y, cfg).map(|c| c.value)
}

pub fn rc_counted(x: ComplexScalar, y: ComplexScalar, cfg: &CarlsonConfig) -> Result<Counted> {
    let x = check_finite("x", x)?;
    let y = check_finite("y", y)?;
    if is_zero(y) {
        return Err(Error::domain("y", y, "y = 0"));
    }
    let c = if is_negative_real(y) && is_nonnegative_real(x) {
        // Cauchy principal value: R_C(x, y) = √(x/(x−y)) R_C(x−y, −y).
        let inner = rc_duplication(x - y, -y, cfg)?;
        Counted {
            value: (x / (x - y)).sqrt() * inner.value,
            iterations: inner.iterations,
        }
    } else {
        rc_duplication(x, y, cfg)?
    };
    Ok(Counted {
        value: finite_result("rc", c.value)?,
        iterations: c.iterations,
    })
}

fn rc_duplication(x0: Complex64, y0: Complex64, cfg: &CarlsonConfig) -> Result<Counted> {
    let a0 = (x0 + 2.0 * y0) / 3.0;
    let q = (3.0 * cfg.rel_tol).powf(-1.0 / 8.0) * (a0 - x0).norm();
    let (mut x, mut y, mut a) = (x0, y0, a0);
    let mut scale = 1.0;
    let mut iterations = 0;
    while scale * q >= a.norm() {
        if iterations >= cfg.max_iters {
            return Err(Error::NonConvergence {
                routine: "rc",
                iterations,
            });
        }
        let lambda = 2.0 * x.sqrt() * y.sqrt() + y;
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        a = (a + lambda) * 0.25;
        scale *= 0.25;
        iterations += 1;
    }
    let s = (y0 - a0) * scale / a;
    let s2 = s * s;
    let series = 1.0
        + s2 * (3.0 / 10.0)
        + s2 * s / 7.0
        + s2 * s2 * (3.0 / 8.0)
        + s2 * s2 * s * (9.0 / 22.0)
        + s2 * s2 * s2 * (159.0 / 208.0)
        + s2 * s2 * s2 * s * (9.0 / 8.0);
    Ok(Counted {
        value: series / a.sqrt(),
        iterations,
    })
}

/// R_D(x, y, z) = R_J(x, y, z, z).
pub fn rd(x: ComplexScalar, y: ComplexScalar, z: ComplexScalar, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    rd_counted(x, y, z, cfg).map(|c| c.value)
}

pub fn rd_counted(x: ComplexScalar, y: ComplexScalar, z: ComplexScalar, cfg: &CarlsonConfig) -> Result<Counted> {
    let x = check_finite("x", x)?;
    let y = check_finite("y", y)?;
    let z = check_finite("z", z)?;
    if is_zero(z) {
        return Err(Error::domain("z", z, "z = 0"));
    }
    if is_zero(x) && is_zero(y) {
        return Err(Error::domain("x,y", x, "x and y both zero"));
    }
    let c = rd_duplication(x, y, z, cfg)?;
    log::trace!("rd converged after {} iterations", c.iterations);
    Ok(Counted {
        value: finite_result("rd", c.value)?,
        iterations: c.iterations,
    })
}

/// Sixth-order tail shared by R_D and R_J, in terms of the elementary
/// symmetric functions of the reduced deviations.
fn tail_sixth_order(e2: Complex64, e3: Complex64, e4: Complex64, e5: Complex64) -> Complex64 {
    1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0
}

fn rd_duplication(x0: Complex64, y0: Complex64, z0: Complex64, cfg: &CarlsonConfig) -> Result<Counted> {
    let a0 = (x0 + y0 + 3.0 * z0) / 5.0;
    let q = (0.25 * cfg.rel_tol).powf(-1.0 / 6.0) * max_norm(a0, &[x0, y0, z0]);
    let (mut x, mut y, mut z, mut a) = (x0, y0, z0, a0);
    let mut scale = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut iterations = 0;
    while scale * q >= a.norm() {
        if iterations >= cfg.max_iters {
            return Err(Error::NonConvergence {
                routine: "rd",
                iterations,
            });
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        sum += scale / (sz * (z + lambda));
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        z = (z + lambda) * 0.25;
        a = (a + lambda) * 0.25;
        scale *= 0.25;
        iterations += 1;
    }
    let dx = (a0 - x0) * scale / a;
    let dy = (a0 - y0) * scale / a;
    let dz = -(dx + dy) / 3.0;
    let xy = dx * dy;
    let z2 = dz * dz;
    let e2 = xy - 6.0 * z2;
    let e3 = (3.0 * xy - 8.0 * z2) * dz;
    let e4 = 3.0 * (xy - z2) * z2;
    let e5 = xy * z2 * dz;
    let tail = scale * tail_sixth_order(e2, e3, e4, e5) / (a * a.sqrt());
    Ok(Counted {
        value: tail + 3.0 * sum,
        iterations,
    })
}

/// R_J(x, y, z, p) = 3/2 ∫₀^∞ dt / ((t+p) √((t+x)(t+y)(t+z))).
///
/// Real `p < 0` with real non-negative `x, y, z` gives the Cauchy principal
/// value through the R_C correction relation. Real `p < 0` with other
/// `x, y, z` gives the mean of the two one-sided limits, which is the same
/// principal value.
pub fn rj(
    x: ComplexScalar,
    y: ComplexScalar,
    z: ComplexScalar,
    p: ComplexScalar,
    cfg: &CarlsonConfig,
) -> Result<ComplexScalar> {
    rj_counted(x, y, z, p, cfg).map(|c| c.value)
}

pub fn rj_counted(
    x: ComplexScalar,
    y: ComplexScalar,
    z: ComplexScalar,
    p: ComplexScalar,
    cfg: &CarlsonConfig,
) -> Result<Counted> {
    let x = check_finite("x", x)?;
    let y = check_finite("y", y)?;
    let z = check_finite("z", z)?;
    let p = check_finite("p", p)?;
    if is_zero(p) {
        return Err(Error::domain("p", p, "p = 0"));
    }
    let zeros = [x, y, z].iter().filter(|v| is_zero(**v)).count();
    if zeros > 1 {
        return Err(Error::domain("x,y,z", Complex64::new(0.0, 0.0), "two or more zero arguments"));
    }
    let c = if is_negative_real(p) {
        if [x, y, z].iter().all(|v| is_nonnegative_real(*v)) {
            rj_principal_value(x.re, y.re, z.re, p.re, cfg)?
        } else {
            let above = rj_dispatch(x, y, z, Complex64::new(p.re, CUT_OFFSET), cfg)?;
            let below = rj_dispatch(x, y, z, Complex64::new(p.re, -CUT_OFFSET), cfg)?;
            Counted {
                value: 0.5 * (above.value + below.value),
                iterations: above.iterations.max(below.iterations),
            }
        }
    } else {
        rj_dispatch(x, y, z, p, cfg)?
    };
    log::trace!("rj converged after {} iterations", c.iterations);
    Ok(Counted {
        value: finite_result("rj", c.value)?,
        iterations: c.iterations,
    })
}

/// Configurations in which the duplication iteration is known to agree with
/// the integral definition.
fn duplication_is_safe(x: Complex64, y: Complex64, z: Complex64, p: Complex64) -> bool {
    if x.re >= 0.0 && y.re >= 0.0 && z.re >= 0.0 && p.re > 0.0 {
        return true;
    }
    if p == x || p == y || p == z {
        return true;
    }
    if p.im != 0.0 || p.re >= 0.0 {
        let conj_pair = |r: Complex64, u: Complex64, v: Complex64| is_nonnegative_real(r) && u.conj() == v;
        if conj_pair(x, y, z) || conj_pair(y, x, z) || conj_pair(z, x, y) {
            return true;
        }
    }
    false
}

fn rj_dispatch(x: Complex64, y: Complex64, z: Complex64, p: Complex64, cfg: &CarlsonConfig) -> Result<Counted> {
    if duplication_is_safe(x, y, z, p) {
        rj_duplication(x, y, z, p, cfg)
    } else {
        shift::rj_shifted(x, y, z, p, cfg)
    }
}

/// R_C(1, 1 + e), with a short Maclaurin series for tiny `e`.
fn rc_one_plus(e: Complex64, cfg: &CarlsonConfig) -> Result<Complex64> {
    if e.norm() < 1e-4 {
        // atanh-type series: Σ (−e)^k / (2k+1)
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(1.0, 0.0);
        for k in 1..8 {
            term *= -e;
            sum += term / (2 * k + 1) as f64;
        }
        return Ok(sum);
    }
    let one = Complex64::new(1.0, 0.0);
    let y = normalize(one + e);
    if is_negative_real(y) {
        let inner = rc_duplication(one - y, -y, cfg)?;
        return Ok((one / (one - y)).sqrt() * inner.value);
    }
    Ok(rc_duplication(one, y, cfg)?.value)
}

fn rj_duplication(x0: Complex64, y0: Complex64, z0: Complex64, p0: Complex64, cfg: &CarlsonConfig) -> Result<Counted> {
    let a0 = (x0 + y0 + z0 + 2.0 * p0) / 5.0;
    let delta = (p0 - x0) * (p0 - y0) * (p0 - z0);
    let q = (0.25 * cfg.rel_tol).powf(-1.0 / 6.0) * max_norm(a0, &[x0, y0, z0, p0]);
    let (mut x, mut y, mut z, mut p, mut a) = (x0, y0, z0, p0, a0);
    let mut scale = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut iterations = 0;
    while scale * q >= a.norm() {
        if iterations >= cfg.max_iters {
            return Err(Error::NonConvergence {
                routine: "rj",
                iterations,
            });
        }
        let (sx, sy, sz, sp) = (x.sqrt(), y.sqrt(), z.sqrt(), p.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = delta * (scale * scale * scale) / (d * d);
        sum += scale * rc_one_plus(e, cfg)? / d;
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        z = (z + lambda) * 0.25;
        p = (p + lambda) * 0.25;
        a = (a + lambda) * 0.25;
        scale *= 0.25;
        iterations += 1;
    }
    let dx = (a0 - x0) * scale / a;
    let dy = (a0 - y0) * scale / a;
    let dz = (a0 - z0) * scale / a;
    let dp = -(dx + dy + dz) / 2.0;
    let xyz = dx * dy * dz;
    let p2 = dp * dp;
    let e2 = dx * dy + dx * dz + dy * dz - 3.0 * p2;
    let e3 = xyz + 2.0 * e2 * dp + 4.0 * p2 * dp;
    let e4 = (2.0 * xyz + e2 * dp + 3.0 * p2 * dp) * dp;
    let e5 = xyz * p2;
    let tail = scale * tail_sixth_order(e2, e3, e4, e5) / (a * a.sqrt());
    Ok(Counted {
        value: tail + 6.0 * sum,
        iterations,
    })
}

/// Principal value for real `x, y, z >= 0` and real `p < 0`.
fn rj_principal_value(x: f64, y: f64, z: f64, p: f64, cfg: &CarlsonConfig) -> Result<Counted> {
    let mut v = [x, y, z];
    v.sort_by(f64::total_cmp);
    let [x, y, z] = v;
    let q = -p;
    let shifted = (z * (x + y + q) - x * y) / (z + q);
    let c = |r: f64| Complex64::new(r, 0.0);
    let j = rj_duplication(c(x), c(y), c(z), c(shifted), cfg)?;
    let f = rf_duplication(c(x), c(y), c(z), cfg)?;
    let w = x * y + shifted * q;
    let r = rc_duplication(c(w), c(shifted * q), cfg)?;
    let value = ((shifted - z) * j.value - 3.0 * f.value + 3.0 * (x * y * z / w).sqrt() * r.value) / (z + q);
    Ok(Counted {
        value,
        iterations: j.iterations.max(f.iterations).max(r.iterations),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn rf_trivial_values() {
        let cfg = CarlsonConfig::default();
        assert!(close(rf(c(0.0), c(1.0), c(1.0), &cfg).unwrap(), c(FRAC_PI_2), 1e-15));
        assert!(close(rf(c(1.0), c(1.0), c(1.0), &cfg).unwrap(), c(1.0), 1e-15));
        assert!(close(rf(c(0.0), c(0.5), c(1.0), &cfg).unwrap(), c(1.854_074_677_301_372), 1e-14));
    }

    #[test]
    fn rf_rejects_two_zeros() {
        let cfg = CarlsonConfig::default();
        let err = rf(c(0.0), c(0.0), c(1.0), &cfg).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn rc_values() {
        let cfg = CarlsonConfig::default();
        assert!(close(rc(c(0.0), c(1.0), &cfg).unwrap(), c(FRAC_PI_2), 1e-15));
        assert!(close(rc(c(4.0), c(4.0), &cfg).unwrap(), c(0.5), 1e-15));
        // R_C(x, y) = acos(√(x/y)) / √(y − x) for 0 <= x < y
        let expected = (0.5f64).sqrt().acos();
        assert!(close(rc(c(1.0), c(2.0), &cfg).unwrap(), c(expected), 1e-15));
        // principal value: R_C(x, y) = acosh(√(x/y)) / √(x − y) reflected, y < 0
        let pv = (2.0f64 / 3.0).sqrt() * rc(c(3.0), c(1.0), &cfg).unwrap();
        assert!(close(rc(c(2.0), c(-1.0), &cfg).unwrap(), pv, 1e-15));
        assert!(rc(c(1.0), c(0.0), &cfg).is_err());
    }

    #[test]
    fn rd_and_rj_normalization() {
        let cfg = CarlsonConfig::default();
        assert!(close(rd(c(1.0), c(1.0), c(1.0), &cfg).unwrap(), c(1.0), 1e-15));
        assert!(close(rj(c(2.0), c(2.0), c(2.0), c(2.0), &cfg).unwrap(), c(2f64.powf(-1.5)), 1e-15));
        let d = rd(c(0.0), c(1.0), c(1.0), &cfg).unwrap();
        let j = rj(c(0.0), c(1.0), c(1.0), c(1.0), &cfg).unwrap();
        assert!(close(j, d, 1e-15));
        // R_D(0, 1, 1) = 3π/4
        assert!(close(d, c(0.75 * PI), 1e-15));
        assert!(rj(c(0.0), c(1.0), c(1.0), c(0.0), &cfg).is_err());
        assert!(rd(c(1.0), c(1.0), c(0.0), &cfg).is_err());
    }

    #[test]
    fn rj_closed_form() {
        let cfg = CarlsonConfig::default();
        // R_J(0, 1, 1, 2) = 3π(2 − √2)/4
        let expected = 3.0 * PI * (2.0 - 2f64.sqrt()) / 4.0;
        assert!(close(rj(c(0.0), c(1.0), c(1.0), c(2.0), &cfg).unwrap(), c(expected), 1e-14));
    }

    #[test]
    fn config_validation() {
        assert!(CarlsonConfig::new(1e-6, 16).is_err());
        assert!(CarlsonConfig::new(0.0, 16).is_err());
        assert!(CarlsonConfig::new(1e-12, 15).is_err());
        assert!(CarlsonConfig::new(1e-12, 16).is_ok());
    }

    #[test]
    fn iteration_count_is_bounded() {
        let cfg = CarlsonConfig::default();
        let counted = rf_counted(c(0.0), c(1e-12), c(1.0), &cfg).unwrap();
        assert!(counted.iterations <= 40, "{}", counted.iterations);
        let counted = rj_counted(c(0.0), c(1e-8), c(1.0), c(5e3), &cfg).unwrap();
        assert!(counted.iterations <= 40, "{}", counted.iterations);
    }

    #[test]
    fn signed_zero_resolves_to_upper_side() {
        let cfg = CarlsonConfig::default();
        let plus = rf(c(0.0), Complex64::new(-1.0, 0.0), c(1.0), &cfg).unwrap();
        let minus = rf(c(0.0), Complex64::new(-1.0, -0.0), c(1.0), &cfg).unwrap();
        assert_eq!(plus, minus);
        let above = rf(c(0.0), Complex64::new(-1.0, CUT_OFFSET), c(1.0), &cfg).unwrap();
        assert!(close(plus, above, 1e-15));
    }

    #[test]
    fn non_finite_arguments_are_rejected() {
        let cfg = CarlsonConfig::default();
        assert!(rf(c(f64::NAN), c(1.0), c(1.0), &cfg).is_err());
        assert!(rj(c(1.0), c(1.0), c(f64::INFINITY), c(1.0), &cfg).is_err());
    }
}
