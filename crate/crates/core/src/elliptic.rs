//! Complete elliptic integrals K(m), E(m), Π(n, m) and their derivatives.
//!
//! `m` is the parameter (m = k², not the modulus k) and `n` the
//! characteristic:
//!
//! ```text
//! K(m)    = ∫₀¹ dt / √((1−t²)(1−m t²))                 = R_F(0, 1−m, 1)
//! E(m)    = ∫₀¹ √((1−m t²)/(1−t²)) dt                  = R_F − (m/3) R_D(0, 1−m, 1)
//! Π(n, m) = ∫₀¹ dt / ((1−n t²) √((1−t²)(1−m t²)))      = R_F + (n/3) R_J(0, 1−m, 1, 1−n)
//! ```
//!
//! All three are analytic in `m` off the cut `[1, ∞)` and Π is analytic in
//! `n` off `[1, ∞)`. On a cut the value is the limit from the side chosen by
//! the [`BranchPolicy`].

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::carlson::{self, CarlsonConfig, ComplexScalar, CUT_OFFSET};
use crate::error::{Error, Result};

/// Side of a branch cut from which a function is continued onto it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutSide {
    /// Limit from Im > 0.
    FromAbove,
    /// Limit from Im < 0.
    FromBelow,
}

impl CutSide {
    fn sign(self) -> f64 {
        match self {
            CutSide::FromAbove => 1.0,
            CutSide::FromBelow => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CutSide::FromAbove => "from-above",
            CutSide::FromBelow => "from-below",
        }
    }

    pub fn flipped(self) -> CutSide {
        match self {
            CutSide::FromAbove => CutSide::FromBelow,
            CutSide::FromBelow => CutSide::FromAbove,
        }
    }
}

impl fmt::Display for CutSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CutSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "from-above" | "above" => Ok(CutSide::FromAbove),
            "from-below" | "below" => Ok(CutSide::FromBelow),
            other => Err(Error::InvalidConfig(format!(
                "unknown cut side {other:?} (expected from-above or from-below)"
            ))),
        }
    }
}

/// Cut sides for the parameter cut `m ∈ [1, ∞)` and the characteristic cut
/// `n ∈ [1, ∞)`.
///
/// The default is the pair under which the K/Π identity holds on the real
/// intervals where both arguments sit on their cuts; see the calibration
/// test in `identity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchPolicy {
    pub m_cut_side: CutSide,
    pub n_cut_side: CutSide,
}

impl BranchPolicy {
    pub const CALIBRATED: BranchPolicy = BranchPolicy {
        m_cut_side: CutSide::FromBelow,
        n_cut_side: CutSide::FromBelow,
    };

    pub const fn uniform(side: CutSide) -> Self {
        BranchPolicy {
            m_cut_side: side,
            n_cut_side: side,
        }
    }

    /// All four combinations, default first.
    pub fn all() -> [BranchPolicy; 4] {
        let d = Self::CALIBRATED;
        [
            d,
            BranchPolicy {
                m_cut_side: d.m_cut_side,
                n_cut_side: d.n_cut_side.flipped(),
            },
            BranchPolicy {
                m_cut_side: d.m_cut_side.flipped(),
                n_cut_side: d.n_cut_side,
            },
            BranchPolicy {
                m_cut_side: d.m_cut_side.flipped(),
                n_cut_side: d.n_cut_side.flipped(),
            },
        ]
    }

    /// Places `m` infinitesimally off its cut when it lies on `(1, ∞)`.
    pub fn place_m(&self, m: ComplexScalar) -> ComplexScalar {
        place(m, self.m_cut_side)
    }

    pub fn place_n(&self, n: ComplexScalar) -> ComplexScalar {
        place(n, self.n_cut_side)
    }
}

impl Default for BranchPolicy {
    fn default() -> Self {
        Self::CALIBRATED
    }
}

impl fmt::Display for BranchPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m:{},n:{}", self.m_cut_side, self.n_cut_side)
    }
}

impl FromStr for BranchPolicy {
    type Err = Error;

    /// Accepts `from-above`, `from-below`, or `m:<side>,n:<side>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Ok(side) = s.parse::<CutSide>() {
            return Ok(BranchPolicy::uniform(side));
        }
        let mut policy = BranchPolicy::default();
        let mut seen = (false, false);
        for part in s.split(',') {
            match part.trim().split_once(':') {
                Some(("m", side)) => {
                    policy.m_cut_side = side.parse()?;
                    seen.0 = true;
                }
                Some(("n", side)) => {
                    policy.n_cut_side = side.parse()?;
                    seen.1 = true;
                }
                _ => {
                    return Err(Error::InvalidConfig(format!(
                        "cannot parse branch policy {s:?} (expected from-above, from-below, or m:<side>,n:<side>)"
                    )))
                }
            }
        }
        if seen.0 || seen.1 {
            Ok(policy)
        } else {
            Err(Error::InvalidConfig(format!("empty branch policy {s:?}")))
        }
    }
}

fn place(v: ComplexScalar, side: CutSide) -> ComplexScalar {
    if v.im == 0.0 && v.re > 1.0 {
        Complex64::new(v.re, side.sign() * CUT_OFFSET)
    } else {
        v
    }
}

/// The (characteristic, parameter) pair of Π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticArgs {
    pub n: ComplexScalar,
    pub m: ComplexScalar,
}

impl EllipticArgs {
    pub fn new(n: ComplexScalar, m: ComplexScalar) -> Result<Self> {
        check_not_one("n", n, "n = 1 (pole of Pi)")?;
        check_not_one("m", m, "m = 1 (logarithmic singularity of K)")?;
        Ok(EllipticArgs { n, m })
    }

    pub fn pi(&self, policy: BranchPolicy, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
        comp_pi(self.n, self.m, policy, cfg)
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn check_not_one(name: &'static str, v: ComplexScalar, condition: &'static str) -> Result<()> {
    if v == one() {
        Err(Error::domain(name, v, condition))
    } else {
        Ok(())
    }
}

/// K(m) = R_F(0, 1−m, 1).
pub fn comp_k(m: ComplexScalar, policy: BranchPolicy, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    check_not_one("m", m, "m = 1 (logarithmic singularity of K)")?;
    let m = policy.place_m(m);
    carlson::rf(Complex64::new(0.0, 0.0), one() - m, one(), cfg)
}

/// E(m) = R_F(0, 1−m, 1) − (m/3) R_D(0, 1−m, 1); E(1) = 1.
pub fn comp_e(m: ComplexScalar, policy: BranchPolicy, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    if m == one() {
        return Ok(one());
    }
    let m = policy.place_m(m);
    let zero = Complex64::new(0.0, 0.0);
    let rf = carlson::rf(zero, one() - m, one(), cfg)?;
    let rd = carlson::rd(zero, one() - m, one(), cfg)?;
    Ok(rf - m / 3.0 * rd)
}

/// Π(n, m) = R_F(0, 1−m, 1) + (n/3) R_J(0, 1−m, 1, 1−n).
pub fn comp_pi(n: ComplexScalar, m: ComplexScalar, policy: BranchPolicy, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    check_not_one("n", n, "n = 1 (pole of Pi)")?;
    check_not_one("m", m, "m = 1 (logarithmic singularity of K)")?;
    let m = policy.place_m(m);
    let zero = Complex64::new(0.0, 0.0);
    let rf = carlson::rf(zero, one() - m, one(), cfg)?;
    if n == zero {
        return Ok(rf);
    }
    let n = policy.place_n(n);
    let rj = carlson::rj(zero, one() - m, one(), one() - n, cfg)?;
    Ok(rf + n / 3.0 * rj)
}

/// Below this |m| the derivative of K switches to its Maclaurin series.
const SERIES_RADIUS: f64 = 1e-4;

/// dK/dm = (E − (1−m)K) / (2m(1−m)).
pub fn dk_dm(m: ComplexScalar, policy: BranchPolicy, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    check_not_one("m", m, "m = 1 (logarithmic singularity of K)")?;
    if m.norm() < SERIES_RADIUS {
        return Ok(dk_dm_series(m));
    }
    let k = comp_k(m, policy, cfg)?;
    let e = comp_e(m, policy, cfg)?;
    Ok((e - (1.0 - m) * k) / (2.0 * m * (1.0 - m)))
}

/// (π/2) Σ k a_k m^{k−1} with a_k = ((1/2)_k / k!)².
fn dk_dm_series(m: Complex64) -> Complex64 {
    let mut coeff = 1.0f64; // (1/2)_k / k!
    let mut power = one(); // m^{k-1}
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..12 {
        coeff *= (k as f64 - 0.5) / k as f64;
        sum += power * (k as f64 * coeff * coeff);
        power *= m;
    }
    FRAC_PI_2 * sum
}

/// ∂Π/∂m = (−E + (1−m)Π) / (2(1−m)(n−m)).
pub fn dpi_dm(n: ComplexScalar, m: ComplexScalar, policy: BranchPolicy, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    check_not_one("m", m, "m = 1 (logarithmic singularity of K)")?;
    if n == m {
        return Err(Error::domain("n", n, "n = m (degenerate derivative denominator)"));
    }
    let e = comp_e(m, policy, cfg)?;
    let pi = comp_pi(n, m, policy, cfg)?;
    Ok((-e + (1.0 - m) * pi) / (2.0 * (1.0 - m) * (n - m)))
}

/// ∂Π/∂n = (nE − (n−m)K + (n²−m)Π) / (2n(1−n)(n−m)).
pub fn dpi_dn(n: ComplexScalar, m: ComplexScalar, policy: BranchPolicy, cfg: &CarlsonConfig) -> Result<ComplexScalar> {
    check_not_one("n", n, "n = 1 (pole of Pi)")?;
    if n == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("n", n, "n = 0 (degenerate derivative denominator)"));
    }
    if n == m {
        return Err(Error::domain("n", n, "n = m (degenerate derivative denominator)"));
    }
    let e = comp_e(m, policy, cfg)?;
    let k = comp_k(m, policy, cfg)?;
    let pi = comp_pi(n, m, policy, cfg)?;
    Ok((n * e - (n - m) * k + (n * n - m) * pi) / (2.0 * n * (1.0 - n) * (n - m)))
}
