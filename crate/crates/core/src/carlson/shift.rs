//! Argument shift for R_J outside the duplication-safe region.
//!
//! R_J(x,y,z,p) = 3/2 ∫₀^N g(t) dt + R_J(x+N, y+N, z+N, p+N)
//!
//! with `g(t) = 1/((t+p)√(t+x)√(t+y)√(t+z))` and `N` large enough that every
//! shifted argument has real part at least 1. The head integral follows the
//! real axis; singular points `-x, -y, -z, -p` sitting on or next to the
//! axis are bypassed with small rectangular detours on the same side the
//! axis passes them, so the path stays homotopic to the original one and
//! never crosses a branch cut (the cut of `√(t+a)` runs leftwards from
//! `t = -a`).

use num_complex::Complex64;

use super::{rj_duplication, CarlsonConfig, Counted};
use crate::error::{Error, Result};

/// Gauss–Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639,
    0.949_107_912_342_758_525,
    0.864_864_423_359_769_073,
    0.741_531_185_599_394_440,
    0.586_087_235_467_691_130,
    0.405_845_151_377_397_167,
    0.207_784_955_007_898_468,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_553,
    0.104_790_010_322_250_184,
    0.140_653_259_715_525_919,
    0.169_004_726_639_267_903,
    0.190_350_578_064_785_410,
    0.204_432_940_075_298_892,
    0.209_482_141_084_727_828,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693,
    0.279_705_391_489_276_668,
    0.381_830_050_505_118_945,
    0.417_959_183_673_469_388,
];

const REL_TOL: f64 = 1e-14;
const MAX_PANELS: usize = 4000;
/// Largest detour radius.
const MAX_DETOUR: f64 = 0.25;

#[derive(Debug, Clone, Copy)]
struct Singular {
    at: Complex64,
    /// Branch points carry a leftward cut; the pole of `1/(t+p)` does not.
    has_cut: bool,
}

/// A straight piece of the path. `from_origin` pieces use `t = a + (b−a)u²`
/// to absorb the `t^{-1/2}` endpoint behaviour when an argument is zero.
#[derive(Debug, Clone, Copy)]
struct Piece {
    a: Complex64,
    b: Complex64,
    from_origin: bool,
}

pub(super) fn rj_shifted(x: Complex64, y: Complex64, z: Complex64, p: Complex64, cfg: &CarlsonConfig) -> Result<Counted> {
    let singular: Vec<Singular> = [(x, true), (y, true), (z, true), (p, false)]
        .iter()
        .map(|&(t, has_cut)| Singular { at: -t, has_cut })
        .collect();
    let reach = singular.iter().map(|s| s.at.re).fold(0.0, f64::max);
    let shift = reach.ceil() + 1.0;

    let path = build_path(&singular, shift);
    let root = |t: Complex64| (t + x).sqrt() * (t + y).sqrt() * (t + z).sqrt();
    let g = |t: Complex64| 1.0 / ((t + p) * root(t));
    let mut head = Complex64::new(0.0, 0.0);
    for piece in &path.pieces {
        head += integrate_piece(&g, piece)?;
    }
    for &(pole, weight) in &path.residues {
        head += weight * Complex64::new(0.0, 2.0 * std::f64::consts::PI) / root(pole);
    }
    let tail = rj_duplication(x + shift, y + shift, z + shift, p + shift, cfg)?;
    log::trace!(
        "rj shifted by {shift} over {} path pieces, tail iterations {}",
        path.pieces.len(),
        tail.iterations
    );
    Ok(Counted {
        value: 1.5 * head + tail.value,
        iterations: tail.iterations,
    })
}

/// Path from 0 to `end` plus residue corrections, as `(pole, weight)` pairs
/// meaning `weight · 2πi · Res g(pole)` is added to the path integral.
struct Path {
    pieces: Vec<Piece>,
    residues: Vec<(Complex64, f64)>,
}

/// Radius of a detour around `singular[k]` on `side`, before any cut
/// overhead is taken into account, and the radius still allowed by cuts
/// running over that side.
fn detour_radius(singular: &[Singular], k: usize, end: f64, side: f64) -> (f64, f64) {
    let c = singular[k].at;
    let mut radius = MAX_DETOUR.min(0.4 * c.re).min(0.4 * (end - c.re));
    for (j, other) in singular.iter().enumerate() {
        if j != k && other.at != c {
            radius = radius.min(0.4 * (other.at - c).norm());
        }
    }
    let mut allowed = radius;
    for (j, other) in singular.iter().enumerate() {
        let o = other.at;
        if j != k && other.has_cut && o.im * side > 0.0 && o.re > c.re - radius {
            allowed = allowed.min(0.5 * o.im.abs());
        }
    }
    (radius, allowed)
}

fn build_path(singular: &[Singular], end: f64) -> Path {
    let mut detours: Vec<(f64, f64, f64)> = Vec::new(); // (centre, radius, side)
    let mut splits: Vec<f64> = Vec::new();
    let mut residues = Vec::new();
    for (k, s) in singular.iter().enumerate() {
        let c = s.at;
        if c.re <= 0.0 || c.re >= end {
            continue;
        }
        // the axis passes below points with positive imaginary part
        let side = if c.im.is_sign_negative() { 1.0 } else { -1.0 };
        let (full, allowed) = detour_radius(singular, k, end, side);
        if c.im.abs() >= 0.5 * full {
            continue;
        }
        if c.im.abs() < 0.5 * allowed {
            detours.push((c.re, allowed, side));
        } else if s.has_cut {
            // A cut runs between the axis and the detour side. A branch
            // point is integrable, so the axis passes it directly.
            splits.push(c.re);
        } else {
            // A pole squeezed between the axis and a cut: go round the other
            // side and add back the residue that the deformation sweeps over.
            let (_, other) = detour_radius(singular, k, end, -side);
            let radius = other.max(allowed);
            if c.im.abs() < 0.5 * other {
                detours.push((c.re, other, -side));
                residues.push((c, -side));
            } else {
                detours.push((c.re, radius, side));
            }
        }
    }
    detours.sort_by(|a, b| a.0.total_cmp(&b.0));
    detours.dedup_by(|a, b| a.0 == b.0);
    splits.retain(|&x| detours.iter().all(|d| (x - d.0).abs() > d.1));

    enum Stop {
        Detour(f64, f64, f64),
        Split(f64),
    }
    let mut stops: Vec<(f64, Stop)> = detours
        .iter()
        .map(|&(c, r, s)| (c, Stop::Detour(c, r, s)))
        .chain(splits.iter().map(|&x| (x, Stop::Split(x))))
        .collect();
    stops.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut pieces = Vec::new();
    let mut cursor = Complex64::new(0.0, 0.0);
    let mut push = |pieces: &mut Vec<Piece>, to: Complex64| {
        let from_origin = pieces.is_empty();
        pieces.push(Piece {
            a: cursor,
            b: to,
            from_origin,
        });
        cursor = to;
    };
    for (_, stop) in &stops {
        match *stop {
            Stop::Detour(centre, radius, side) => {
                let lift = Complex64::new(0.0, side * radius);
                push(&mut pieces, Complex64::new(centre - radius, 0.0));
                push(&mut pieces, Complex64::new(centre - radius, 0.0) + lift);
                push(&mut pieces, Complex64::new(centre + radius, 0.0) + lift);
                push(&mut pieces, Complex64::new(centre + radius, 0.0));
            }
            Stop::Split(x) => push(&mut pieces, Complex64::new(x, 0.0)),
        }
    }
    push(&mut pieces, Complex64::new(end, 0.0));
    Path { pieces, residues }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

fn integrate_piece<F: Fn(Complex64) -> Complex64>(g: &F, piece: &Piece) -> Result<Complex64> {
    let span = piece.b - piece.a;
    let h = |u: f64| -> Complex64 {
        if piece.from_origin {
            g(piece.a + span * (u * u)) * span * (2.0 * u)
        } else {
            g(piece.a + span * u) * span
        }
    };
    let first = gk15(&h, 0.0, 1.0);
    let mut panels = vec![first];
    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= REL_TOL * total.norm() || error < 1e-300 {
            return Ok(total);
        }
        if panels.len() >= MAX_PANELS {
            if error <= 1e-10 * total.norm() {
                return Ok(total);
            }
            return Err(Error::ToleranceNotReached {
                estimate: error / total.norm(),
                requested: REL_TOL,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("at least one panel");
        let panel = panels.swap_remove(worst);
        let mid = 0.5 * (panel.lo + panel.hi);
        if mid <= panel.lo || mid >= panel.hi {
            // cannot bisect further in double precision
            return Err(Error::ToleranceNotReached {
                estimate: error / total.norm(),
                requested: REL_TOL,
            });
        }
        panels.push(gk15(&h, panel.lo, mid));
        panels.push(gk15(&h, mid, panel.hi));
    }
}

fn gk15<F: Fn(f64) -> Complex64>(h: &F, lo: f64, hi: f64) -> Panel {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = h(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = h(centre - dx) + h(centre + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
    }
}
