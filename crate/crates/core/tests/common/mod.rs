#![allow(dead_code)]

use nalgebra::{DMatrix, Vector2, Vector3};
use quadprox::proximity2d::CaseTag;
use rand::Rng;

/// Real roots of a monic polynomial (coefficients from the next-highest
/// degree down) as eigenvalues of its companion matrix. Roots whose
/// imaginary part is below `imag_tol · max(1, |root|)` count as real.
pub fn companion_real_roots(coeffs: &[f64], imag_tol: f64) -> Vec<f64> {
    let n = coeffs.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -coeffs[j];
    }
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    let mut out: Vec<f64> = m
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= imag_tol * z.re.abs().max(1.0))
        .map(|z| z.re)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Residual bound `max(1, Σ|c_i|·|x|^i)` for a monic polynomial.
pub fn residual_scale(coeffs: &[f64], x: f64) -> f64 {
    let deg = coeffs.len();
    let mut s = x.abs().powi(deg as i32);
    for (k, c) in coeffs.iter().enumerate() {
        s += c.abs() * x.abs().powi((deg - 1 - k) as i32);
    }
    s.max(1.0)
}

pub fn eval_monic(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(1.0, |acc, c| acc * x + c)
}

/// Angle between the lines spanned by `a` and `b`.
pub fn line_angle(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    let s = a.cross(b).norm();
    let c = a.dot(b).abs();
    s.atan2(c)
}

pub fn line_angle_2d(a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
    let s = (a.x * b.y - a.y * b.x).abs();
    let c = a.dot(b).abs();
    s.atan2(c)
}

/// Planar queries aimed at one sub-case of the parabola `u1² = 4γu2`.
pub fn parabola_query<R: Rng>(rng: &mut R, tag: CaseTag) -> (Vector2<f64>, f64) {
    let gamma: f64 = rng.gen_range(0.25..2.0);
    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let pp = match tag {
        CaseTag::A1 => {
            let mut u2: f64 = rng.gen_range(-5.0..2.0 * gamma);
            if u2.abs() < 1e-3 {
                u2 = -1.0;
            }
            Vector2::new(0.0, u2)
        }
        CaseTag::A2 => Vector2::new(0.0, rng.gen_range(2.0 * gamma + 0.01..10.0)),
        CaseTag::B1 | CaseTag::B2 => {
            let w: f64 = rng.gen_range(0.1..5.0);
            let edge = (4.0 * w.powi(3) / (27.0 * gamma)).sqrt();
            let u1 = if tag == CaseTag::B2 {
                edge
            } else {
                edge * rng.gen_range(0.05..0.95)
            };
            Vector2::new(sign * u1, w + 2.0 * gamma)
        }
        CaseTag::B3 => {
            if rng.gen::<bool>() {
                Vector2::new(sign * rng.gen_range(0.05..5.0), rng.gen_range(-5.0..2.0 * gamma * 0.99))
            } else {
                let w: f64 = rng.gen_range(0.1..5.0);
                let edge = (4.0 * w.powi(3) / (27.0 * gamma)).sqrt();
                Vector2::new(sign * edge * rng.gen_range(1.05..3.0), w + 2.0 * gamma)
            }
        }
        CaseTag::B4 => Vector2::new(sign * rng.gen_range(0.05..5.0), 2.0 * gamma),
        _ => unreachable!(),
    };
    (pp, gamma)
}

/// Planar queries aimed at one sub-case of an ellipse or hyperbola with
/// major semi-axis `n` along u2; returns `(pp, n, e)`.
pub fn central_query<R: Rng>(rng: &mut R, tag: CaseTag, ellipse: bool) -> (Vector2<f64>, f64, f64) {
    let n: f64 = rng.gen_range(0.3..3.0);
    let e: f64 = if ellipse {
        rng.gen_range(0.2..0.95)
    } else {
        rng.gen_range(1.05..2.5)
    };
    let e_sq = e * e;
    let m = n * (e_sq - 1.0).abs().sqrt();
    let s1 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let s2 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let pp = match (tag, ellipse) {
        (CaseTag::A1, true) => Vector2::new(0.0, s2 * n * e_sq * rng.gen_range(0.05..0.95)),
        (CaseTag::A1, false) => Vector2::new(0.0, s2 * n * e_sq * rng.gen_range(1.05..4.0)),
        (CaseTag::A2, true) => {
            let mut k: f64 = rng.gen_range(1.05..4.0);
            if (k * e_sq - 1.0).abs() < 0.02 {
                k += 0.1;
            }
            Vector2::new(0.0, s2 * n * e_sq * k)
        }
        (CaseTag::A2, false) => {
            let mut k: f64 = rng.gen_range(0.05..0.95);
            if (k * e_sq - 1.0).abs() < 0.02 {
                k = 0.5;
            }
            Vector2::new(0.0, s2 * n * e_sq * k)
        }
        (CaseTag::B1, true) | (CaseTag::B2, false) => {
            let mut u1: f64 = rng.gen_range(0.05..4.0) * m;
            if (u1 - m).abs() < 0.02 * m {
                u1 = 2.0 * m;
            }
            Vector2::new(s1 * u1, 0.0)
        }
        (CaseTag::C1 | CaseTag::C2 | CaseTag::C3, _) => {
            let theta: f64 = rng.gen_range(0.15..std::f64::consts::FRAC_PI_2 - 0.15);
            let (ex, ey) = if ellipse {
                let k = n * n - m * m;
                (k / m * theta.cos().powi(3), k / n * theta.sin().powi(3))
            } else {
                let th = theta * 1.5;
                let k = n * n + m * m;
                (k / m * th.sinh().powi(3), k / n * th.cosh().powi(3))
            };
            // Inside the ellipse's evolute is toward the center; inside the
            // hyperbola's is further out along u2.
            let inward = match tag {
                CaseTag::C1 => true,
                CaseTag::C3 => false,
                _ => return (Vector2::new(s1 * ex, s2 * ey), n, e),
            };
            if ellipse {
                let k = if inward { rng.gen_range(0.05..0.95) } else { rng.gen_range(1.05..3.0) };
                Vector2::new(s1 * ex * k, s2 * ey * k)
            } else {
                let k = if inward { rng.gen_range(1.02..2.0) } else { rng.gen_range(0.05..0.98) };
                Vector2::new(s1 * ex, s2 * ey * k)
            }
        }
        _ => unreachable!(),
    };
    (pp, n, e)
}
