//! Quadric coefficients, invariants, and closed-form real-root solvers for
//! cubic and quartic polynomials.

use std::f64::consts::PI;

use arrayvec::ArrayVec;
use nalgebra::{Matrix3, Matrix4, Vector3};

use crate::error::{Error, Result};

/// Default zero threshold applied after normalizing coefficients by their
/// largest magnitude.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Relative band around a vanishing cubic discriminant treated as a repeated root.
const CUBIC_DISC_REL_TOL: f64 = 1e-12;

/// Relative threshold under which a square-root argument in the quartic
/// assembly is clamped to zero instead of being declared complex.
pub const QUARTIC_SQRT_REL_TOL: f64 = 1e-10;

/// Coefficients of
/// `a x² + b y² + c z² + 2f xy + 2g yz + 2h xz + 2p x + 2q y + 2r z + d = 0`.
///
/// Cross and linear terms carry an implicit factor of two so that the
/// symmetric matrix of the quadratic part is `[[a,f,h],[f,b,g],[h,g,c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub d: f64,
}

impl QuadricCoeffs {
    /// Builds and validates a coefficient set in `[a,b,c,f,g,h,p,q,r,d]` order.
    pub fn new(v: [f64; 10]) -> Result<Self> {
        let q = Self::from_array(v);
        q.validate()?;
        Ok(q)
    }

    /// Builds a coefficient set without validation.
    pub const fn from_array(v: [f64; 10]) -> Self {
        Self {
            a: v[0],
            b: v[1],
            c: v[2],
            f: v[3],
            g: v[4],
            h: v[5],
            p: v[6],
            q: v[7],
            r: v[8],
            d: v[9],
        }
    }

    /// Builds coefficients from the plain polynomial form
    /// `a x² + b y² + c z² + kxy xy + kyz yz + kxz xz + kx x + ky y + kz z + d`,
    /// halving cross and linear terms.
    #[allow(clippy::too_many_arguments)]
    pub fn from_polynomial(
        a: f64,
        b: f64,
        c: f64,
        kxy: f64,
        kyz: f64,
        kxz: f64,
        kx: f64,
        ky: f64,
        kz: f64,
        d: f64,
    ) -> Self {
        Self::from_array([
            a,
            b,
            c,
            kxy / 2.0,
            kyz / 2.0,
            kxz / 2.0,
            kx / 2.0,
            ky / 2.0,
            kz / 2.0,
            d,
        ])
    }

    pub fn to_array(&self) -> [f64; 10] {
        [
            self.a, self.b, self.c, self.f, self.g, self.h, self.p, self.q, self.r, self.d,
        ]
    }

    /// Checks finiteness and the presence of at least one quadratic term.
    pub fn validate(&self) -> Result<()> {
        if self.to_array().iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("coefficients"));
        }
        if [self.a, self.b, self.c, self.f, self.g, self.h]
            .iter()
            .all(|&x| x == 0.0)
        {
            return Err(Error::NoQuadraticTerms);
        }
        Ok(())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::from_array(self.to_array().map(|x| x * k))
    }

    /// Coefficients divided by their largest magnitude.
    pub fn normalized(&self) -> Self {
        let s = self.max_abs();
        if s > 0.0 {
            self.scaled(1.0 / s)
        } else {
            *self
        }
    }

    /// Symmetric matrix of the quadratic part.
    pub fn b_matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.a, self.f, self.h, //
            self.f, self.b, self.g, //
            self.h, self.g, self.c,
        )
    }

    pub fn c_vector(&self) -> Vector3<f64> {
        Vector3::new(self.p, self.q, self.r)
    }

    /// Homogeneous 4×4 matrix of the quadric.
    pub fn a_matrix(&self) -> Matrix4<f64> {
        Matrix4::new(
            self.a, self.f, self.h, self.p, //
            self.f, self.b, self.g, self.q, //
            self.h, self.g, self.c, self.r, //
            self.p, self.q, self.r, self.d,
        )
    }

    /// Value of the quadric polynomial at `x`.
    pub fn eval(&self, x: &Vector3<f64>) -> f64 {
        let (u, v, w) = (x.x, x.y, x.z);
        self.a * u * u
            + self.b * v * v
            + self.c * w * w
            + 2.0 * (self.f * u * v + self.g * v * w + self.h * u * w)
            + 2.0 * (self.p * u + self.q * v + self.r * w)
            + self.d
    }

    pub fn gradient(&self, x: &Vector3<f64>) -> Vector3<f64> {
        2.0 * (self.b_matrix() * x + self.c_vector())
    }

    /// Coefficients of the image of this surface under `x ↦ rot·x + shift`.
    pub fn transformed(&self, rot: &Matrix3<f64>, shift: &Vector3<f64>) -> Self {
        let b = rot * self.b_matrix() * rot.transpose();
        let qc = rot * self.c_vector();
        let c = qc - b * shift;
        let d = shift.dot(&(b * shift)) - 2.0 * qc.dot(shift) + self.d;
        Self::from_array([
            b[(0, 0)],
            b[(1, 1)],
            b[(2, 2)],
            0.5 * (b[(0, 1)] + b[(1, 0)]),
            0.5 * (b[(1, 2)] + b[(2, 1)]),
            0.5 * (b[(0, 2)] + b[(2, 0)]),
            c.x,
            c.y,
            c.z,
            d,
        ])
    }
}

/// Rotation and translation invariants of a quadric together with the
/// eigenvalues of its quadratic part when two of them coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricInvariants {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub det_a: f64,
    /// Linear coefficient of the depressed characteristic cubic.
    pub a0: f64,
    /// Constant coefficient of the depressed characteristic cubic.
    pub a1: f64,
    /// Discriminant `4a0³ + 27a1²`.
    pub delta: f64,
    /// Repeated eigenvalue, present only when `delta` vanishes within tolerance.
    pub lambda12: Option<f64>,
    /// Distinct eigenvalue, present only when `delta` vanishes within tolerance.
    pub lambda3: Option<f64>,
    /// Set when the elimination pivots were unsafe and `det_a` came from
    /// cofactor expansion.
    pub det_by_cofactors: bool,
}

/// Invariants with the default tolerance.
pub fn invariants(q: &QuadricCoeffs) -> QuadricInvariants {
    invariants_with_tol(q, DEFAULT_TOL)
}

/// Invariants of `q`; `tol` applies to `delta` and `a0` after scaling by the
/// matching power of the Frobenius norm of the quadratic part.
pub fn invariants_with_tol(q: &QuadricCoeffs, tol: f64) -> QuadricInvariants {
    let QuadricCoeffs {
        a, b, c, f, g, h, ..
    } = *q;
    let j1 = a + b + c;
    let j2 = a * b + b * c + c * a - (f * f + g * g + h * h);
    let j3 = a * (b * c - g * g) - c * f * f + h * (2.0 * f * g - b * h);

    // Characteristic cubic of the traceless part; avoids the cancellation of
    // the expanded forms J2 − J1²/3 and −2J1³/27 + J1J2/3 − J3.
    let m = j1 / 3.0;
    let (da, db, dc) = (a - m, b - m, c - m);
    let off = f * f + g * g + h * h;
    let a0 = -0.5 * (da * da + db * db + dc * dc) - off;
    let det_shift = da * (db * dc - g * g) - dc * f * f + h * (2.0 * f * g - db * h);
    let a1 = -det_shift;
    let delta = 4.0 * a0 * a0 * a0 + 27.0 * a1 * a1;

    let (det_a, det_by_cofactors) = match det_by_elimination(q) {
        Some(v) => (v, false),
        None => (det4_cofactor(&q.a_matrix()), true),
    };

    let s = (j1 * j1 - 2.0 * j2).max(0.0).sqrt().max(f64::MIN_POSITIVE);
    let (lambda12, lambda3) = if (delta / s.powi(6)).abs() <= tol {
        if (a0 / (s * s)).abs() <= tol {
            (Some(m), Some(m))
        } else {
            (Some(m - 1.5 * a1 / a0), Some(m + 3.0 * a1 / a0))
        }
    } else {
        (None, None)
    };

    QuadricInvariants {
        j1,
        j2,
        j3,
        det_a,
        a0,
        a1,
        delta,
        lambda12,
        lambda3,
        det_by_cofactors,
    }
}

/// Determinant of the homogeneous matrix by closed-form Gaussian elimination
/// with pivots `a` and `b − f²/a`; `None` when a pivot is too small.
fn det_by_elimination(q: &QuadricCoeffs) -> Option<f64> {
    let QuadricCoeffs {
        a,
        b,
        c,
        f,
        g,
        h,
        p,
        q: qq,
        r,
        d,
    } = *q;
    let s = q.max_abs();
    let eps = 1e-8 * s;
    if a.abs() <= eps {
        return None;
    }
    let alpha = 1.0 / a;
    let piv2 = b - f * f * alpha;
    if piv2.abs() <= eps {
        return None;
    }
    let beta = 1.0 / piv2;
    let phi = g - f * h * alpha;
    let psi = qq - f * p * alpha;
    let t = p * phi - h * psi;
    let inner = alpha * beta * t * t - r * r - d * (h * h * alpha + beta * phi * phi)
        + 2.0 * r * (h * p * alpha + beta * phi * psi)
        + c * (d - p * p * alpha - beta * psi * psi);
    Some(a * inner * piv2)
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Laplace expansion along the first row.
fn det4_cofactor(m: &Matrix4<f64>) -> f64 {
    let mut acc = 0.0;
    for j in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        for (ri, i) in (1..4).enumerate() {
            for (ci, k) in (0..4).filter(|&k| k != j).enumerate() {
                minor[ri][ci] = m[(i, k)];
            }
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * m[(0, j)] * det3(minor);
    }
    acc
}

/// Regime of a depressed cubic `ρ³ + b0 ρ + b1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubicCase {
    /// Negative discriminant: three distinct real roots.
    ThreeDistinct,
    /// Vanishing discriminant with `b0 ≠ 0`: one simple and one double root.
    SimpleAndDouble,
    /// Positive discriminant: one real root and a complex pair.
    OneReal,
    /// `b0 = 0`: the single real cube root of `−b1`.
    CubeRoot,
}

/// Real roots of a cubic, ascending, with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicRealRoots {
    pub case: CubicCase,
    /// Linear coefficient of the depressed form.
    pub b0: f64,
    /// Constant coefficient of the depressed form.
    pub b1: f64,
    /// Discriminant `4b0³ + 27b1²`.
    pub discriminant: f64,
    roots: ArrayVec<f64, 3>,
    multiplicities: ArrayVec<u8, 3>,
}

impl CubicRealRoots {
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn multiplicities(&self) -> &[u8] {
        &self.multiplicities
    }

    pub fn largest(&self) -> f64 {
        self.roots[self.roots.len() - 1]
    }
}

/// Real roots of a quartic, ascending, with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticRealRoots {
    /// Real root of the resolvent cubic used for the factorization.
    pub resolvent_root: f64,
    roots: ArrayVec<f64, 4>,
    multiplicities: ArrayVec<u8, 4>,
}

impl QuarticRealRoots {
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn multiplicities(&self) -> &[u8] {
        &self.multiplicities
    }
}

/// Evaluates a monic polynomial with `coeffs` listed from the next-highest
/// degree down, returning the value and derivative.
fn monic_eval(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 1.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Two Newton steps, each kept only if it does not increase the residual.
fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..2 {
        let (p, dp) = monic_eval(coeffs, x);
        if p == 0.0 || dp == 0.0 || !dp.is_finite() {
            break;
        }
        let next = x - p / dp;
        if next.is_finite() && monic_eval(coeffs, next).0.abs() <= p.abs() {
            x = next;
        } else {
            break;
        }
    }
    x
}

/// Real roots of the depressed cubic `ρ³ + b0 ρ + b1 = 0`.
pub fn depressed_cubic_real_roots(b0: f64, b1: f64) -> Result<CubicRealRoots> {
    if !b0.is_finite() || !b1.is_finite() {
        return Err(Error::NonFinite("cubic coefficients"));
    }
    let disc = 4.0 * b0 * b0 * b0 + 27.0 * b1 * b1;
    let disc_scale = 4.0 * (b0 * b0 * b0).abs() + 27.0 * b1 * b1;
    let mut roots = ArrayVec::<f64, 3>::new();
    let mut mult = ArrayVec::<u8, 3>::new();

    let case = if b0.abs() <= CUBIC_DISC_REL_TOL * b1.abs().powf(2.0 / 3.0) || b0 == 0.0 {
        roots.push((-b1).cbrt());
        mult.push(if b1 == 0.0 { 3 } else { 1 });
        CubicCase::CubeRoot
    } else if disc.abs() <= CUBIC_DISC_REL_TOL * disc_scale {
        let simple = 3.0 * b1 / b0;
        let double = -1.5 * b1 / b0;
        if simple < double {
            roots.push(simple);
            roots.push(double);
            mult.push(1);
            mult.push(2);
        } else {
            roots.push(double);
            roots.push(simple);
            mult.push(2);
            mult.push(1);
        }
        CubicCase::SimpleAndDouble
    } else if disc < 0.0 {
        // b0 < 0 is implied by a negative discriminant.
        let k = 2.0 * (-b0 / 3.0).sqrt();
        let arg = (1.5 * b1 / b0 * (-3.0 / b0).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let mut r = [
            k * phi.cos(),
            k * (phi - 2.0 * PI / 3.0).cos(),
            k * (phi - 4.0 * PI / 3.0).cos(),
        ];
        r.sort_by(f64::total_cmp);
        roots.extend(r);
        mult.extend([1, 1, 1]);
        CubicCase::ThreeDistinct
    } else if b0 < 0.0 {
        let arg = (-1.5 * b1.abs() / b0 * (-3.0 / b0).sqrt()).max(1.0);
        roots.push(-2.0 * b1.signum() * (-b0 / 3.0).sqrt() * (arg.acosh() / 3.0).cosh());
        mult.push(1);
        CubicCase::OneReal
    } else {
        let arg = 1.5 * b1 / b0 * (3.0 / b0).sqrt();
        roots.push(-2.0 * (b0 / 3.0).sqrt() * (arg.asinh() / 3.0).sinh());
        mult.push(1);
        CubicCase::OneReal
    };

    let poly = [0.0, b0, b1];
    for x in roots.iter_mut() {
        *x = polish(&poly, *x);
    }
    Ok(CubicRealRoots {
        case,
        b0,
        b1,
        discriminant: disc,
        roots,
        multiplicities: mult,
    })
}

/// Real roots of the monic cubic `t³ + c2 t² + c1 t + c0 = 0`.
pub fn cubic_real_roots(c2: f64, c1: f64, c0: f64) -> Result<CubicRealRoots> {
    if !(c2.is_finite() && c1.is_finite() && c0.is_finite()) {
        return Err(Error::NonFinite("cubic coefficients"));
    }
    let shift = c2 / 3.0;
    let b0 = c1 - c2 * shift;
    let b1 = 2.0 * shift * shift * shift - shift * c1 + c0;
    let mut out = depressed_cubic_real_roots(b0, b1)?;
    let poly = [c2, c1, c0];
    for x in out.roots.iter_mut() {
        *x = polish(&poly, *x - shift);
    }
    Ok(out)
}

/// Real roots of the monic quartic `x⁴ + a3 x³ + a2 x² + a1 x + a0 = 0`,
/// factored into two quadratics through the largest real root of the
/// resolvent cubic.
pub fn quartic_real_roots(a3: f64, a2: f64, a1: f64, a0: f64) -> Result<QuarticRealRoots> {
    quartic_real_roots_with_clamp(a3, a2, a1, a0, QUARTIC_SQRT_REL_TOL)
}

/// As [`quartic_real_roots`], with an explicit relative threshold below which
/// square-root arguments are clamped to zero (yielding a double root).
pub fn quartic_real_roots_with_clamp(
    a3: f64,
    a2: f64,
    a1: f64,
    a0: f64,
    clamp: f64,
) -> Result<QuarticRealRoots> {
    if !(a3.is_finite() && a2.is_finite() && a1.is_finite() && a0.is_finite()) {
        return Err(Error::NonFinite("quartic coefficients"));
    }
    let resolvent = cubic_real_roots(-a2, a1 * a3 - 4.0 * a0, -(a1 * a1 + a0 * a3 * a3 - 4.0 * a2 * a0))?;
    let y = match resolvent.roots().last() {
        Some(&y) if y.is_finite() => y,
        _ => return Err(Error::ResolventFailure),
    };

    let base = 0.75 * a3 * a3 - 2.0 * a2;
    let tau_sq = 0.25 * a3 * a3 - a2 + y;
    let tau_scale = 0.25 * a3 * a3 + a2.abs() + y.abs();

    let (tau, plus, minus, scale);
    if tau_sq <= clamp * tau_scale {
        tau = 0.0;
        let w = y * y - 4.0 * a0;
        let w = if w < 0.0 { 0.0 } else { 2.0 * w.sqrt() };
        plus = base + w;
        minus = base - w;
        scale = base.abs() + w;
    } else {
        tau = tau_sq.sqrt();
        let w = (4.0 * a3 * a2 - 8.0 * a1 - a3 * a3 * a3) / (4.0 * tau);
        let common = base - tau_sq;
        plus = common + w;
        minus = common - w;
        scale = base.abs() + tau_sq + w.abs();
    }

    let mut found: ArrayVec<(f64, u8), 4> = ArrayVec::new();
    let centre = -0.25 * a3;
    for (arg, offset) in [(plus, 0.5 * tau), (minus, -0.5 * tau)] {
        if arg < -clamp * scale {
            continue;
        }
        if arg <= clamp * scale {
            found.push((centre + offset, 2));
        } else {
            let half = 0.5 * arg.sqrt();
            found.push((centre + offset + half, 1));
            found.push((centre + offset - half, 1));
        }
    }

    let poly = [a3, a2, a1, a0];
    for (x, _) in found.iter_mut() {
        *x = polish(&poly, *x);
    }
    found.sort_by(|l, r| l.0.total_cmp(&r.0));

    let mut roots = ArrayVec::new();
    let mut multiplicities: ArrayVec<u8, 4> = ArrayVec::new();
    for (x, m) in found {
        if roots.last() == Some(&x) {
            *multiplicities.last_mut().unwrap() += m;
        } else {
            roots.push(x);
            multiplicities.push(m);
        }
    }
    Ok(QuarticRealRoots {
        resolvent_root: y,
        roots,
        multiplicities,
    })
}
