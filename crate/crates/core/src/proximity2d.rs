//! Normal foot-points and minimum distance from a planar point to a conic in
//! standard position.

use std::fmt;

use arrayvec::ArrayVec;
use nalgebra::Vector2;

use crate::algebra::{depressed_cubic_real_roots, quartic_real_roots_with_clamp, CubicCase};
use crate::error::{Error, Result};

/// Relative distance from a symmetry axis below which a coordinate is zero.
const AXIS_REL_TOL: f64 = 1e-12;

/// Relative band around a vanishing quartic discriminant treated as the
/// repeated-root regime.
pub const DELTA1_REL_TOL: f64 = 1e-9;

/// Roots closer than this (relative) are reported once.
const CLUSTER_REL_TOL: f64 = 1e-7;

/// Relative square-root clamp used by the quartic solver inside the
/// repeated-root band.
const REPEATED_ROOT_CLAMP: f64 = 1e-6;

/// Relative size of the implicit value below which a point is on the curve.
const ON_CURVE_REL_TOL: f64 = 1e-14;

/// Which formula produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Closed form without case split (circle, line pairs).
    Direct,
    /// Query point at the center; every direction (or both vertices) tie.
    Center,
    /// Query point on the surface.
    OnSurface,
    A1,
    A2,
    B1,
    B2,
    B3,
    B4,
    C1,
    C2,
    C3,
}

impl CaseTag {
    pub fn label(self) -> &'static str {
        match self {
            CaseTag::Direct => "direct",
            CaseTag::Center => "center",
            CaseTag::OnSurface => "on-surface",
            CaseTag::A1 => "a.1",
            CaseTag::A2 => "a.2",
            CaseTag::B1 => "b.1",
            CaseTag::B2 => "b.2",
            CaseTag::B3 => "b.3",
            CaseTag::B4 => "b.4",
            CaseTag::C1 => "c.1",
            CaseTag::C2 => "c.2",
            CaseTag::C3 => "c.3",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Intermediate quantities of the off-axis parabola solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaWorkspace {
    pub b0: f64,
    pub b1: f64,
    pub delta: f64,
}

/// Intermediate quantities of the off-axis ellipse/hyperbola solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralWorkspace {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    /// Coefficients of the depressed quartic `Λ⁴ + c0 Λ² + c1 Λ + c2`.
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    /// Discriminant of the quartic in `t`.
    pub delta1: f64,
    /// Magnitude scale against which `delta1` is compared.
    pub delta1_scale: f64,
    pub delta2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Workspace {
    None,
    Parabola(ParabolaWorkspace),
    Central(CentralWorkspace),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarProximity {
    pub footpoints: ArrayVec<Vector2<f64>, 4>,
    /// Polynomial roots that produced the foot-points; empty for closed forms.
    pub params: ArrayVec<f64, 4>,
    pub distances: ArrayVec<f64, 4>,
    pub r_min: f64,
    pub case: CaseTag,
    pub workspace: Workspace,
    /// Set when the number of real roots differs from what the discriminant
    /// sign promises.
    pub root_count_mismatch: bool,
}

impl PlanarProximity {
    fn from_points(
        pp: &Vector2<f64>,
        footpoints: ArrayVec<Vector2<f64>, 4>,
        params: ArrayVec<f64, 4>,
        case: CaseTag,
        workspace: Workspace,
    ) -> Self {
        let distances: ArrayVec<f64, 4> = footpoints.iter().map(|f| (f - pp).norm()).collect();
        let r_min = distances.iter().copied().fold(f64::INFINITY, f64::min);
        Self {
            footpoints,
            params,
            distances,
            r_min,
            case,
            workspace,
            root_count_mismatch: false,
        }
    }

    /// Result for a point lying on the curve.
    pub fn on_surface(pp: &Vector2<f64>) -> Self {
        let mut f = ArrayVec::new();
        f.push(*pp);
        Self::from_points(pp, f, ArrayVec::new(), CaseTag::OnSurface, Workspace::None)
    }

    /// Index of the nearest foot-point.
    pub fn nearest(&self) -> usize {
        (0..self.distances.len())
            .min_by(|&i, &j| self.distances[i].total_cmp(&self.distances[j]))
            .unwrap_or(0)
    }
}

fn points<const N: usize>(pts: [Vector2<f64>; N]) -> ArrayVec<Vector2<f64>, 4> {
    pts.into_iter().collect()
}

/// Circle `u1² + u2² = r0²`.
pub fn circle_proximity(pp: &Vector2<f64>, r0: f64) -> Result<PlanarProximity> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::InvalidParameter("circle radius must be positive"));
    }
    let rho = pp.norm();
    if rho <= AXIS_REL_TOL * r0 {
        return Ok(PlanarProximity::from_points(
            pp,
            points([Vector2::new(r0, 0.0)]),
            ArrayVec::new(),
            CaseTag::Center,
            Workspace::None,
        ));
    }
    let dir = pp / rho;
    Ok(PlanarProximity::from_points(
        pp,
        points([dir * r0, -dir * r0]),
        ArrayVec::new(),
        CaseTag::Direct,
        Workspace::None,
    ))
}

/// Parabola `u1² = 4·gamma·u2` with `gamma > 0`.
pub fn parabola_proximity(pp: &Vector2<f64>, gamma: f64) -> Result<PlanarProximity> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter("focal parameter must be positive"));
    }
    let (u1, u2) = (pp.x, pp.y);
    let scale = u1.abs().max(u2.abs()).max(gamma);
    let eta = u1 * u1 - 4.0 * gamma * u2;
    if eta.abs() <= ON_CURVE_REL_TOL * scale * scale {
        return Err(Error::OnCurve);
    }

    if u1.abs() <= AXIS_REL_TOL * scale {
        return Ok(if u2 > 2.0 * gamma {
            let x = 2.0 * (gamma * (u2 - 2.0 * gamma)).sqrt();
            let y = u2 - 2.0 * gamma;
            PlanarProximity::from_points(
                pp,
                points([Vector2::new(x, y), Vector2::new(-x, y)]),
                ArrayVec::new(),
                CaseTag::A2,
                Workspace::None,
            )
        } else {
            PlanarProximity::from_points(
                pp,
                points([Vector2::zeros()]),
                ArrayVec::new(),
                CaseTag::A1,
                Workspace::None,
            )
        });
    }

    let w = u2 - 2.0 * gamma;
    let b0 = -w * w / 3.0;
    let b1 = 2.0 * w * w * w / 27.0 - u1 * u1 * gamma;
    let cubic = depressed_cubic_real_roots(b0, b1)?;
    let case = match cubic.case {
        CubicCase::ThreeDistinct => CaseTag::B1,
        CubicCase::SimpleAndDouble => CaseTag::B2,
        CubicCase::OneReal => CaseTag::B3,
        CubicCase::CubeRoot => CaseTag::B4,
    };
    let shift = 2.0 * (u2 + gamma) / 3.0;
    let poly = [-2.0 * (u2 + gamma), u2 * (u2 + 4.0 * gamma), -gamma * (u1 * u1 + 2.0 * u2 * u2)];
    let mut params = ArrayVec::new();
    let mut feet = ArrayVec::new();
    for &rho in cubic.roots() {
        let t = polish_root(&poly, rho + shift);
        params.push(t);
        let y = t - 2.0 * gamma;
        let direct_cond = (t - u2).abs() / t.abs().max(u2.abs());
        let sqrt_cond = y.abs() / t.abs().max(2.0 * gamma);
        let x = if direct_cond >= sqrt_cond {
            2.0 * gamma * u1 / (t - u2)
        } else {
            let s = (u1 * (t - u2)).signum();
            s * 2.0 * (gamma * y.max(0.0)).sqrt()
        };
        feet.push(Vector2::new(x, y));
    }
    Ok(PlanarProximity::from_points(
        pp,
        feet,
        params,
        case,
        Workspace::Parabola(ParabolaWorkspace {
            b0,
            b1,
            delta: cubic.discriminant,
        }),
    ))
}

fn polish_root(poly: &[f64], mut x: f64) -> f64 {
    for _ in 0..2 {
        let mut p = 1.0;
        let mut dp = 0.0;
        for &c in poly {
            dp = dp * x + p;
            p = p * x + c;
        }
        if dp == 0.0 || p == 0.0 {
            break;
        }
        x -= p / dp;
    }
    x
}

/// Ellipse (`e < 1`) or hyperbola (`e > 1`) with major/transverse semi-axis
/// `n` along `u2`: `u1² − (e² − 1)·u2² + (e² − 1)·n² = 0`.
pub fn central_conic_proximity(pp: &Vector2<f64>, n: f64, e: f64) -> Result<PlanarProximity> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::InvalidParameter("semi-axis must be positive"));
    }
    if !(e >= 0.0 && e.is_finite()) || e == 1.0 {
        return Err(Error::InvalidParameter("eccentricity must differ from 1"));
    }
    let (u1, u2) = (pp.x, pp.y);
    let e_sq = e * e;
    let e1 = e_sq - 1.0;
    let e2 = n * n * e_sq * e_sq;
    let ellipse = e1 < 0.0;
    let m = n * e1.abs().sqrt();
    let scale = u1.abs().max(u2.abs()).max(n);
    let eta = (u1 * u1 - e1 * u2 * u2 + e1 * n * n) / (e1.abs() * n * n);
    if eta.abs() <= ON_CURVE_REL_TOL * (scale / n).powi(2).max(1.0) {
        return Err(Error::OnCurve);
    }
    let on_u1_axis = u2.abs() <= AXIS_REL_TOL * scale;
    let on_u2_axis = u1.abs() <= AXIS_REL_TOL * scale;
    let none = ArrayVec::new;

    if on_u1_axis && on_u2_axis {
        let feet = if ellipse {
            points([Vector2::new(m, 0.0), Vector2::new(-m, 0.0)])
        } else {
            points([Vector2::new(0.0, n), Vector2::new(0.0, -n)])
        };
        return Ok(PlanarProximity::from_points(pp, feet, none(), CaseTag::Center, Workspace::None));
    }

    if on_u2_axis {
        let y = u2 / e_sq;
        let x_sq = e1 * (y * y - n * n);
        return Ok(if x_sq > AXIS_REL_TOL * scale * scale {
            let x = x_sq.sqrt();
            PlanarProximity::from_points(
                pp,
                points([Vector2::new(x, y), Vector2::new(-x, y)]),
                none(),
                CaseTag::A1,
                Workspace::None,
            )
        } else {
            PlanarProximity::from_points(
                pp,
                points([Vector2::new(0.0, n), Vector2::new(0.0, -n)]),
                none(),
                CaseTag::A2,
                Workspace::None,
            )
        });
    }

    if on_u1_axis {
        return Ok(if ellipse {
            PlanarProximity::from_points(
                pp,
                points([Vector2::new(m, 0.0), Vector2::new(-m, 0.0)]),
                none(),
                CaseTag::B1,
                Workspace::None,
            )
        } else {
            let t = (e2 + e1 * u1 * u1).sqrt();
            let x = e1 * u1 / e_sq;
            let mut params = ArrayVec::new();
            params.push(t);
            params.push(-t);
            PlanarProximity::from_points(
                pp,
                points([Vector2::new(x, t / e_sq), Vector2::new(x, -t / e_sq)]),
                params,
                CaseTag::B2,
                Workspace::None,
            )
        });
    }

    let (x, y) = (e1 * u1 * u1, u2 * u2);
    let e3 = x - y;
    let c0 = -(x + e2 + 0.5 * y);
    let c1 = (e2 - x) * u2;
    let c2 = y / 16.0 * (y - 4.0 * e2 - 4.0 * x);
    let prefactor = -16.0 * e1 * e2 * u1 * u1 * u2 * u2;
    let core = (e2 + e3).powi(3) + 27.0 * x * e2 * y;
    let delta1 = prefactor * core;
    let delta1_scale = prefactor.abs() * ((e2 + x.abs() + y).powi(3) + 27.0 * x.abs() * e2 * y);
    let delta2 = 2.0
        * (e2 * e2 * e2
            + e2 * e2 * (3.0 * x - 2.0 * y)
            + e3 * e3 * x
            + e2 * (3.0 * x * x + 14.0 * x * y + y * y));
    let workspace = CentralWorkspace {
        e1,
        e2,
        e3,
        c0,
        c1,
        c2,
        delta1,
        delta1_scale,
        delta2,
    };

    let (case, expected) = if delta1.abs() <= DELTA1_REL_TOL * delta1_scale {
        (CaseTag::C2, 3)
    } else if delta1 > 0.0 {
        (CaseTag::C1, 4)
    } else {
        (CaseTag::C3, 2)
    };
    let clamp = if case == CaseTag::C2 {
        REPEATED_ROOT_CLAMP
    } else {
        crate::algebra::QUARTIC_SQRT_REL_TOL
    };
    let quartic = quartic_real_roots_with_clamp(-2.0 * u2, y - e2 - x, 2.0 * e2 * u2, -e2 * y, clamp)?;

    let mut roots: ArrayVec<f64, 4> = ArrayVec::new();
    for &t in quartic.roots() {
        match roots.last() {
            Some(&prev) if (t - prev).abs() <= CLUSTER_REL_TOL * t.abs().max(prev.abs()).max(n) => {}
            _ => roots.push(t),
        }
    }
    if case == CaseTag::C2 && roots.len() == 4 {
        let k = (0..3)
            .min_by(|&i, &j| (roots[i + 1] - roots[i]).total_cmp(&(roots[j + 1] - roots[j])))
            .unwrap();
        roots[k] = 0.5 * (roots[k] + roots[k + 1]);
        roots.remove(k + 1);
    }
    let mismatch = roots.len() != expected;

    let mut feet = ArrayVec::new();
    for &t in &roots {
        let y_star = t / e_sq;
        let direct_cond = (t - u2).abs() / t.abs().max(u2.abs());
        let radial = e1 * (y_star * y_star - n * n);
        let sqrt_cond = (y_star * y_star - n * n).abs() / (y_star * y_star).max(n * n);
        let x_star = if direct_cond >= sqrt_cond {
            u1 * t * e1 / (e_sq * (t - u2))
        } else {
            let s = (u1 * t * e1 * (t - u2)).signum();
            s * radial.max(0.0).sqrt()
        };
        feet.push(Vector2::new(x_star, y_star));
    }
    let mut out = PlanarProximity::from_points(pp, feet, roots, case, Workspace::Central(workspace));
    out.root_count_mismatch = mismatch;
    Ok(out)
}

/// Line pair `√m1·u1 ± u2 = 0`.
pub fn intersecting_lines_proximity(pp: &Vector2<f64>, m1: f64) -> Result<PlanarProximity> {
    if !(m1 > 0.0 && m1.is_finite()) {
        return Err(Error::InvalidParameter("slope ratio must be positive"));
    }
    let s = m1.sqrt();
    // Unit directions of u2 = s·u1 and u2 = −s·u1.
    let norm = (1.0 + m1).sqrt();
    let d1 = Vector2::new(1.0, s) / norm;
    let d2 = Vector2::new(1.0, -s) / norm;
    let feet = points([d1 * d1.dot(pp), d2 * d2.dot(pp)]);
    Ok(PlanarProximity::from_points(pp, feet, ArrayVec::new(), CaseTag::Direct, Workspace::None))
}

/// Line pair `u1 = ±m`.
pub fn parallel_lines_proximity(pp: &Vector2<f64>, m: f64) -> Result<PlanarProximity> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParameter("half-width must be positive"));
    }
    let feet = points([Vector2::new(m, pp.y), Vector2::new(-m, pp.y)]);
    Ok(PlanarProximity::from_points(pp, feet, ArrayVec::new(), CaseTag::Direct, Workspace::None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn circle_cases() {
        let r = circle_proximity(&Vector2::new(2.0, 0.0), 1.0).unwrap();
        assert_eq!(r.r_min, 1.0);
        assert_eq!(r.footpoints[r.nearest()], Vector2::new(1.0, 0.0));
        let r = circle_proximity(&Vector2::zeros(), 1.0).unwrap();
        assert_eq!(r.r_min, 1.0);
        assert_eq!(r.case, CaseTag::Center);
    }

    #[test]
    fn parabola_vertex_case() {
        let r = parabola_proximity(&Vector2::new(0.0, -1.0), 1.0).unwrap();
        assert_eq!(r.case, CaseTag::A1);
        assert_eq!(r.r_min, 1.0);
        assert_eq!(r.footpoints[0], Vector2::zeros());
    }

    #[test]
    fn parabola_inside_on_axis() {
        let r = parabola_proximity(&Vector2::new(0.0, 4.0), 1.0).unwrap();
        assert_eq!(r.case, CaseTag::A2);
        assert_abs_diff_eq!(r.r_min, 12f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(r.footpoints[0].x, 8f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn parabola_b4_on_focal_line() {
        let r = parabola_proximity(&Vector2::new(1.0, 2.0), 1.0).unwrap();
        assert_eq!(r.case, CaseTag::B4);
        assert_eq!(r.footpoints.len(), 1);
    }

    #[test]
    fn lines() {
        let r = intersecting_lines_proximity(&Vector2::new(1.0, 0.0), 1.0).unwrap();
        assert_abs_diff_eq!(r.distances[0], 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.distances[1], 0.5f64.sqrt(), epsilon = 1e-15);
        let r = intersecting_lines_proximity(&Vector2::zeros(), 1.0).unwrap();
        assert_eq!(r.r_min, 0.0);
        let r = parallel_lines_proximity(&Vector2::new(0.0, 5.0), 2.0).unwrap();
        assert_eq!(r.distances.as_slice(), &[2.0, 2.0]);
        let r = parallel_lines_proximity(&Vector2::new(3.0, 0.0), 2.0).unwrap();
        assert_eq!(r.r_min, 1.0);
        assert_eq!(r.footpoints[r.nearest()], Vector2::new(2.0, 0.0));
    }

    #[test]
    fn ellipse_center_and_axes() {
        let e = 3f64.sqrt() / 2.0;
        let r = central_conic_proximity(&Vector2::zeros(), 2.0, e).unwrap();
        assert_eq!(r.case, CaseTag::Center);
        assert_abs_diff_eq!(r.r_min, 1.0, epsilon = 1e-15);
        let r = central_conic_proximity(&Vector2::new(0.5, 0.0), 2.0, e).unwrap();
        assert_eq!(r.case, CaseTag::B1);
        assert_abs_diff_eq!(r.r_min, 0.5, epsilon = 1e-15);
        let r = central_conic_proximity(&Vector2::new(0.0, 3.0), 2.0, e).unwrap();
        assert_eq!(r.case, CaseTag::A2);
        assert_abs_diff_eq!(r.r_min, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn depressed_quartic_matches_shifted_polynomial() {
        let (n, e) = (1.3f64, 0.6f64);
        let pp = Vector2::new(0.7, -0.4);
        let r = central_conic_proximity(&pp, n, e).unwrap();
        let Workspace::Central(w) = r.workspace else {
            panic!("expected quartic workspace")
        };
        let (u1, u2) = (pp.x, pp.y);
        let quartic = |t: f64| {
            t.powi(4) - 2.0 * u2 * t.powi(3) + (u2 * u2 - w.e2 - u1 * u1 * w.e1) * t * t
                + 2.0 * w.e2 * u2 * t
                - w.e2 * u2 * u2
        };
        for lam in [-1.5f64, -0.2, 0.3, 2.0] {
            let depressed = lam.powi(4) + w.c0 * lam * lam + w.c1 * lam + w.c2;
            assert_abs_diff_eq!(depressed, quartic(lam + u2 / 2.0), epsilon = 1e-12);
        }
    }
}
