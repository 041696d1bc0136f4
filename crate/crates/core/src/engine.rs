//! End-to-end queries: classification, reduction, planar solve, and lifting
//! of the foot-points back to space. Also hosts a brute-force distance
//! oracle that samples the surface directly.

use arrayvec::ArrayVec;
use nalgebra::{Matrix3, SymmetricEigen, Vector2, Vector3};

use crate::algebra::{invariants_with_tol, QuadricCoeffs, QuadricInvariants, DEFAULT_TOL};
use crate::classify::{classify, AqClass, AqKind};
use crate::error::{Error, Result};
use crate::proximity2d::{
    central_conic_proximity, circle_proximity, intersecting_lines_proximity,
    parabola_proximity, parallel_lines_proximity, PlanarProximity,
};
use crate::reduce::{
    axis_of_symmetry, build_frame, center_or_vertex, conic_form, paraboloid_linear_term,
    project_point, AxialFrame, ConicForm, ConicParams,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProximityOptions {
    /// Zero threshold applied after coefficient normalization.
    pub tol: f64,
    /// Plane normal to use when the query point lies on the axis.
    pub axis_normal_hint: Option<Vector3<f64>>,
}

impl Default for ProximityOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            axis_normal_hint: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProximityResult {
    pub class: AqClass,
    /// Invariants of the normalized coefficients.
    pub invariants: QuadricInvariants,
    /// Coefficients scaled to unit max-norm with positive repeated eigenvalue.
    pub normalized: QuadricCoeffs,
    pub frame: AxialFrame,
    pub conic: ConicForm,
    /// Query point in the conic's planar frame.
    pub pp: Vector2<f64>,
    pub planar: PlanarProximity,
    pub footpoints3d: ArrayVec<Vector3<f64>, 4>,
    pub r_min: f64,
}

impl ProximityResult {
    /// Nearest point on the surface.
    pub fn nearest_point(&self) -> Vector3<f64> {
        self.footpoints3d[self.planar.nearest()]
    }
}

/// Distance from `p0` to the surface `q = 0` with threshold `tol`.
pub fn proximity3d(q: &QuadricCoeffs, p0: &Vector3<f64>, tol: f64) -> Result<ProximityResult> {
    proximity3d_with(
        q,
        p0,
        &ProximityOptions {
            tol,
            ..Default::default()
        },
    )
}

/// Coefficients scaled to unit max-norm and signed so the repeated eigenvalue
/// is positive, with their invariants and class.
pub fn prepare(q: &QuadricCoeffs, tol: f64) -> Result<(QuadricCoeffs, QuadricInvariants, AqClass)> {
    q.validate()?;
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter("tolerance must be finite and nonnegative"));
    }
    let mut qn = q.normalized();
    let mut inv = invariants_with_tol(&qn, tol);
    if inv.lambda12.is_some_and(|l| l < 0.0) {
        qn = qn.scaled(-1.0);
        inv = invariants_with_tol(&qn, tol);
    }
    let cls = classify(&inv, &qn, tol);
    Ok((qn, inv, cls))
}

pub fn proximity3d_with(
    q: &QuadricCoeffs,
    p0: &Vector3<f64>,
    opts: &ProximityOptions,
) -> Result<ProximityResult> {
    if p0.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("query point"));
    }
    let (qn, inv, cls) = prepare(q, opts.tol)?;
    if cls.kind == AqKind::NonAxisymmetric {
        return Err(Error::NotAxisymmetric);
    }
    if cls.kind.is_imaginary() {
        return Err(Error::ImaginarySurface(cls.kind));
    }
    let (Some(l12), Some(l3)) = (inv.lambda12, inv.lambda3) else {
        return Err(Error::NotAxisymmetric);
    };

    let mut v3 = if cls.kind == AqKind::SphereReal {
        Vector3::z()
    } else {
        axis_of_symmetry(&qn, l3)
    };
    let pc = center_or_vertex(&qn, &cls, &v3, l12);
    if cls.kind == AqKind::Paraboloid && paraboloid_linear_term(&qn, &pc, &v3) > 0.0 {
        v3 = -v3;
    }
    let frame = build_frame(&qn, &cls, &pc, &v3, p0, opts.axis_normal_hint.as_ref());
    let conic = conic_form(&qn, &inv, &cls, &frame, opts.tol)?;
    let pp = project_point(&frame, p0, conic.rotated);

    let planar = if qn.eval(p0).abs() <= opts.tol {
        PlanarProximity::on_surface(&pp)
    } else {
        let solved = match conic.params {
            ConicParams::Circle { r0 } => circle_proximity(&pp, r0),
            ConicParams::Ellipse { n, .. } | ConicParams::Hyperbola { n, .. } => {
                central_conic_proximity(&pp, n, conic.e.unwrap_or(0.0))
            }
            ConicParams::Parabola { focal } => parabola_proximity(&pp, focal),
            ConicParams::IntersectingLines { m1 } => intersecting_lines_proximity(&pp, m1),
            ConicParams::ParallelLines { m } => parallel_lines_proximity(&pp, m),
        };
        match solved {
            Err(Error::OnCurve) => PlanarProximity::on_surface(&pp),
            other => other?,
        }
    };

    let footpoints3d = if planar.case == crate::proximity2d::CaseTag::OnSurface {
        std::iter::once(*p0).collect()
    } else {
        planar
            .footpoints
            .iter()
            .map(|f| frame.lift(f, conic.rotated))
            .collect()
    };
    Ok(ProximityResult {
        class: cls,
        invariants: inv,
        normalized: qn,
        frame,
        conic,
        pp,
        r_min: planar.r_min,
        planar,
        footpoints3d,
    })
}

/// Coefficients of `q` after the rigid motion `x ↦ rot·x + shift`.
pub fn rigid_transform(q: &QuadricCoeffs, rot: &Matrix3<f64>, shift: &Vector3<f64>) -> QuadricCoeffs {
    q.transformed(rot, shift)
}

/// Surface parametrization used by the oracle: a meridian curve
/// `s ↦ (radius, axial offset)` revolved about the axis.
enum Meridian {
    /// `(A sin s, C cos s)` for `s ∈ [0, π]`.
    Ellipsoid { a: f64, c: f64 },
    /// `(A√(1 + s²/C²), s)`.
    OneSheet { a: f64, c: f64 },
    /// `(|s|, ±C√(1 + s²/A²))` with the sign of `s`.
    TwoSheets { a: f64, c: f64 },
    /// `(k|s|, s)`.
    Cone { k: f64 },
    /// `(s, −λ s² / (2w))`.
    Paraboloid { curvature: f64 },
    /// `(A, s)`.
    Cylinder { a: f64 },
}

impl Meridian {
    fn eval(&self, s: f64) -> (f64, f64) {
        match *self {
            Meridian::Ellipsoid { a, c } => (a * s.sin(), c * s.cos()),
            Meridian::OneSheet { a, c } => (a * (1.0 + (s / c).powi(2)).sqrt(), s),
            Meridian::TwoSheets { a, c } => (s.abs(), s.signum() * c * (1.0 + (s / a).powi(2)).sqrt()),
            Meridian::Cone { k } => (k * s.abs(), s),
            Meridian::Paraboloid { curvature } => (s, curvature * s * s),
            Meridian::Cylinder { a } => (a, s),
        }
    }
}

/// Minimum distance from `p0` to the surface by dense sampling of a
/// `resolution × resolution` parameter grid followed by coordinate-descent
/// refinement from the best samples.
///
/// The surface is rebuilt from a numerical eigen-decomposition of the
/// quadratic part, so the oracle shares no axis, center, or planar-solver
/// code with [`proximity3d`].
pub fn oracle_min_distance(q: &QuadricCoeffs, p0: &Vector3<f64>, resolution: usize) -> Result<f64> {
    oracle_min_distance_with(q, p0, resolution, DEFAULT_TOL)
}

pub fn oracle_min_distance_with(
    q: &QuadricCoeffs,
    p0: &Vector3<f64>,
    resolution: usize,
    tol: f64,
) -> Result<f64> {
    if resolution < 4 {
        return Err(Error::InvalidParameter("resolution must be at least 4"));
    }
    let (qn, _, cls) = prepare(q, tol)?;
    if cls.kind == AqKind::NonAxisymmetric {
        return Err(Error::NotAxisymmetric);
    }
    if cls.kind.is_imaginary() {
        return Err(Error::ImaginarySurface(cls.kind));
    }

    let b = qn.b_matrix();
    let c = qn.c_vector();
    let eig = SymmetricEigen::new(b);
    let w = eig.eigenvalues;
    let k = (0..3)
        .max_by(|&i, &j| {
            let gap = |i: usize| (0..3).filter(|&j| j != i).map(|j| (w[i] - w[j]).abs()).fold(f64::INFINITY, f64::min);
            gap(i).total_cmp(&gap(j))
        })
        .unwrap();
    let lam3 = w[k];
    let lam12 = (0..3).filter(|&i| i != k).map(|i| w[i]).sum::<f64>() / 2.0;
    let axis: Vector3<f64> = eig.eigenvectors.column(k).normalize();

    let radial_part = |x: Vector3<f64>| x - axis * axis.dot(&x);
    let mut center = match cls.kind {
        AqKind::Paraboloid | AqKind::CylinderReal => -radial_part(c) / lam12,
        _ => b.lu().solve(&(-c)).ok_or(Error::DegenerateConic)?,
    };
    let mut curvature = 0.0;
    if cls.kind == AqKind::Paraboloid {
        let slope = 2.0 * axis.dot(&(b * center + c));
        center -= axis * (qn.eval(&center) / slope);
        curvature = -lam12 / slope;
    }
    if cls.kind == AqKind::CylinderReal {
        center += axis * axis.dot(&(p0 - center));
    }
    let gamma = qn.eval(&center);
    let reach = 2.0 * (p0 - center).norm();

    let (meridian, s_lo, s_hi) = match cls.kind {
        AqKind::ProlateSpheroid | AqKind::OblateSpheroid | AqKind::SphereReal => {
            let m = Meridian::Ellipsoid {
                a: (-gamma / lam12).sqrt(),
                c: (-gamma / lam3).sqrt(),
            };
            (m, 0.0, std::f64::consts::PI)
        }
        AqKind::HyperboloidOneSheet => {
            let a = (-gamma / lam12).sqrt();
            let m = Meridian::OneSheet {
                a,
                c: (gamma / lam3).sqrt(),
            };
            (m, -(reach + 2.0 * a), reach + 2.0 * a)
        }
        AqKind::HyperboloidTwoSheets => {
            let cc = (-gamma / lam3).sqrt();
            let m = Meridian::TwoSheets {
                a: (gamma / lam12).sqrt(),
                c: cc,
            };
            (m, -(reach + 2.0 * cc), reach + 2.0 * cc)
        }
        AqKind::ConeReal => (
            Meridian::Cone {
                k: (lam3.abs() / lam12).sqrt(),
            },
            -reach,
            reach,
        ),
        AqKind::Paraboloid => (Meridian::Paraboloid { curvature }, -reach, reach),
        AqKind::CylinderReal => {
            let a = (-gamma / lam12).sqrt();
            (Meridian::Cylinder { a }, -(reach + 2.0 * a), reach + 2.0 * a)
        }
        _ => return Err(Error::NotAxisymmetric),
    };

    let e1 = {
        let t = if axis.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
        radial_part(t).normalize()
    };
    let e2 = axis.cross(&e1);
    let point = |s: f64, phi: f64| {
        let (rho, z) = meridian.eval(s);
        center + axis * z + (e1 * phi.cos() + e2 * phi.sin()) * rho
    };
    let dist = |s: f64, phi: f64| (point(s.clamp(s_lo, s_hi), phi) - p0).norm();

    let n = resolution;
    let two_pi = 2.0 * std::f64::consts::PI;
    let ds = (s_hi - s_lo) / (n - 1) as f64;
    let dphi = two_pi / n as f64;
    let mut samples: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for i in 0..n {
        let s = s_lo + ds * i as f64;
        for j in 0..n {
            samples.push((dist(s, dphi * j as f64), i, j));
        }
    }
    samples.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut best = samples[0].0;
    for &(d0, i, j) in samples.iter().take(4) {
        let (mut s, mut phi, mut d) = (s_lo + ds * i as f64, dphi * j as f64, d0);
        let (mut hs, mut hp) = (ds, dphi);
        let mut iterations = 0;
        while (hs > 1e-14 * (s_hi - s_lo) || hp > 1e-14) && iterations < 20_000 {
            iterations += 1;
            let mut moved = false;
            for (cs, cp) in [(s + hs, phi), (s - hs, phi), (s, phi + hp), (s, phi - hp)] {
                let cs = cs.clamp(s_lo, s_hi);
                let dc = dist(cs, cp);
                if dc < d {
                    s = cs;
                    phi = cp;
                    d = dc;
                    moved = true;
                    break;
                }
            }
            if !moved {
                hs *= 0.5;
                hp *= 0.5;
            }
        }
        best = best.min(d);
    }
    Ok(best)
}
