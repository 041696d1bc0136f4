//! Random axisymmetric quadrics with known geometry, for testing and
//! benchmarking.

use nalgebra::{Matrix3, Quaternion, UnitQuaternion, Vector3};
use rand::Rng;

use crate::algebra::QuadricCoeffs;
use crate::classify::AqKind;

/// The real surface types with a distance query.
pub const REAL_KINDS: [AqKind; 8] = [
    AqKind::ProlateSpheroid,
    AqKind::OblateSpheroid,
    AqKind::HyperboloidOneSheet,
    AqKind::HyperboloidTwoSheets,
    AqKind::Paraboloid,
    AqKind::CylinderReal,
    AqKind::ConeReal,
    AqKind::SphereReal,
];

/// A surface placed by a known rigid motion, plus a query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthCase {
    pub kind: AqKind,
    /// Coefficients before the rigid motion (axis along z, center or vertex
    /// at the origin) and before scaling.
    pub canonical: QuadricCoeffs,
    pub coeffs: QuadricCoeffs,
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
    pub point: Vector3<f64>,
    /// Characteristic length of the surface.
    pub size: f64,
}

impl SynthCase {
    /// Center (or vertex) in world coordinates.
    pub fn center(&self) -> Vector3<f64> {
        self.translation
    }

    /// Axis in world coordinates.
    pub fn axis(&self) -> Vector3<f64> {
        self.rotation * Vector3::z()
    }
}

/// Uniformly distributed rotation.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let quat = UnitQuaternion::from_quaternion(Quaternion::new(v[0], v[1], v[2], v[3]));
            return quat.to_rotation_matrix().into_inner();
        }
    }
}

/// Canonical coefficients of `kind` with radial semi-axis `a` and axial
/// semi-axis `c` (paraboloid: focal length `a`; cone: opening slope `a/c`).
pub fn canonical(kind: AqKind, a: f64, c: f64) -> QuadricCoeffs {
    let (ra, rc) = (1.0 / (a * a), 1.0 / (c * c));
    let v = match kind {
        AqKind::ProlateSpheroid | AqKind::OblateSpheroid => [ra, ra, rc, 0., 0., 0., 0., 0., 0., -1.],
        AqKind::SphereReal => [ra, ra, ra, 0., 0., 0., 0., 0., 0., -1.],
        AqKind::HyperboloidOneSheet => [ra, ra, -rc, 0., 0., 0., 0., 0., 0., -1.],
        AqKind::HyperboloidTwoSheets => [-ra, -ra, rc, 0., 0., 0., 0., 0., 0., -1.],
        AqKind::ConeReal => [ra, ra, -rc, 0., 0., 0., 0., 0., 0., 0.],
        AqKind::Paraboloid => [1., 1., 0., 0., 0., 0., 0., 0., -2.0 * a, 0.],
        AqKind::CylinderReal => [ra, ra, 0., 0., 0., 0., 0., 0., 0., -1.],
        _ => panic!("no canonical form for {kind}"),
    };
    QuadricCoeffs::from_array(v)
}

fn semi_axes<R: Rng + ?Sized>(rng: &mut R, kind: AqKind) -> (f64, f64) {
    let mut x = || rng.gen_range(0.5..3.0);
    match kind {
        AqKind::ProlateSpheroid => {
            let a: f64 = x();
            (a, a * (1.25 + 0.75 * rng.gen::<f64>()))
        }
        AqKind::OblateSpheroid => {
            let a: f64 = x();
            (a, a / (1.25 + 0.75 * rng.gen::<f64>()))
        }
        AqKind::Paraboloid => (rng.gen_range(0.25..2.0), 1.0),
        AqKind::SphereReal | AqKind::CylinderReal => {
            let a = x();
            (a, a)
        }
        _ => (x(), x()),
    }
}

/// A random surface of `kind`, randomly scaled (either sign) and moved, with
/// a query point uniform in a ball of radius `10·size` about the center.
/// With `aligned`, the rotation is a signed permutation of the axes.
pub fn random_case<R: Rng + ?Sized>(rng: &mut R, kind: AqKind, aligned: bool) -> SynthCase {
    let (a, c) = semi_axes(rng, kind);
    let canonical = canonical(kind, a, c);
    let rotation = if aligned {
        let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
        let perm = perms[rng.gen_range(0..3)];
        let mut m = Matrix3::zeros();
        for (col, &row) in perm.iter().enumerate() {
            m[(row, col)] = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        }
        if m.determinant() < 0.0 {
            m.column_mut(0).neg_mut();
        }
        m
    } else {
        random_rotation(rng)
    };
    let translation = Vector3::from_fn(|_, _| rng.gen_range(-2.0..2.0));
    let scale = rng.gen_range(0.5..2.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let coeffs = canonical.transformed(&rotation, &translation).scaled(scale);
    let size = a.max(c);
    let point = translation + random_in_ball(rng) * (10.0 * size);
    SynthCase {
        kind,
        canonical,
        coeffs,
        rotation,
        translation,
        point,
        size,
    }
}

/// Uniform sample of the unit ball.
pub fn random_in_ball<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
        if v.norm_squared() <= 1.0 {
            return v;
        }
    }
}
